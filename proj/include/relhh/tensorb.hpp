#pragma once

// Tensor products over B and over B^e, realized as quotients of tensor
// products over the ground field.
//
// Index convention: the basis vector m_i ⊗ n_j of M ⊗ N has index i*dim N + j.

#include <mutex>
#include <vector>

#include "relhh/algebra.hpp"

namespace relhh {

/// A B-bimodule given as a quotient of an ambient tensor space.
template <class S>
struct TensorModule {
  QuotientSpace<S> space;
  Bimodule<S> module;
  int dim() const { return module.dim; }
};

namespace detail {

template <class S>
SparseMatrix<S> stacked_relations(const std::vector<SparseMatrix<S>>& maps, int ambient) {
  std::vector<SparseRow<S>> rows;
  for (const auto& m : maps) {
    auto r = rows_of(transpose(m));
    for (auto& row : r) {
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  return from_rows(rows, ambient);
}

}  // namespace detail

/// M ⊗_B N = M ⊗ N / span{m·b ⊗ n − m ⊗ b·n} with the outer actions.
template <class S>
TensorModule<S> tensor_over_B(const Bimodule<S>& m, const Bimodule<S>& n) {
  if (m.algebra->dim != n.algebra->dim) throw DimensionMismatch("tensor_over_B: modules over different algebras");
  const int nb = m.algebra->dim;
  const int ambient = m.dim * n.dim;
  const SparseMatrix<S> im = identity<S>(m.dim);
  const SparseMatrix<S> in = identity<S>(n.dim);
  std::vector<SparseMatrix<S>> maps;
  for (int b = 0; b < nb; ++b) maps.push_back(difference(kron(m.right[b], in), kron(im, n.left[b])));
  TensorModule<S> t;
  t.space = make_quotient<S>(ambient, detail::stacked_relations(maps, ambient));
  std::vector<SparseMatrix<S>> left(nb), right(nb);
  for (int b = 0; b < nb; ++b) {
    left[b] = induced_on_quotient(kron(m.left[b], in), t.space, t.space);
    right[b] = induced_on_quotient(kron(im, n.right[b]), t.space, t.space);
  }
  t.module = make_bimodule<S>(m.algebra, t.space.quotient_dim, std::move(left), std::move(right));
  return t;
}

/// X ⊗_{B^e} M = X ⊗ M / span{x·b ⊗ m − x ⊗ b·m, b·x ⊗ m − x ⊗ m·b}.
template <class S>
QuotientSpace<S> coinvariants(const Bimodule<S>& x, const Bimodule<S>& m) {
  if (x.algebra->dim != m.algebra->dim) throw DimensionMismatch("coinvariants: modules over different algebras");
  const int nb = x.algebra->dim;
  const int ambient = x.dim * m.dim;
  const SparseMatrix<S> ix = identity<S>(x.dim);
  const SparseMatrix<S> imm = identity<S>(m.dim);
  std::vector<SparseMatrix<S>> maps;
  for (int b = 0; b < nb; ++b) {
    maps.push_back(difference(kron(x.right[b], imm), kron(ix, m.left[b])));
    maps.push_back(difference(kron(x.left[b], imm), kron(ix, m.right[b])));
  }
  return make_quotient<S>(ambient, detail::stacked_relations(maps, ambient));
}

/// X_B = X / span{b·x − x·b}.
template <class S>
QuotientSpace<S> commutator_quotient(const Bimodule<S>& x) {
  std::vector<SparseMatrix<S>> maps;
  for (int b = 0; b < x.algebra->dim; ++b) maps.push_back(difference(x.left[b], x.right[b]));
  return make_quotient<S>(x.dim, detail::stacked_relations(maps, x.dim));
}

/// B as a bimodule over itself.
template <class S>
Bimodule<S> unit_bimodule(const SubalgebraEmbedding<S>& emb) {
  return make_bimodule<S>(emb.sub, emb.dim_b(), emb.sub->left, emb.sub->right);
}

/// Powers (A/B)^{⊗_B n}, left-associated: P_n = P_{n-1} ⊗_B A/B. Besides each
/// P_n it keeps the flat map φ_n : (A/B)^{⊗n} -> P_n, φ_n = proj_n (φ_{n-1} ⊗ 1).
template <class S>
class PowerTower {
 public:
  explicit PowerTower(const SubalgebraEmbedding<S>& emb) : emb_(emb), quotient_(quotient_bimodule(emb)) {}

  const SubalgebraEmbedding<S>& embedding() const { return emb_; }
  const Bimodule<S>& quotient() const { return quotient_; }

  /// P_n as a B-bimodule; P_0 = B.
  Bimodule<S> power(int n) const {
    if (n < 0) throw DegreeOutOfRange("negative tensor power");
    if (n == 0) return unit_bimodule(emb_);
    std::lock_guard<std::mutex> lock(mutex_);
    extend(n);
    return levels_[n - 1].module;
  }

  /// φ_n : (A/B)^{⊗n} -> P_n; for n = 0 the map k -> B sending 1 to the unit.
  SparseMatrix<S> flat_map(int n) const {
    if (n < 0) throw DegreeOutOfRange("negative tensor power");
    if (n == 0) return emb_.sub->unit;
    std::lock_guard<std::mutex> lock(mutex_);
    extend(n);
    return flat_[n - 1];
  }

  int dim(int n) const { return n == 0 ? emb_.dim_b() : power(n).dim; }

 private:
  void extend(int n) const {
    while (static_cast<int>(levels_.size()) < n) {
      if (levels_.empty()) {
        levels_.push_back(TensorModule<S>{trivial_quotient<S>(quotient_.dim), quotient_});
        flat_.push_back(identity<S>(quotient_.dim));
        continue;
      }
      TensorModule<S> next = tensor_over_B(levels_.back().module, quotient_);
      flat_.push_back(product(next.space.projection, kron(flat_.back(), identity<S>(quotient_.dim))));
      levels_.push_back(std::move(next));
    }
  }

  SubalgebraEmbedding<S> emb_;
  Bimodule<S> quotient_;
  mutable std::mutex mutex_;
  mutable std::vector<TensorModule<S>> levels_;
  mutable std::vector<SparseMatrix<S>> flat_;
};

template <class S>
Bimodule<S> power_over_B(const SubalgebraEmbedding<S>& emb, int n) {
  return PowerTower<S>(emb).power(n);
}

}  // namespace relhh
