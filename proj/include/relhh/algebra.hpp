#pragma once

// Finite-dimensional algebras given by structure constants, subalgebra
// extensions B ⊂ A, bimodules and one-sided modules, enveloping algebras and
// quiver algebras with monomial relations.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "relhh/exactlin.hpp"

namespace relhh {

template <class S>
struct Algebra {
  int dim = 0;
  std::vector<std::string> labels;
  /// dim x dim², column i*dim+j holds the coordinates of e_i e_j.
  SparseMatrix<S> mult;
  /// dim x 1
  SparseMatrix<S> unit;
  /// left[i]: v ↦ e_i v; right[i]: v ↦ v e_i.
  std::vector<SparseMatrix<S>> left, right;

  /// Product of coordinate columns u and v.
  SparseMatrix<S> multiply(const SparseMatrix<S>& u, const SparseMatrix<S>& v) const { return product(mult, kron(u, v)); }
  SparseMatrix<S> basis_vector(int i) const { return from_triplets<S>(dim, 1, Triplets<S>{{i, 0, S(1)}}); }
  /// Operators of left and right multiplication by the coordinate column a.
  SparseMatrix<S> left_by(const SparseMatrix<S>& a) const { return product(mult, kron(a, identity<S>(dim))); }
  SparseMatrix<S> right_by(const SparseMatrix<S>& a) const { return product(mult, kron(identity<S>(dim), a)); }
};

template <class S>
using AlgebraPtr = std::shared_ptr<const Algebra<S>>;

/// Linear combination Σ coeffs(k) · ops[k] for a dim x 1 coefficient column.
template <class S>
SparseMatrix<S> combine(const std::vector<SparseMatrix<S>>& ops, const SparseMatrix<S>& coeffs, int rows, int cols) {
  SparseMatrix<S> acc = zero_matrix<S>(rows, cols);
  for (int r = 0; r < coeffs.outerSize(); ++r) {
    for (typename SparseMatrix<S>::InnerIterator it(coeffs, r); it; ++it) {
      SparseMatrix<S> term = ops[r] * it.value();
      acc += term;
    }
  }
  prune_zeros(acc);
  acc.makeCompressed();
  return acc;
}

/// Validates associativity and unitality; builds the multiplication operators.
template <class S>
AlgebraPtr<S> make_algebra(std::vector<std::string> labels, SparseMatrix<S> mult, SparseMatrix<S> unit) {
  const int n = static_cast<int>(labels.size());
  if (mult.rows() != n || mult.cols() != n * n) {
    throw DimensionMismatch("structure constants must be " + std::to_string(n) + " x " + std::to_string(n * n));
  }
  if (unit.rows() != n || unit.cols() != 1) throw DimensionMismatch("unit must have " + std::to_string(n) + " coordinates");
  const SparseMatrix<S> id = identity<S>(n);
  // (e_i e_j) e_k against e_i (e_j e_k), all triples at once
  const SparseMatrix<S> lhs = product(mult, kron(mult, id));
  const SparseMatrix<S> rhs = product(mult, kron(id, mult));
  if (auto at = first_nonzero(difference(lhs, rhs))) {
    const int c = at->second;
    throw NotAssociative(c / (n * n), (c / n) % n, c % n);
  }
  const SparseMatrix<S> lu = product(mult, kron(unit, id));
  const SparseMatrix<S> ru = product(mult, kron(id, unit));
  if (auto at = first_nonzero(difference(lu, id))) throw NotUnital(at->second);
  if (auto at = first_nonzero(difference(ru, id))) throw NotUnital(at->second);

  auto a = std::make_shared<Algebra<S>>();
  a->dim = n;
  a->labels = std::move(labels);
  a->mult = std::move(mult);
  a->unit = std::move(unit);
  a->left.resize(n);
  a->right.resize(n);
  for (int i = 0; i < n; ++i) {
    const SparseMatrix<S> ei = a->basis_vector(i);
    a->left[i] = product(a->mult, kron(ei, id));
    a->right[i] = product(a->mult, kron(id, ei));
  }
  return a;
}

/// mult[i][j] is the coordinate vector of e_i e_j.
template <class S>
AlgebraPtr<S> make_algebra(std::vector<std::string> labels, const std::vector<std::vector<std::vector<S>>>& mult,
                           const std::vector<S>& unit) {
  const int n = static_cast<int>(labels.size());
  if (static_cast<int>(mult.size()) != n) throw DimensionMismatch("mult must have one entry per basis element");
  Triplets<S> t;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(mult[i].size()) != n) throw DimensionMismatch("mult[" + std::to_string(i) + "] has wrong length");
    for (int j = 0; j < n; ++j) {
      if (static_cast<int>(mult[i][j].size()) != n) {
        throw DimensionMismatch("mult[" + std::to_string(i) + "][" + std::to_string(j) + "] has wrong length");
      }
      for (int k = 0; k < n; ++k) {
        if (mult[i][j][k] != S(0)) t.emplace_back(k, i * n + j, mult[i][j][k]);
      }
    }
  }
  if (static_cast<int>(unit.size()) != n) throw DimensionMismatch("unit has wrong length");
  Triplets<S> u;
  for (int k = 0; k < n; ++k) {
    if (unit[k] != S(0)) u.emplace_back(k, 0, unit[k]);
  }
  return make_algebra<S>(std::move(labels), from_triplets<S>(n, n * n, t), from_triplets<S>(n, 1, u));
}

/// The same algebra in the basis given by the columns of `basis` (invertible).
template <class S>
AlgebraPtr<S> change_basis(const Algebra<S>& a, const SparseMatrix<S>& basis, std::vector<std::string> labels) {
  const SparseMatrix<S> inv = inverse(basis);
  return make_algebra<S>(std::move(labels), product(inv, a.mult, kron(basis, basis)), product(inv, a.unit));
}

// ---------------------------------------------------------------------------
// Quivers with monomial relations

struct Arrow {
  std::string name;
  int source;
  int target;
  bool operator==(const Arrow&) const = default;
};

/// Paths are read left to right: the path "ab" is a followed by b, and p·q is
/// the concatenation pq when p ends where q starts.
template <class S>
AlgebraPtr<S> from_quiver(const std::vector<std::string>& vertices, const std::vector<Arrow>& arrows,
                          const std::vector<std::vector<std::string>>& forbidden, int path_cap) {
  const int nv = static_cast<int>(vertices.size());
  std::map<std::string, int> arrow_index;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    if (arrows[a].source < 0 || arrows[a].source >= nv || arrows[a].target < 0 || arrows[a].target >= nv) {
      throw std::invalid_argument("arrow " + arrows[a].name + " has an endpoint outside the vertex list");
    }
    if (!arrow_index.emplace(arrows[a].name, static_cast<int>(a)).second) {
      throw std::invalid_argument("duplicate arrow name " + arrows[a].name);
    }
  }
  std::vector<std::vector<int>> relations;
  for (const auto& rel : forbidden) {
    if (rel.size() < 2) throw std::invalid_argument("monomial relations must be paths of length at least 2");
    std::vector<int> r;
    for (const auto& name : rel) {
      auto it = arrow_index.find(name);
      if (it == arrow_index.end()) throw std::invalid_argument("relation uses unknown arrow " + name);
      r.push_back(it->second);
    }
    relations.push_back(std::move(r));
  }
  auto has_forbidden_suffix = [&](const std::vector<int>& path) {
    for (const auto& r : relations) {
      if (r.size() <= path.size() && std::equal(r.rbegin(), r.rend(), path.rbegin())) return true;
    }
    return false;
  };

  struct Path {
    int source, target;
    std::vector<int> arrows;
  };
  std::vector<Path> basis;
  for (int v = 0; v < nv; ++v) basis.push_back({v, v, {}});
  std::vector<Path> frontier;
  for (int a = 0; a < static_cast<int>(arrows.size()); ++a) frontier.push_back({arrows[a].source, arrows[a].target, {a}});
  for (int length = 1; !frontier.empty(); ++length) {
    if (length >= path_cap) {
      throw InfiniteDimensional("an admissible path of length " + std::to_string(path_cap) +
                                " exists; the quiver algebra is treated as infinite-dimensional");
    }
    basis.insert(basis.end(), frontier.begin(), frontier.end());
    std::vector<Path> next;
    for (const auto& p : frontier) {
      for (int a = 0; a < static_cast<int>(arrows.size()); ++a) {
        if (arrows[a].source != p.target) continue;
        Path q{p.source, arrows[a].target, p.arrows};
        q.arrows.push_back(a);
        if (!has_forbidden_suffix(q.arrows)) next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }

  const int n = static_cast<int>(basis.size());
  bool short_names = true;
  for (const auto& a : arrows) short_names = short_names && a.name.size() == 1;
  std::vector<std::string> labels;
  std::map<std::vector<int>, int> index_of_path;
  for (int i = 0; i < n; ++i) {
    const Path& p = basis[i];
    if (p.arrows.empty()) {
      labels.push_back("e" + vertices[p.source]);
    } else {
      std::string label;
      for (std::size_t k = 0; k < p.arrows.size(); ++k) {
        if (k > 0 && !short_names) label += "*";
        label += arrows[p.arrows[k]].name;
      }
      labels.push_back(label);
      index_of_path[p.arrows] = i;
    }
  }
  Triplets<S> t;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Path& p = basis[i];
      const Path& q = basis[j];
      if (p.target != q.source) continue;
      if (p.arrows.empty()) {
        t.emplace_back(j, i * n + j, S(1));
      } else if (q.arrows.empty()) {
        t.emplace_back(i, i * n + j, S(1));
      } else {
        std::vector<int> pq = p.arrows;
        pq.insert(pq.end(), q.arrows.begin(), q.arrows.end());
        auto it = index_of_path.find(pq);
        if (it != index_of_path.end()) t.emplace_back(it->second, i * n + j, S(1));
      }
    }
  }
  Triplets<S> u;
  for (int v = 0; v < nv; ++v) u.emplace_back(v, 0, S(1));
  return make_algebra<S>(std::move(labels), from_triplets<S>(n, n * n, t), from_triplets<S>(n, 1, u));
}

// ---------------------------------------------------------------------------
// Enveloping algebra

/// A ⊗ A^op with basis index i*dim+j for e_i ⊗ e_j and
/// (a⊗a')(c⊗c') = ac ⊗ c'a'.
template <class S>
AlgebraPtr<S> enveloping(const Algebra<S>& a) {
  const int n = a.dim;
  const int ne = n * n;
  std::vector<std::vector<std::pair<int, S>>> prod(n * n);  // (i,k) -> terms of e_i e_k
  const SparseMatrix<S> cols = transpose(a.mult);
  for (int c = 0; c < cols.outerSize(); ++c) {
    for (typename SparseMatrix<S>::InnerIterator it(cols, c); it; ++it) prod[c].emplace_back(static_cast<int>(it.col()), it.value());
  }
  Triplets<S> t;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          for (const auto& [r1, v1] : prod[i * n + k]) {
            for (const auto& [r2, v2] : prod[l * n + j]) {
              t.emplace_back(r1 * n + r2, (i * n + j) * ne + (k * n + l), v1 * v2);
            }
          }
        }
      }
    }
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) labels.push_back(a.labels[i] + "⊗" + a.labels[j]);
  }
  return make_algebra<S>(std::move(labels), from_triplets<S>(ne, ne * ne, t), kron(a.unit, a.unit));
}

// ---------------------------------------------------------------------------
// Modules

/// Bimodule over an algebra: left[i] is x ↦ e_i x, right[i] is x ↦ x e_i.
template <class S>
struct Bimodule {
  AlgebraPtr<S> algebra;
  int dim = 0;
  std::vector<SparseMatrix<S>> left, right;

  SparseMatrix<S> left_by(const SparseMatrix<S>& a) const { return combine(left, a, dim, dim); }
  SparseMatrix<S> right_by(const SparseMatrix<S>& a) const { return combine(right, a, dim, dim); }
};

/// One-sided module: action[i] is m ↦ e_i m (left) or m ↦ m e_i (right).
template <class S>
struct Module {
  enum class Side { Left, Right };
  AlgebraPtr<S> algebra;
  Side side = Side::Left;
  int dim = 0;
  std::vector<SparseMatrix<S>> action;
};

namespace detail {

/// Checks that a family of operators indexed by the basis is a unital
/// representation (anti = false) or anti-representation (anti = true).
template <class S>
void check_representation(const Algebra<S>& a, const std::vector<SparseMatrix<S>>& ops, int dim, bool anti,
                          const std::string& what) {
  if (static_cast<int>(ops.size()) != a.dim) throw InvalidBimodule(what + ": expected one operator per basis element");
  for (int i = 0; i < a.dim; ++i) {
    if (ops[i].rows() != dim || ops[i].cols() != dim) {
      throw InvalidBimodule(what + ": operator " + std::to_string(i) + " has the wrong shape");
    }
  }
  if (!is_identity(combine(ops, a.unit, dim, dim))) throw InvalidBimodule(what + ": the unit does not act as identity");
  for (int i = 0; i < a.dim; ++i) {
    for (int j = 0; j < a.dim; ++j) {
      const SparseMatrix<S> composite = anti ? product(ops[j], ops[i]) : product(ops[i], ops[j]);
      const SparseMatrix<S> eij = a.mult.middleCols(i * a.dim + j, 1);
      if (!equal(composite, combine(ops, eij, dim, dim))) {
        throw InvalidBimodule(what + ": action is not compatible with the product of basis elements " +
                              std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
}

}  // namespace detail

template <class S>
Bimodule<S> make_bimodule(AlgebraPtr<S> a, int dim, std::vector<SparseMatrix<S>> left,
                          std::vector<SparseMatrix<S>> right) {
  detail::check_representation(*a, left, dim, false, "left action");
  detail::check_representation(*a, right, dim, true, "right action");
  for (int i = 0; i < a->dim; ++i) {
    for (int j = 0; j < a->dim; ++j) {
      if (!equal(product(left[i], right[j]), product(right[j], left[i]))) {
        throw InvalidBimodule("left action of " + std::to_string(i) + " does not commute with right action of " +
                              std::to_string(j));
      }
    }
  }
  return Bimodule<S>{std::move(a), dim, std::move(left), std::move(right)};
}

template <class S>
Module<S> make_module(AlgebraPtr<S> a, typename Module<S>::Side side, int dim, std::vector<SparseMatrix<S>> action) {
  detail::check_representation(*a, action, dim, side == Module<S>::Side::Right,
                               side == Module<S>::Side::Left ? "left module" : "right module");
  return Module<S>{std::move(a), side, dim, std::move(action)};
}

template <class S>
Bimodule<S> regular_bimodule(AlgebraPtr<S> a) {
  return make_bimodule<S>(a, a->dim, a->left, a->right);
}

/// X as a right module over enveloping(B): x·(b⊗b') = b' x b.
template <class S>
Module<S> as_right_enveloping(const Bimodule<S>& x, AlgebraPtr<S> env) {
  const int n = x.algebra->dim;
  std::vector<SparseMatrix<S>> act(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) act[i * n + j] = product(x.left[j], x.right[i]);
  }
  return make_module<S>(std::move(env), Module<S>::Side::Right, x.dim, std::move(act));
}

/// M as a left module over enveloping(B): (b⊗b')·m = b m b'.
template <class S>
Module<S> as_left_enveloping(const Bimodule<S>& m, AlgebraPtr<S> env) {
  const int n = m.algebra->dim;
  std::vector<SparseMatrix<S>> act(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) act[i * n + j] = product(m.left[i], m.right[j]);
  }
  return make_module<S>(std::move(env), Module<S>::Side::Left, m.dim, std::move(act));
}

template <class S>
Module<S> left_part(const Bimodule<S>& m) {
  return Module<S>{m.algebra, Module<S>::Side::Left, m.dim, m.left};
}

template <class S>
Module<S> right_part(const Bimodule<S>& m) {
  return Module<S>{m.algebra, Module<S>::Side::Right, m.dim, m.right};
}

// ---------------------------------------------------------------------------
// Subalgebras

/// B ⊂ A given by the columns of `inclusion`, together with the quotient
/// A -> A/B. `section` (σ) is a right inverse of `projection` (π); S = Im σ.
template <class S>
struct SubalgebraEmbedding {
  AlgebraPtr<S> ambient;
  AlgebraPtr<S> sub;
  SparseMatrix<S> inclusion;        // dim A x dim B
  SparseMatrix<S> inclusion_coords;  // dim B x dim A, left inverse of inclusion vanishing on S
  SparseMatrix<S> projection;       // dim S x dim A
  SparseMatrix<S> section;          // dim A x dim S
  int dim_a() const { return ambient->dim; }
  int dim_b() const { return sub->dim; }
  int dim_s() const { return static_cast<int>(projection.rows()); }
};

namespace detail {

template <class S>
SubalgebraEmbedding<S> assemble_embedding(AlgebraPtr<S> a, const SparseMatrix<S>& inclusion,
                                          const SparseMatrix<S>& projection, const SparseMatrix<S>& section) {
  const int nb = static_cast<int>(inclusion.cols());
  // left inverse of the inclusion killing Im σ: top block of [inc | σ]^{-1}
  const SparseMatrix<S> adapted = transpose(vstack(transpose(inclusion), transpose(section)));
  const SparseMatrix<S> inv = inverse(adapted);
  SparseMatrix<S> coords = inv.topRows(nb);
  coords.makeCompressed();

  std::vector<std::string> labels;
  for (int j = 0; j < nb; ++j) {
    const SparseMatrix<S> col = inclusion.middleCols(j, 1);
    auto at = first_nonzero(col);
    if (col.nonZeros() == 1 && to_dense(col)(at->first, 0) == S(1)) {
      labels.push_back(a->labels[at->first]);
    } else {
      labels.push_back("b" + std::to_string(j));
    }
  }
  const SparseMatrix<S> bmult = product(coords, a->mult, kron(inclusion, inclusion));
  auto b = make_algebra<S>(std::move(labels), bmult, product(coords, a->unit));
  return SubalgebraEmbedding<S>{std::move(a), std::move(b), inclusion, coords, projection, section};
}

}  // namespace detail

/// Validates that the columns span a unital subalgebra and completes them to
/// a basis by pivot columns; σ is the coordinate section on those columns.
template <class S>
SubalgebraEmbedding<S> make_subalgebra(AlgebraPtr<S> a, const SparseMatrix<S>& columns) {
  if (columns.rows() != a->dim) throw DimensionMismatch("subalgebra generators must have dim A coordinates");
  const int nb = static_cast<int>(columns.cols());
  if (rank(columns) != nb) throw DimensionMismatch("subalgebra generators are linearly dependent");
  const QuotientSpace<S> q = make_quotient<S>(a->dim, transpose(columns));
  if (!is_zero(product(q.projection, a->unit))) throw UnitNotContained();
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      const SparseMatrix<S> p = a->multiply(columns.middleCols(i, 1), columns.middleCols(j, 1));
      if (!is_zero(product(q.projection, p))) throw NotClosed(i, j);
    }
  }
  return detail::assemble_embedding<S>(std::move(a), columns, q.projection, q.section);
}

/// The same extension with another section σ' of π.
template <class S>
SubalgebraEmbedding<S> with_section(const SubalgebraEmbedding<S>& emb, const SparseMatrix<S>& sigma) {
  if (sigma.rows() != emb.dim_a() || sigma.cols() != emb.dim_s() || !is_identity(product(emb.projection, sigma))) {
    throw NotASection();
  }
  return detail::assemble_embedding<S>(emb.ambient, emb.inclusion, emb.projection, sigma);
}

/// The extension rewritten in the basis (inclusion columns, section columns)
/// of A, so that B is spanned by the first dim B basis vectors and S by the rest.
template <class S>
SubalgebraEmbedding<S> adapted(const SubalgebraEmbedding<S>& emb) {
  const int nb = emb.dim_b();
  const int ns = emb.dim_s();
  const SparseMatrix<S> basis = transpose(vstack(transpose(emb.inclusion), transpose(emb.section)));
  std::vector<std::string> labels = emb.sub->labels;
  for (int j = 0; j < ns; ++j) {
    const SparseMatrix<S> col = emb.section.middleCols(j, 1);
    auto at = first_nonzero(col);
    labels.push_back(col.nonZeros() == 1 && at && to_dense(col)(at->first, 0) == S(1) ? emb.ambient->labels[at->first]
                                                                                       : "s" + std::to_string(j));
  }
  auto a2 = change_basis(*emb.ambient, basis, std::move(labels));
  Triplets<S> inc, proj, sec;
  for (int i = 0; i < nb; ++i) inc.emplace_back(i, i, S(1));
  for (int j = 0; j < ns; ++j) {
    proj.emplace_back(j, nb + j, S(1));
    sec.emplace_back(nb + j, j, S(1));
  }
  const int na = nb + ns;
  return detail::assemble_embedding<S>(std::move(a2), from_triplets<S>(na, nb, inc), from_triplets<S>(ns, na, proj),
                                       from_triplets<S>(na, ns, sec));
}

/// Coordinates of a bimodule over A after changing the basis of A.
template <class S>
Bimodule<S> rebase_bimodule(const Bimodule<S>& x, AlgebraPtr<S> a2, const SparseMatrix<S>& basis) {
  std::vector<SparseMatrix<S>> l(a2->dim), r(a2->dim);
  for (int i = 0; i < a2->dim; ++i) {
    const SparseMatrix<S> col = basis.middleCols(i, 1);
    l[i] = x.left_by(col);
    r[i] = x.right_by(col);
  }
  return make_bimodule<S>(std::move(a2), x.dim, std::move(l), std::move(r));
}

/// Basis of A used by adapted(emb): inclusion columns then section columns.
template <class S>
SparseMatrix<S> adapted_basis(const SubalgebraEmbedding<S>& emb) {
  return transpose(vstack(transpose(emb.inclusion), transpose(emb.section)));
}

/// A bimodule over A restricted to B along the inclusion.
template <class S>
Bimodule<S> restrict_bimodule(const Bimodule<S>& x, const SubalgebraEmbedding<S>& emb) {
  if (x.algebra != emb.ambient && x.algebra->dim != emb.dim_a()) {
    throw DimensionMismatch("bimodule is not over the ambient algebra of the extension");
  }
  std::vector<SparseMatrix<S>> l(emb.dim_b()), r(emb.dim_b());
  for (int i = 0; i < emb.dim_b(); ++i) {
    const SparseMatrix<S> col = emb.inclusion.middleCols(i, 1);
    l[i] = x.left_by(col);
    r[i] = x.right_by(col);
  }
  return make_bimodule<S>(emb.sub, x.dim, std::move(l), std::move(r));
}

/// A/B as a B-bimodule in the coordinates of π. Since B·B ⊆ B the action
/// π(b σ(s)) does not depend on σ; read on S = Im σ these are the transported
/// actions b.s = σ(bπ(s)), s.b = σ(π(s)b).
template <class S>
Bimodule<S> quotient_bimodule(const SubalgebraEmbedding<S>& emb) {
  std::vector<SparseMatrix<S>> l(emb.dim_b()), r(emb.dim_b());
  for (int i = 0; i < emb.dim_b(); ++i) {
    const SparseMatrix<S> col = emb.inclusion.middleCols(i, 1);
    l[i] = product(emb.projection, emb.ambient->left_by(col), emb.section);
    r[i] = product(emb.projection, emb.ambient->right_by(col), emb.section);
  }
  return make_bimodule<S>(emb.sub, emb.dim_s(), std::move(l), std::move(r));
}

template <class S>
Bimodule<S> transported_S(const SubalgebraEmbedding<S>& emb) {
  return quotient_bimodule(emb);
}

}  // namespace relhh
