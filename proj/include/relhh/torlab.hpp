#pragma once

// Tor over a finite-dimensional algebra Λ, by two independent routes:
//  - the normalised two-sided bar complex X ⊗ Λ̄^{⊗n} ⊗ M, Λ̄ = Λ/k·1;
//  - a free resolution of M built from greedily chosen generators, tensored
//    with X (X ⊗_Λ Λ^g = X^g).
// Also the Tor-vanishing hypothesis on an extension, the tensor-nilpotency
// index of A/B, and projective-dimension estimates.

#include <optional>
#include <string>
#include <vector>

#include "relhh/complexes.hpp"
#include "relhh/relbar.hpp"
#include "relhh/tensorb.hpp"

namespace relhh {

enum class TorMethod { Bar, Resolution };

namespace detail {

/// Index of the basis element dropped to form Λ̄: the first coordinate of the
/// unit that is nonzero.
template <class S>
int unit_pivot(const Algebra<S>& a) {
  auto at = first_nonzero(a.unit);
  if (!at) throw ValidationError("algebra has a zero unit");
  return at->first;
}

template <class S>
void require_module(const Module<S>& m, typename Module<S>::Side side, const Algebra<S>& a, const char* what) {
  if (m.side != side) throw InvalidBimodule(std::string(what) + " has the wrong side");
  if (m.algebra->dim != a.dim) throw DimensionMismatch(std::string(what) + " is over a different algebra");
}

}  // namespace detail

/// The truncated normalised bar complex computing Tor^Λ_*(X, M), degrees
/// 0..top.
template <class S>
ChainComplex<S> tor_bar_complex(const Module<S>& x, const Module<S>& m, int top) {
  const Algebra<S>& lam = *x.algebra;
  detail::require_module(x, Module<S>::Side::Right, lam, "right module");
  detail::require_module(m, Module<S>::Side::Left, lam, "left module");
  const int dl = lam.dim;
  const int i0 = detail::unit_pivot(lam);
  std::vector<int> keep;
  for (int i = 0; i < dl; ++i) {
    if (i != i0) keep.push_back(i);
  }
  const int db = dl - 1;
  // Λ -> Λ̄: subtract the multiple of the unit that clears coordinate i0
  const S u0 = to_dense(lam.unit)(i0, 0);
  Triplets<S> pt;
  const auto unit_d = to_dense(lam.unit);
  for (int k = 0; k < db; ++k) {
    pt.emplace_back(k, keep[k], S(1));
    if (unit_d(keep[k], 0) != S(0)) pt.emplace_back(k, i0, -(unit_d(keep[k], 0) / u0));
  }
  const SparseMatrix<S> bar_proj = from_triplets<S>(db, dl, pt);
  const SparseMatrix<S> bar_sec = select_columns(identity<S>(dl), keep);
  const SparseMatrix<S> mu = product(bar_proj, lam.mult, kron(bar_sec, bar_sec));
  std::vector<SparseMatrix<S>> xr, ml;
  for (int k = 0; k < db; ++k) {
    xr.push_back(x.action[keep[k]]);
    ml.push_back(m.action[keep[k]]);
  }
  const SparseMatrix<S> rho = right_action_map(xr, x.dim);
  const SparseMatrix<S> lambda = left_action_map(ml, m.dim);
  std::vector<int> dims;
  std::vector<SparseMatrix<S>> d;
  for (int n = 0; n <= top; ++n) {
    dims.push_back(static_cast<int>(x.dim * int_pow(db, n) * m.dim));
    if (n == 0) {
      d.push_back(zero_matrix<S>(0, dims[0]));
      continue;
    }
    SparseMatrix<S> dn = local_map<S>(1, rho, int_pow(db, n - 1) * m.dim);
    for (int i = 1; i < n; ++i) {
      SparseMatrix<S> term = local_map<S>(x.dim * int_pow(db, i - 1), mu, int_pow(db, n - i - 1) * m.dim);
      if (i % 2 == 0) {
        dn += term;
      } else {
        dn -= term;
      }
    }
    SparseMatrix<S> last = local_map<S>(x.dim * int_pow(db, n - 1), lambda, 1);
    if (n % 2 == 0) {
      dn += last;
    } else {
      dn -= last;
    }
    prune_zeros(dn);
    dn.makeCompressed();
    d.push_back(std::move(dn));
  }
  return ChainComplex<S>(std::move(dims), std::move(d));
}

/// The unnormalised variant X ⊗ Λ^{⊗n} ⊗ M (larger; used as a cross-check).
template <class S>
ChainComplex<S> tor_unnormalised_complex(const Module<S>& x, const Module<S>& m, int top) {
  const Algebra<S>& lam = *x.algebra;
  const int dl = lam.dim;
  const SparseMatrix<S> rho = right_action_map(x.action, x.dim);
  const SparseMatrix<S> lambda = left_action_map(m.action, m.dim);
  std::vector<int> dims;
  std::vector<SparseMatrix<S>> d;
  for (int n = 0; n <= top; ++n) {
    dims.push_back(static_cast<int>(x.dim * int_pow(dl, n) * m.dim));
    if (n == 0) {
      d.push_back(zero_matrix<S>(0, dims[0]));
      continue;
    }
    SparseMatrix<S> dn = local_map<S>(1, rho, int_pow(dl, n - 1) * m.dim);
    for (int i = 1; i < n; ++i) {
      SparseMatrix<S> term = local_map<S>(x.dim * int_pow(dl, i - 1), lam.mult, int_pow(dl, n - i - 1) * m.dim);
      if (i % 2 == 0) {
        dn += term;
      } else {
        dn -= term;
      }
    }
    SparseMatrix<S> last = local_map<S>(x.dim * int_pow(dl, n - 1), lambda, 1);
    if (n % 2 == 0) {
      dn += last;
    } else {
      dn -= last;
    }
    prune_zeros(dn);
    d.push_back(std::move(dn));
  }
  return ChainComplex<S>(std::move(dims), std::move(d));
}

/// A free resolution P_n = Λ^{g_n} -> M, n = 0..top, with generators chosen
/// greedily in basis order. maps[n] (n >= 1) lists, per generator of P_n, its
/// image in P_{n-1} = Λ^{g_{n-1}} (coordinates generator-major).
template <class S>
struct FreeResolution {
  std::vector<int> ranks;
  std::vector<SparseMatrix<S>> maps;  // maps[n]: (dΛ g_{n-1}) x g_n, maps[0]: dim M x g_0
};

namespace detail {

/// Generators of a left module, chosen in basis order; returns their indices.
template <class S>
std::vector<int> greedy_generators(const std::vector<SparseMatrix<S>>& action, int dim) {
  std::vector<SparseMatrix<S>> cols;
  for (const auto& op : action) cols.push_back(transpose(op));  // row v = column v of op
  EchelonBasis<S> span(dim);
  std::vector<int> gens;
  for (int v = 0; v < dim && span.rank() < dim; ++v) {
    if (span.contains(SparseRow<S>{{v, S(1)}})) continue;
    gens.push_back(v);
    for (const auto& c : cols) {
      SparseRow<S> row;
      for (typename SparseMatrix<S>::InnerIterator it(c, v); it; ++it) row.push_back({static_cast<int>(it.col()), it.value()});
      if (!row.empty()) span.insert(std::move(row));
    }
  }
  return gens;
}

}  // namespace detail

template <class S>
FreeResolution<S> free_resolution(const Module<S>& m, int top) {
  const Algebra<S>& lam = *m.algebra;
  const int dl = lam.dim;
  FreeResolution<S> res;
  // current module K with action, embedded in the previous free module
  std::vector<SparseMatrix<S>> action = m.action;
  int dim = m.dim;
  SparseMatrix<S> embed = identity<S>(dim);  // K -> previous free module (or M)
  for (int n = 0; n <= top; ++n) {
    const std::vector<int> gens = dim == 0 ? std::vector<int>{} : detail::greedy_generators(action, dim);
    const int g = static_cast<int>(gens.size());
    res.ranks.push_back(g);
    // ε : Λ^g -> K, (gen j, basis i) ↦ e_i · k_{gens[j]}
    Triplets<S> t;
    for (int i = 0; i < dl; ++i) {
      const SparseMatrix<S> cols = transpose(action[i]);
      for (int j = 0; j < g; ++j) {
        for (typename SparseMatrix<S>::InnerIterator it(cols, gens[j]); it; ++it) {
          t.emplace_back(static_cast<int>(it.col()), j * dl + i, it.value());
        }
      }
    }
    const SparseMatrix<S> eps = from_triplets<S>(dim, g * dl, t);
    // images of the generators in the previous free module (or in M)
    Triplets<S> gt;
    for (int j = 0; j < g; ++j) gt.emplace_back(gens[j], j, S(1));
    res.maps.push_back(product(embed, from_triplets<S>(dim, g, gt)));
    if (n == top) break;
    // kernel of ε, a submodule of Λ^g under left multiplication
    const Subspace<S> ker = kernel_basis(eps);
    std::vector<SparseMatrix<S>> next_action(dl);
    const SparseMatrix<S> kb_t = transpose(ker.basis());
    for (int i = 0; i < dl; ++i) {
      const SparseMatrix<S> op = kron(identity<S>(g), lam.left[i]);
      auto coords = ker.coordinates(transpose(product(op, kb_t)));
      if (!coords) throw ValidationError("kernel of a module map is not a submodule");
      next_action[i] = transpose(*coords);
    }
    action = std::move(next_action);
    dim = ker.dim();
    embed = kb_t;
  }
  return res;
}

/// X ⊗_Λ P_• for a free resolution P of M: degree n is X^{g_n}.
template <class S>
ChainComplex<S> tor_resolution_complex(const Module<S>& x, const Module<S>& m, int top) {
  const Algebra<S>& lam = *x.algebra;
  detail::require_module(x, Module<S>::Side::Right, lam, "right module");
  detail::require_module(m, Module<S>::Side::Left, lam, "left module");
  const int dl = lam.dim;
  const FreeResolution<S> res = free_resolution(m, top);
  std::vector<int> dims;
  std::vector<SparseMatrix<S>> d;
  for (int n = 0; n <= top; ++n) {
    dims.push_back(x.dim * res.ranks[n]);
    if (n == 0) {
      d.push_back(zero_matrix<S>(0, dims[0]));
      continue;
    }
    // generator j of P_n ↦ Σ_{h,i} v[h*dΛ+i] e_i in slot h; on X: x ↦ Σ v x·e_i
    const SparseMatrix<S>& v = res.maps[n];
    Triplets<S> t;
    for (int r = 0; r < v.outerSize(); ++r) {
      for (typename SparseMatrix<S>::InnerIterator it(v, r); it; ++it) {
        const int h = r / dl, i = r % dl, j = static_cast<int>(it.col());
        const SparseMatrix<S>& op = x.action[i];
        for (int rr = 0; rr < op.outerSize(); ++rr) {
          for (typename SparseMatrix<S>::InnerIterator jt(op, rr); jt; ++jt) {
            t.emplace_back(h * x.dim + rr, j * x.dim + static_cast<int>(jt.col()), it.value() * jt.value());
          }
        }
      }
    }
    d.push_back(from_triplets<S>(dims[n - 1], dims[n], t));
  }
  return ChainComplex<S>(std::move(dims), std::move(d));
}

/// dim Tor^Λ_n(X, M) for n = 0..max_degree-1.
template <class S>
std::vector<int> tor(const Module<S>& x, const Module<S>& m, int max_degree, TorMethod method = TorMethod::Bar) {
  if (max_degree <= 0) return {};
  const ChainComplex<S> c =
      method == TorMethod::Bar ? tor_bar_complex(x, m, max_degree) : tor_resolution_complex(x, m, max_degree);
  std::vector<int> out;
  for (int n = 0; n < max_degree; ++n) out.push_back(homology_dim(c, n));
  return out;
}

/// Size of the largest space in the bar complex for Tor up to max_degree-1.
template <class S>
long long tor_bar_size(const Module<S>& x, const Module<S>& m, int max_degree) {
  return x.dim * int_pow(x.algebra->dim - 1, max_degree) * m.dim;
}

// ---------------------------------------------------------------------------
// The hypothesis Tor^B_*(A/B, (A/B)^{⊗_B n}) = 0 for * > 0

struct HypothesisReport {
  bool holds = true;
  int nmax = 0, starmax = 0;
  std::optional<std::pair<int, int>> witness;  // (n, *)
  /// dims[n-1][*-1] = dim Tor^B_*(A/B, P_n)
  std::vector<std::vector<int>> dims;
  std::string note = "bounded verification: only 1 <= * <= starmax and 1 <= n <= nmax are checked";
  bool operator==(const HypothesisReport&) const = default;
};

template <class S>
HypothesisReport check_hypothesis(const PowerTower<S>& tower, int nmax, int starmax) {
  HypothesisReport r;
  r.nmax = nmax;
  r.starmax = starmax;
  const Bimodule<S>& q = tower.quotient();
  const Module<S> right = right_part(q);
  for (int n = 1; n <= nmax; ++n) {
    const Module<S> left = left_part(tower.power(n));
    const std::vector<int> t = tor(right, left, starmax + 1);
    r.dims.emplace_back(t.begin() + 1, t.end());
    for (int s = 1; s <= starmax; ++s) {
      if (t[s] != 0 && !r.witness) {
        r.holds = false;
        r.witness = std::make_pair(n, s);
      }
    }
  }
  return r;
}

template <class S>
HypothesisReport check_hypothesis(const SubalgebraEmbedding<S>& emb, int nmax, int starmax) {
  return check_hypothesis(PowerTower<S>(emb), nmax, starmax);
}

// ---------------------------------------------------------------------------
// Nilpotency and projective dimension

struct NilpotencyReport {
  std::vector<int> dims;     // dim (A/B)^{⊗_B n}, n = 1..cap
  std::optional<int> index;  // smallest n with dim 0
  int cap = 0;
};

template <class S>
NilpotencyReport nilpotency_index(const PowerTower<S>& tower, int cap) {
  if (cap < 1) throw DegreeOutOfRange("nilpotency cap must be at least 1");
  NilpotencyReport r;
  r.cap = cap;
  for (int n = 1; n <= cap; ++n) {
    r.dims.push_back(tower.dim(n));
    if (r.dims.back() == 0 && !r.index) r.index = n;
  }
  return r;
}

template <class S>
NilpotencyReport nilpotency_index(const SubalgebraEmbedding<S>& emb, int cap) {
  return nilpotency_index(PowerTower<S>(emb), cap);
}

/// rad Λ as the kernel of the trace form (x, y) ↦ tr L(xy); valid in
/// characteristic zero.
template <class S>
Subspace<S> radical(const Algebra<S>& a) {
  if constexpr (!FieldTraits<S>::characteristic_zero) {
    throw UnsupportedField("the trace-form radical needs characteristic zero");
  } else {
    Triplets<S> t;
    for (int i = 0; i < a.dim; ++i) {
      for (int j = 0; j < a.dim; ++j) {
        const SparseMatrix<S> lij = product(a.left[i], a.left[j]);
        S tr(0);
        for (int k = 0; k < a.dim; ++k) tr += lij.coeff(k, k);
        if (tr != S(0)) t.emplace_back(i, j, tr);
      }
    }
    return kernel_basis(from_triplets<S>(a.dim, a.dim, t));
  }
}

/// Λ/rad Λ as a right Λ-module.
template <class S>
Module<S> top_module(const AlgebraPtr<S>& a) {
  const Subspace<S> rad = radical(*a);
  const QuotientSpace<S> q = make_quotient<S>(a->dim, rad.basis());
  std::vector<SparseMatrix<S>> act;
  for (int i = 0; i < a->dim; ++i) act.push_back(induced_on_quotient(a->right[i], q, q));
  return make_module<S>(a, Module<S>::Side::Right, q.quotient_dim, std::move(act));
}

struct PdEstimate {
  std::optional<int> value;  // nullopt: Tor has not vanished by the cap
  std::vector<int> tor_dims;  // dim Tor_n(Λ/rad, M) for the degrees computed
  int cap = 0;
  std::string note = "bounded estimate from Tor(Λ/rad Λ, M); not a certificate";
};

/// Projective dimension of M read off the first vanishing Tor_n(Λ/rad, M),
/// n >= 1, below the cap.
template <class S>
PdEstimate pd_upper(const AlgebraPtr<S>& lam, const Module<S>& m, int cap, TorMethod method = TorMethod::Bar) {
  if constexpr (!FieldTraits<S>::characteristic_zero) {
    throw UnsupportedField("projective dimension estimates need characteristic zero");
  }
  PdEstimate r;
  r.cap = cap;
  if (m.dim == 0) {
    r.value = 0;
    return r;
  }
  const Module<S> top = top_module(lam);
  for (int n = 1; n < cap; ++n) {
    const std::vector<int> t = tor(top, m, n + 1, method);
    r.tor_dims = t;
    if (t[n] == 0) {
      r.value = n - 1;
      return r;
    }
  }
  return r;
}

}  // namespace relhh
