#pragma once

// Hochschild complexes, the relative chain complex C_*(A|B,X) and the
// normalised relative bar resolution of A.
//
// Tensor tuples are indexed with the leftmost factor most significant.
// Differentials are first assembled on the flat spaces X ⊗ (A/B)^{⊗n} (A/B in
// the coordinates of π), where the individual summands are not well defined,
// and then descended to the ⊗_B quotients by induced_on_quotient.

#include <memory>
#include <vector>

#include "relhh/complexes.hpp"
#include "relhh/tensorb.hpp"

namespace relhh {

inline long long int_pow(long long base, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// 1_{left} ⊗ f ⊗ 1_{right}.
template <class S>
SparseMatrix<S> local_map(long long left, const SparseMatrix<S>& f, long long right) {
  Triplets<S> t;
  t.reserve(static_cast<std::size_t>(left * right * f.nonZeros()));
  for (long long l = 0; l < left; ++l) {
    for (int r = 0; r < f.outerSize(); ++r) {
      for (typename SparseMatrix<S>::InnerIterator it(f, r); it; ++it) {
        for (long long k = 0; k < right; ++k) {
          t.emplace_back(static_cast<int>((l * f.rows() + it.row()) * right + k),
                         static_cast<int>((l * f.cols() + it.col()) * right + k), it.value());
        }
      }
    }
  }
  return from_triplets<S>(static_cast<int>(left * f.rows() * right), static_cast<int>(left * f.cols() * right), t);
}

/// Permutation (x, a_1, ..., a_n) ↦ (a_n, x, a_1, ..., a_{n-1}) with x in a
/// space of dimension dx and each a_i of dimension da.
template <class S>
SparseMatrix<S> rotate_last_to_front(int dx, int da, int n) {
  const long long rest = dx * int_pow(da, n - 1);
  const long long total = rest * da;
  Triplets<S> t;
  t.reserve(static_cast<std::size_t>(total));
  for (long long c = 0; c < total; ++c) t.emplace_back(static_cast<int>((c % da) * rest + c / da), static_cast<int>(c), S(1));
  return from_triplets<S>(static_cast<int>(total), static_cast<int>(total), t);
}

/// The cyclic bar differential on X ⊗ V^{⊗n}:
///   ρ(x,v_1) ⊗ v_2.. + Σ (-1)^i x ⊗ .. μ(v_i,v_{i+1}) .. + (-1)^n λ(v_n,x) ⊗ v_1..
/// with ρ : X⊗V -> X, μ : V⊗V -> V, λ : V⊗X -> X.
template <class S>
SparseMatrix<S> cyclic_bar_differential(int dx, int dv, int n, const SparseMatrix<S>& rho, const SparseMatrix<S>& mu,
                                        const SparseMatrix<S>& lambda) {
  if (n == 0) return zero_matrix<S>(0, dx);
  SparseMatrix<S> d = local_map<S>(1, rho, int_pow(dv, n - 1));
  for (int i = 1; i < n; ++i) {
    SparseMatrix<S> term = local_map<S>(dx * int_pow(dv, i - 1), mu, int_pow(dv, n - i - 1));
    if (i % 2 == 0) {
      d += term;
    } else {
      d -= term;
    }
  }
  SparseMatrix<S> last = product(local_map<S>(1, lambda, int_pow(dv, n - 1)), rotate_last_to_front<S>(dx, dv, n));
  if (n % 2 == 0) {
    d += last;
  } else {
    d -= last;
  }
  prune_zeros(d);
  d.makeCompressed();
  return d;
}

/// ρ(x, a) = x·a as a map X ⊗ A -> X, and λ(a, x) = a·x as A ⊗ X -> X, for
/// a family of operators indexed by a basis of A.
template <class S>
SparseMatrix<S> right_action_map(const std::vector<SparseMatrix<S>>& right, int dx) {
  const int da = static_cast<int>(right.size());
  Triplets<S> t;
  for (int a = 0; a < da; ++a) {
    for (int r = 0; r < right[a].outerSize(); ++r) {
      for (typename SparseMatrix<S>::InnerIterator it(right[a], r); it; ++it) {
        t.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()) * da + a, it.value());
      }
    }
  }
  return from_triplets<S>(dx, dx * da, t);
}

template <class S>
SparseMatrix<S> left_action_map(const std::vector<SparseMatrix<S>>& left, int dx) {
  const int da = static_cast<int>(left.size());
  Triplets<S> t;
  for (int a = 0; a < da; ++a) {
    for (int r = 0; r < left[a].outerSize(); ++r) {
      for (typename SparseMatrix<S>::InnerIterator it(left[a], r); it; ++it) {
        t.emplace_back(static_cast<int>(it.row()), a * dx + static_cast<int>(it.col()), it.value());
      }
    }
  }
  return from_triplets<S>(dx, da * dx, t);
}

/// C_*(A,X) in degrees 0..top: X ⊗ A^{⊗n} with the Hochschild differential.
template <class S>
ChainComplex<S> hochschild_complex(const Algebra<S>& a, const Bimodule<S>& x, int top) {
  if (x.algebra->dim != a.dim) throw DimensionMismatch("bimodule is over a different algebra");
  const SparseMatrix<S> rho = right_action_map(x.right, x.dim);
  const SparseMatrix<S> lambda = left_action_map(x.left, x.dim);
  std::vector<int> dims;
  std::vector<SparseMatrix<S>> d;
  for (int n = 0; n <= top; ++n) {
    dims.push_back(static_cast<int>(x.dim * int_pow(a.dim, n)));
    d.push_back(cyclic_bar_differential(x.dim, a.dim, n, rho, a.mult, lambda));
  }
  return ChainComplex<S>(std::move(dims), std::move(d));
}

// ---------------------------------------------------------------------------
// Relative chain complex

/// Structure maps of an extension used in every degree: σ-products and π.
template <class S>
struct ExtensionMaps {
  SparseMatrix<S> mbar;         // A/B ⊗ A/B -> A/B, π(σ(α)σ(β))
  Bimodule<S> quotient;         // A/B as a B-bimodule
  SparseMatrix<S> a_sigma;      // A ⊗ A/B -> A, a σ(α)
  SparseMatrix<S> sigma_a;      // A/B ⊗ A -> A, σ(α) a

  explicit ExtensionMaps(const SubalgebraEmbedding<S>& emb)
      : mbar(product(emb.projection, emb.ambient->mult, kron(emb.section, emb.section))),
        quotient(quotient_bimodule(emb)),
        a_sigma(product(emb.ambient->mult, kron(identity<S>(emb.dim_a()), emb.section))),
        sigma_a(product(emb.ambient->mult, kron(emb.section, identity<S>(emb.dim_a())))) {}
};

/// Relations spanning the kernel of X ⊗ (A/B)^{⊗n} -> X ⊗_{B^e} (A/B)^{⊗_B n},
/// generated on basis tuples; xb is X with its B-actions.
template <class S>
SparseMatrix<S> relative_relations(const Bimodule<S>& xb, const Bimodule<S>& q, int n) {
  const int dx = xb.dim, ds = q.dim, nb = xb.algebra->dim;
  const int ambient = static_cast<int>(dx * int_pow(ds, n));
  std::vector<SparseMatrix<S>> maps;
  const SparseMatrix<S> ids = identity<S>(ds);
  const SparseMatrix<S> idx = identity<S>(dx);
  for (int b = 0; b < nb; ++b) {
    if (n == 0) {
      maps.push_back(difference(xb.left[b], xb.right[b]));
      continue;
    }
    // x·b ⊗ α_1 − x ⊗ b·α_1
    maps.push_back(local_map<S>(1, difference(kron(xb.right[b], ids), kron(idx, q.left[b])), int_pow(ds, n - 1)));
    // α_i·b ⊗ α_{i+1} − α_i ⊗ b·α_{i+1}
    const SparseMatrix<S> mid = difference(kron(q.right[b], ids), kron(ids, q.left[b]));
    for (int i = 1; i < n; ++i) maps.push_back(local_map<S>(dx * int_pow(ds, i - 1), mid, int_pow(ds, n - i - 1)));
    // b·x ⊗ .. ⊗ α_n − x ⊗ .. ⊗ α_n·b
    maps.push_back(difference(local_map<S>(1, xb.left[b], int_pow(ds, n)),
                              local_map<S>(dx * int_pow(ds, n - 1), q.right[b], 1)));
  }
  return detail::stacked_relations(maps, ambient);
}

template <class S>
struct RelativeChainComplex {
  ChainComplex<S> complex;
  /// Q_n: X ⊗ (A/B)^{⊗n} -> X ⊗_{B^e} (A/B)^{⊗_B n}
  std::vector<QuotientSpace<S>> spaces;
  /// b_{A|B} on the flat spaces, built with the section used
  std::vector<SparseMatrix<S>> flat;
};

template <class S>
RelativeChainComplex<S> relative_chain_complex(const SubalgebraEmbedding<S>& emb, const Bimodule<S>& x, int top) {
  if (x.algebra->dim != emb.dim_a()) throw DimensionMismatch("bimodule is not over the ambient algebra");
  const ExtensionMaps<S> maps(emb);
  const Bimodule<S> xb = restrict_bimodule(x, emb);
  const int dx = x.dim, ds = emb.dim_s();
  // x σ(α) and σ(α) x
  std::vector<SparseMatrix<S>> right_sigma(ds), left_sigma(ds);
  for (int s = 0; s < ds; ++s) {
    const SparseMatrix<S> col = emb.section.middleCols(s, 1);
    right_sigma[s] = x.right_by(col);
    left_sigma[s] = x.left_by(col);
  }
  const SparseMatrix<S> rho = right_action_map(right_sigma, dx);
  const SparseMatrix<S> lambda = left_action_map(left_sigma, dx);

  RelativeChainComplex<S> rc;
  std::vector<int> dims;
  std::vector<SparseMatrix<S>> d;
  for (int n = 0; n <= top; ++n) {
    const int ambient = static_cast<int>(dx * int_pow(ds, n));
    rc.spaces.push_back(make_quotient<S>(ambient, relative_relations(xb, maps.quotient, n)));
    dims.push_back(rc.spaces.back().quotient_dim);
    rc.flat.push_back(cyclic_bar_differential(dx, ds, n, rho, maps.mbar, lambda));
    if (n == 0) {
      d.push_back(zero_matrix<S>(0, dims[0]));
    } else {
      d.push_back(induced_on_quotient(rc.flat[n], rc.spaces[n], rc.spaces[n - 1]));
    }
  }
  rc.complex = ChainComplex<S>(std::move(dims), std::move(d));
  return rc;
}

/// Whether the descended differentials built with σ' coincide entry by entry
/// with those built with the embedding's own section.
template <class S>
bool section_independence(const SubalgebraEmbedding<S>& emb, const Bimodule<S>& x, const SparseMatrix<S>& sigma,
                          int top) {
  const SubalgebraEmbedding<S> other = with_section(emb, sigma);
  const auto c1 = relative_chain_complex(emb, x, top);
  const auto c2 = relative_chain_complex(other, x, top);
  for (int n = 0; n <= top; ++n) {
    if (!equal(c1.complex.d(n), c2.complex.d(n))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Normalised relative bar resolution

/// Terms R_m = A ⊗_B (A/B)^{⊗_B m} ⊗_B A for m = 0..top, differential d,
/// augmentation ε : R_0 -> A, and contracting homotopy s (s_{-1} : A -> R_0).
template <class S>
struct RelativeResolution {
  std::vector<QuotientSpace<S>> spaces;  // flat A ⊗ (A/B)^{⊗m} ⊗ A -> R_m
  std::vector<SparseMatrix<S>> d;        // d[m] : R_m -> R_{m-1}, m >= 1; d[0] = ε
  std::vector<SparseMatrix<S>> s;        // s[m+1] : R_m -> R_{m+1}, s[0] = s_{-1} : A -> R_0
  int top() const { return static_cast<int>(spaces.size()) - 1; }
  int dim(int m) const { return spaces.at(m).quotient_dim; }
};

template <class S>
SparseMatrix<S> resolution_relations(const Bimodule<S>& ab, const Bimodule<S>& q, int m) {
  const int da = ab.dim, ds = q.dim, nb = ab.algebra->dim;
  const int ambient = static_cast<int>(da * int_pow(ds, m) * da);
  std::vector<SparseMatrix<S>> maps;
  const SparseMatrix<S> ids = identity<S>(ds);
  const SparseMatrix<S> ida = identity<S>(da);
  for (int b = 0; b < nb; ++b) {
    if (m == 0) {
      maps.push_back(difference(kron(ab.right[b], ida), kron(ida, ab.left[b])));
      continue;
    }
    maps.push_back(local_map<S>(1, difference(kron(ab.right[b], ids), kron(ida, q.left[b])), int_pow(ds, m - 1) * da));
    const SparseMatrix<S> mid = difference(kron(q.right[b], ids), kron(ids, q.left[b]));
    for (int i = 1; i < m; ++i) maps.push_back(local_map<S>(da * int_pow(ds, i - 1), mid, int_pow(ds, m - i - 1) * da));
    maps.push_back(
        local_map<S>(da * int_pow(ds, m - 1), difference(kron(q.right[b], ida), kron(ids, ab.left[b])), 1));
  }
  return detail::stacked_relations(maps, ambient);
}

template <class S>
RelativeResolution<S> relative_resolution(const SubalgebraEmbedding<S>& emb, int top) {
  const ExtensionMaps<S> maps(emb);
  const Bimodule<S> ab = restrict_bimodule(regular_bimodule(emb.ambient), emb);
  const int da = emb.dim_a(), ds = emb.dim_s();
  RelativeResolution<S> res;
  for (int m = 0; m <= top; ++m) {
    const int ambient = static_cast<int>(da * int_pow(ds, m) * da);
    res.spaces.push_back(make_quotient<S>(ambient, resolution_relations(ab, maps.quotient, m)));
  }
  const QuotientSpace<S> target_a = trivial_quotient<S>(da);
  // ε(a ⊗ a') = a a'
  res.d.push_back(induced_on_quotient(emb.ambient->mult, res.spaces[0], target_a));
  for (int m = 1; m <= top; ++m) {
    SparseMatrix<S> flat;
    if (m == 1) {
      flat = difference(local_map<S>(1, maps.a_sigma, da), local_map<S>(da, maps.sigma_a, 1));
    } else {
      flat = local_map<S>(1, maps.a_sigma, int_pow(ds, m - 1) * da);
      for (int i = 1; i < m; ++i) {
        SparseMatrix<S> term = local_map<S>(da * int_pow(ds, i - 1), maps.mbar, int_pow(ds, m - i - 1) * da);
        if (i % 2 == 0) {
          flat += term;
        } else {
          flat -= term;
        }
      }
      SparseMatrix<S> last = local_map<S>(da * int_pow(ds, m - 1), maps.sigma_a, 1);
      if (m % 2 == 0) {
        flat += last;
      } else {
        flat -= last;
      }
      prune_zeros(flat);
    }
    res.d.push_back(induced_on_quotient(flat, res.spaces[m], res.spaces[m - 1]));
  }
  // s(a_0 ⊗ α ⊗ a) = 1 ⊗ π(a_0) ⊗ α ⊗ a and s_{-1}(a) = 1 ⊗ a
  const SparseMatrix<S> one_pi = kron(emb.ambient->unit, emb.projection);  // A -> A ⊗ A/B
  res.s.push_back(product(res.spaces[0].projection, kron(emb.ambient->unit, identity<S>(da))));
  for (int m = 0; m < top; ++m) {
    const SparseMatrix<S> flat = local_map<S>(1, one_pi, int_pow(ds, m) * da);
    res.s.push_back(induced_on_quotient(flat, res.spaces[m], res.spaces[m + 1]));
  }
  return res;
}

struct ResolutionCheck {
  bool d_squared_zero = true;
  bool homotopy = true;
  bool augmentation_split = true;
  std::string witness;
};

/// d² = 0 (including ε d_1 = 0), ε s_{-1} = 1, and s d + d s = 1 in degrees
/// 0..top-1.
template <class S>
ResolutionCheck check_resolution(const RelativeResolution<S>& r) {
  ResolutionCheck c;
  const int top = r.top();
  for (int m = 1; m <= top; ++m) {
    if (!is_zero(product(r.d[m - 1], r.d[m]))) {
      c.d_squared_zero = false;
      c.witness += "d∘d != 0 at degree " + std::to_string(m) + "; ";
    }
  }
  if (!is_identity(product(r.d[0], r.s[0]))) {
    c.augmentation_split = false;
    c.witness += "ε s_{-1} != 1; ";
  }
  for (int m = 0; m < top; ++m) {
    // s_{m-1} d_m + d_{m+1} s_m on R_m, where d_0 = ε and s_{-1} = s[0]
    const SparseMatrix<S> sd = product(r.s[m], r.d[m]);
    const SparseMatrix<S> ds = product(r.d[m + 1], r.s[m + 1]);
    if (!is_identity(sum(sd, ds))) {
      c.homotopy = false;
      c.witness += "sd + ds != 1 at degree " + std::to_string(m) + "; ";
    }
  }
  return c;
}

}  // namespace relhh
