#pragma once

// The short nearly exact sequence Č(B,X) -ι-> Č(A,X) -κ-> Č(A|B,X) of
// truncated complexes, its gap complex Ker κ / Im ι, the decomposition of the
// gap by number of S-tensorands, and the filtration G_p.
//
// Everything is computed in the adapted basis of A (B first, then S = Im σ),
// so ι is a coordinate inclusion and the S-count of a basis tuple is read off
// its digits.

#include <optional>
#include <string>
#include <vector>

#include "relhh/complexes.hpp"
#include "relhh/relbar.hpp"
#include "relhh/tensorb.hpp"
#include "relhh/torlab.hpp"

namespace relhh {

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// dim [S_pB_q] inside A^{⊗n}, n = p + q.
inline long long spb_dims(int n, int p, int dim_s, int dim_b) {
  if (p < 0 || p > n) throw DegreeOutOfRange("spb_dims needs 0 <= p <= n");
  return binomial(n, p) * int_pow(dim_s, p) * int_pow(dim_b, n - p);
}

namespace detail {

/// Number of digits >= dim_b in the base-dim_a expansion of r with n digits.
inline int s_count(long long r, int dim_a, int dim_b, int n) {
  int c = 0;
  for (int i = 0; i < n; ++i) {
    if (r % dim_a >= dim_b) ++c;
    r /= dim_a;
  }
  return c;
}

/// Coordinate subspace spanned by the listed (sorted) basis vectors.
template <class S>
Subspace<S> coordinate_subspace(int ambient, const std::vector<int>& indices) {
  Triplets<S> t;
  for (std::size_t i = 0; i < indices.size(); ++i) t.emplace_back(static_cast<int>(i), indices[i], S(1));
  return Subspace<S>(ambient, from_triplets<S>(static_cast<int>(indices.size()), ambient, t), indices);
}

/// Embedding X ⊗ S^{⊗n} -> X ⊗ A^{⊗n} in adapted coordinates.
template <class S>
SparseMatrix<S> all_s_selection(int dx, int da, int db, int n) {
  const int ds = da - db;
  const long long src = dx * int_pow(ds, n);
  Triplets<S> t;
  for (long long c = 0; c < src; ++c) {
    long long rest = c % int_pow(ds, n), r = 0, scale = 1;
    for (int i = 0; i < n; ++i) {
      r += (db + rest % ds) * scale;
      rest /= ds;
      scale *= da;
    }
    t.emplace_back(static_cast<int>(c / int_pow(ds, n) * int_pow(da, n) + r), static_cast<int>(c), S(1));
  }
  return from_triplets<S>(static_cast<int>(dx * int_pow(da, n)), static_cast<int>(src), t);
}

}  // namespace detail

struct SequenceChecks {
  bool iota_injective = true;
  bool kappa_iota_zero = true;
  bool kappa_surjective = true;  // degrees >= 2
  std::string witness;
  bool ok() const { return iota_injective && kappa_iota_zero && kappa_surjective; }
};

template <class S>
struct FundamentalSequence {
  SubalgebraEmbedding<S> emb;  // adapted
  Bimodule<S> x;               // over emb.ambient
  int bound = 0;               // N; complexes run through degree N-1
  ChainComplex<S> full_b, full_a;
  RelativeChainComplex<S> rel;
  Truncation<S> tb, ta, tr;
  std::vector<SparseMatrix<S>> iota_full, kappa_full;
  std::shared_ptr<const ChainMap<S>> iota, kappa;  // between the truncations
  SequenceChecks checks;

  int top() const { return bound - 1; }
  const ChainComplex<S>& cb() const { return iota->source(); }
  const ChainComplex<S>& ca() const { return iota->target(); }
  const ChainComplex<S>& cr() const { return kappa->target(); }
};

template <class S>
SequenceChecks check_sequence(const ChainMap<S>& iota, const ChainMap<S>& kappa) {
  SequenceChecks c;
  auto note = [&](const std::string& s) {
    if (c.witness.empty()) c.witness = s;
  };
  for (int n = 0; n <= iota.top(); ++n) {
    if (rank(iota[n]) != iota.source().dim(n)) {
      c.iota_injective = false;
      note("iota not injective in degree " + std::to_string(n));
    }
    if (!is_zero(product(kappa[n], iota[n]))) {
      c.kappa_iota_zero = false;
      note("kappa iota != 0 in degree " + std::to_string(n));
    }
    if (n >= 2 && rank(kappa[n]) != kappa.target().dim(n)) {
      c.kappa_surjective = false;
      note("kappa not surjective in degree " + std::to_string(n));
    }
  }
  return c;
}

/// Builds the sequence through degree N-1 and validates it; a failed check is
/// a bug and raises ValidationError.
template <class S>
FundamentalSequence<S> build_fundamental(const SubalgebraEmbedding<S>& original, const Bimodule<S>& x0, int bound) {
  if (bound < 3) throw DegreeBoundTooSmall("the fundamental sequence needs N >= 3");
  if (x0.algebra->dim != original.dim_a()) throw DimensionMismatch("bimodule is not over the ambient algebra");
  FundamentalSequence<S> fs;
  fs.emb = adapted(original);
  fs.x = rebase_bimodule(x0, fs.emb.ambient, adapted_basis(original));
  fs.bound = bound;
  const int top = bound - 1;
  const int dx = fs.x.dim;
  fs.full_b = hochschild_complex(*fs.emb.sub, restrict_bimodule(fs.x, fs.emb), top);
  fs.full_a = hochschild_complex(*fs.emb.ambient, fs.x, top);
  fs.rel = relative_chain_complex(fs.emb, fs.x, top);

  SparseMatrix<S> inc = identity<S>(dx), proj = identity<S>(dx);
  for (int n = 0; n <= top; ++n) {
    fs.iota_full.push_back(inc);
    fs.kappa_full.push_back(product(fs.rel.spaces[n].projection, proj));
    inc = kron(inc, fs.emb.inclusion);
    proj = kron(proj, fs.emb.projection);
  }
  auto share = [](const ChainComplex<S>& c) { return std::make_shared<const ChainComplex<S>>(c); };
  const ChainMap<S> iota_full(share(fs.full_b), share(fs.full_a), fs.iota_full);
  const ChainMap<S> kappa_full(iota_full.target_ptr(), share(fs.rel.complex), fs.kappa_full);

  fs.tb = truncate(fs.full_b);
  fs.ta = truncate(fs.full_a);
  fs.tr = truncate(fs.rel.complex);
  auto cb = share(fs.tb.complex), ca = share(fs.ta.complex), cr = share(fs.tr.complex);
  fs.iota = std::make_shared<const ChainMap<S>>(cb, ca, truncate_components(iota_full, fs.tb, fs.ta));
  fs.kappa = std::make_shared<const ChainMap<S>>(ca, cr, truncate_components(kappa_full, fs.ta, fs.tr));
  fs.checks = check_sequence(*fs.iota, *fs.kappa);
  if (!fs.checks.ok()) throw ValidationError("fundamental sequence: " + fs.checks.witness);
  return fs;
}

/// 0 -> Ker b_B -> Ker b_A -> Ker b_{A|B} -> 0; dimensions and ranks only,
/// no exactness is asserted.
struct DegreeOneKernels {
  int ker_b = 0, ker_a = 0, ker_rel = 0;
  int rank_iota = 0, rank_kappa = 0;
  bool operator==(const DegreeOneKernels&) const = default;
};

template <class S>
DegreeOneKernels degree_one_kernels(const FundamentalSequence<S>& fs) {
  DegreeOneKernels k;
  k.ker_b = fs.cb().dim(1);
  k.ker_a = fs.ca().dim(1);
  k.ker_rel = fs.cr().dim(1);
  k.rank_iota = rank((*fs.iota)[1]);
  k.rank_kappa = rank((*fs.kappa)[1]);
  return k;
}

// ---------------------------------------------------------------------------
// L_{n,0} and the gap complex

/// Ker κ restricted to X ⊗ S^{⊗n}, as basis rows in X ⊗ S^{⊗n} coordinates.
template <class S>
Subspace<S> L_n0(const FundamentalSequence<S>& fs, int n) {
  if (n < 1 || n > fs.top()) throw DegreeOutOfRange("L_{n,0} needs 1 <= n <= N-1");
  const SparseMatrix<S> sel = detail::all_s_selection<S>(fs.x.dim, fs.emb.dim_a(), fs.emb.dim_b(), n);
  return kernel_basis(product(fs.kappa_full[n], sel));
}

template <class S>
Subspace<S> L_n0(const SubalgebraEmbedding<S>& emb, const Bimodule<S>& x, int n) {
  return L_n0(build_fundamental(emb, x, std::max(3, n + 1)), n);
}

template <class S>
struct GapComplex {
  Subquotient<S> sq;                   // the complex Ker κ / Im ι
  std::vector<Subspace<S>> ker_kappa;  // inside Č_n(A,X)
  std::vector<Subspace<S>> im_iota;
  std::vector<int> l_dims;             // dim L_{n,0}, n >= 1 (index 0 unused)
  std::vector<long long> formula;      // Lemma 5.9 prediction, n >= 2
  const ChainComplex<S>& complex() const { return sq.complex; }
};

template <class S>
GapComplex<S> gap_complex(const FundamentalSequence<S>& fs) {
  GapComplex<S> g;
  const int top = fs.top();
  const int dx = fs.x.dim, ds = fs.emb.dim_s(), db = fs.emb.dim_b();
  for (int n = 0; n <= top; ++n) {
    g.ker_kappa.push_back(kernel_basis((*fs.kappa)[n]));
    g.im_iota.push_back(image((*fs.iota)[n]));
  }
  g.sq = subquotient_complex(fs.ca(), g.ker_kappa, g.im_iota);
  g.l_dims.assign(top + 1, 0);
  g.formula.assign(top + 1, 0);
  for (int n = 1; n <= top; ++n) g.l_dims[n] = L_n0(fs, n).dim();
  for (int n = 2; n <= top; ++n) {
    long long f = g.l_dims[n];
    for (int p = 1; p < n; ++p) f += dx * spb_dims(n, p, ds, db);
    g.formula[n] = f;
    if (f != g.sq.complex.dim(n)) {
      throw ValidationError("gap dimension " + std::to_string(g.sq.complex.dim(n)) + " in degree " +
                            std::to_string(n) + " differs from the predicted " + std::to_string(f));
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// The filtration G_p: in degree n <= p the whole of Ker κ, above that the
// chains with at most p tensorands in S. Levels live in Č(A,X) and contain
// Im ι; the quotient G_p/G_{p-1} is formed there.

template <class S>
struct GapFiltration {
  std::vector<std::vector<Subspace<S>>> levels;  // levels[p][n], p = 0..top
  std::vector<Subquotient<S>> graded;            // graded[p] = G_p/G_{p-1}, p >= 1 (index 0 unused)
  int top() const { return static_cast<int>(levels.size()) - 1; }
};

template <class S>
GapFiltration<S> filtration(const FundamentalSequence<S>& fs, const GapComplex<S>& g) {
  const int top = fs.top();
  const int dx = fs.x.dim, da = fs.emb.dim_a(), db = fs.emb.dim_b();
  GapFiltration<S> f;
  for (int p = 0; p <= top; ++p) {
    std::vector<Subspace<S>> level;
    for (int n = 0; n <= top; ++n) {
      if (n == 0) {
        level.push_back(Subspace<S>::zero(0));
      } else if (p == 0) {
        level.push_back(g.im_iota[n]);
      } else if (n <= p) {
        level.push_back(g.ker_kappa[n]);
      } else {
        std::vector<int> idx;
        const long long per = int_pow(da, n);
        for (int xi = 0; xi < dx; ++xi) {
          for (long long r = 0; r < per; ++r) {
            if (detail::s_count(r, da, db, n) <= p) idx.push_back(static_cast<int>(xi * per + r));
          }
        }
        level.push_back(detail::coordinate_subspace<S>(fs.ca().dim(n), idx));
      }
    }
    f.levels.push_back(std::move(level));
  }
  // nesting, containment in Ker κ, and exhaustion at p = top
  for (int p = 0; p <= top; ++p) {
    for (int n = 0; n <= top; ++n) {
      if (!g.ker_kappa[n].contains(f.levels[p][n].basis())) throw NotSubcomplex(n, 0, "G_p is not inside Ker kappa");
      if (p > 0 && !f.levels[p][n].contains(f.levels[p - 1][n].basis())) throw NotSubcomplex(n, 0, "G_{p-1} is not inside G_p");
    }
  }
  for (int n = 0; n <= top; ++n) {
    if (f.levels[top][n].dim() != g.ker_kappa[n].dim()) throw NotSubcomplex(n, 0, "G_top is not all of Ker kappa");
  }
  f.graded.resize(top + 1);
  for (int p = 1; p <= top; ++p) f.graded[p] = subquotient_complex(fs.ca(), f.levels[p], f.levels[p - 1]);
  return f;
}

// ---------------------------------------------------------------------------
// G_p/G_{p-1} built directly: degree q > 0 is X ⊗ [S_pB_q], degree 0 is
// L_{p,0}, and the differential is the part of b_A keeping exactly p
// S-tensorands. Only the tuples involved are enumerated, so this reaches
// degrees where the full complex would not fit.

template <class S>
struct GradedPiece {
  int p = 0;
  ChainComplex<S> complex;  // degrees q = 0..qtop
  Subspace<S> l_p0;
};

namespace detail {

template <class S>
using ColumnLists = std::vector<std::vector<std::pair<int, S>>>;

template <class S>
ColumnLists<S> columns_of(const SparseMatrix<S>& m) {
  ColumnLists<S> cols(m.cols());
  for (int r = 0; r < m.outerSize(); ++r) {
    for (typename SparseMatrix<S>::InnerIterator it(m, r); it; ++it) cols[it.col()].emplace_back(r, it.value());
  }
  return cols;
}

}  // namespace detail

template <class S>
GradedPiece<S> associated_graded(const SubalgebraEmbedding<S>& emb, const Bimodule<S>& x, int p, int qtop) {
  // emb must be adapted and x over emb.ambient
  if (p < 1 || qtop < 1) throw DegreeOutOfRange("associated graded needs p >= 1 and qtop >= 1");
  const Algebra<S>& a = *emb.ambient;
  const int da = a.dim, db = emb.dim_b(), ds = emb.dim_s(), dx = x.dim;
  GradedPiece<S> gp;
  gp.p = p;

  // L_{p,0} = Ker of X ⊗ S^{⊗p} -> X ⊗_{B^e} S^{⊗_B p}
  const QuotientSpace<S> qp = make_quotient<S>(static_cast<int>(dx * int_pow(ds, p)),
                                               relative_relations(restrict_bimodule(x, emb), quotient_bimodule(emb), p));
  gp.l_p0 = kernel_basis(qp.projection);

  std::vector<detail::ColumnLists<S>> xr, xl;
  for (int i = 0; i < da; ++i) {
    xr.push_back(detail::columns_of(x.right[i]));
    xl.push_back(detail::columns_of(x.left[i]));
  }
  const detail::ColumnLists<S> mult = detail::columns_of(a.mult);

  // tuples (x, a_1..a_n) with exactly p S-digits, per degree q
  std::vector<std::vector<long long>> tuples(qtop + 1);
  std::vector<std::vector<int>> local(qtop + 1);
  for (int q = 1; q <= qtop; ++q) {
    const int n = p + q;
    const long long per = int_pow(da, n);
    local[q].assign(static_cast<std::size_t>(dx * per), -1);
    for (int xi = 0; xi < dx; ++xi) {
      for (long long r = 0; r < per; ++r) {
        if (detail::s_count(r, da, db, n) != p) continue;
        local[q][xi * per + r] = static_cast<int>(tuples[q].size());
        tuples[q].push_back(xi * per + r);
      }
    }
    if (static_cast<long long>(tuples[q].size()) != dx * spb_dims(n, p, ds, db)) {
      throw ValidationError("[S_pB_q] count mismatch");
    }
  }

  std::vector<int> dims{gp.l_p0.dim()};
  std::vector<SparseMatrix<S>> d{zero_matrix<S>(0, gp.l_p0.dim())};
  for (int q = 1; q <= qtop; ++q) {
    const int n = p + q;
    const long long per = int_pow(da, n), per_lo = int_pow(da, n - 1);
    const int rows = q == 1 ? static_cast<int>(dx * int_pow(ds, p)) : static_cast<int>(tuples[q - 1].size());
    Triplets<S> t;
    std::vector<int> digit(n);
    auto emit = [&](int xi, const std::vector<int>& w, int col, const S& v) {
      long long r = 0;
      int sc = 0;
      for (int k : w) {
        r = r * da + k;
        if (k >= db) ++sc;
      }
      if (sc > p) throw NotSubcomplex(n, col, "a face raised the number of S-tensorands");
      if (sc < p) return;
      if (q == 1) {
        long long rs = 0;
        for (int k : w) rs = rs * ds + (k - db);
        t.emplace_back(static_cast<int>(xi * int_pow(ds, p) + rs), col, v);
      } else {
        t.emplace_back(local[q - 1][xi * per_lo + r], col, v);
      }
    };
    std::vector<int> w(n - 1);
    for (int col = 0; col < static_cast<int>(tuples[q].size()); ++col) {
      const long long idx = tuples[q][col];
      const int xi = static_cast<int>(idx / per);
      long long r = idx % per;
      for (int i = n - 1; i >= 0; --i) {
        digit[i] = static_cast<int>(r % da);
        r /= da;
      }
      // x a_1 ⊗ a_2 ..
      std::copy(digit.begin() + 1, digit.end(), w.begin());
      for (const auto& [xo, v] : xr[digit[0]][xi]) emit(xo, w, col, v);
      // x ⊗ .. a_i a_{i+1} ..
      for (int i = 0; i + 1 < n; ++i) {
        for (int k = 0, j = 0; k < n; ++k) {
          if (k == i + 1) continue;
          w[j++] = digit[k];
        }
        const S sign = (i % 2 == 0) ? S(-1) : S(1);
        for (const auto& [c, v] : mult[digit[i] * da + digit[i + 1]]) {
          w[i] = c;
          emit(xi, w, col, sign * v);
        }
      }
      // a_n x ⊗ a_1 ..
      std::copy(digit.begin(), digit.end() - 1, w.begin());
      const S sign = (n % 2 == 0) ? S(1) : S(-1);
      for (const auto& [xo, v] : xl[digit[n - 1]][xi]) emit(xo, w, col, sign * v);
    }
    SparseMatrix<S> dq = from_triplets<S>(rows, static_cast<int>(tuples[q].size()), t);
    if (q == 1) {
      auto coords = gp.l_p0.coordinates(transpose(dq));
      if (!coords) throw NotSubcomplex(p + 1, gp.l_p0.first_outside(transpose(dq)), "boundary leaves L_{p,0}");
      dq = transpose(*coords);
    }
    dims.push_back(static_cast<int>(tuples[q].size()));
    d.push_back(std::move(dq));
  }
  gp.complex = ChainComplex<S>(std::move(dims), std::move(d));
  return gp;
}

// ---------------------------------------------------------------------------
// Comparison of H_q(G_p/G_{p-1}) with Tor over B^e

struct QuotientTorRow {
  int q = 0;
  int quotient_homology = 0;
  int tor_total = 0;  // Tor_{p+q}
  int tor_shifted = 0;  // Tor_q
  bool equal_total = false, equal_shifted = false;
};

struct QuotientTorTable {
  int p = 0;
  bool asserted = false;
  std::string note;
  int h0 = 0;
  std::vector<QuotientTorRow> rows;
  bool bar_cross_checked = false;
};

/// Tor^{B^e}_n(X, S^{⊗_B p}) for n = 0..max_degree-1, by the resolution route,
/// cross-checked against the bar route when that complex has at most
/// bar_limit basis elements per degree.
template <class S>
std::vector<int> enveloping_tor(const SubalgebraEmbedding<S>& emb, const Bimodule<S>& x, const PowerTower<S>& tower,
                                int p, int max_degree, long long bar_limit, bool* cross_checked = nullptr) {
  const auto env = enveloping(*emb.sub);
  const Module<S> right = as_right_enveloping(restrict_bimodule(x, emb), env);
  const Module<S> left = as_left_enveloping(tower.power(p), env);
  const auto dims = tor(right, left, max_degree, TorMethod::Resolution);
  const bool small = tor_bar_size(right, left, max_degree) <= bar_limit;
  if (small && tor(right, left, max_degree, TorMethod::Bar) != dims) {
    throw ValidationError("Tor routes disagree over the enveloping algebra");
  }
  if (cross_checked) *cross_checked = small;
  return dims;
}

template <class S>
QuotientTorTable quotient_homology_vs_tor(const SubalgebraEmbedding<S>& original, const Bimodule<S>& x0, int p,
                                          int qmax, bool hypothesis, long long bar_limit = 200000) {
  QuotientTorTable table;
  table.p = p;
  table.asserted = hypothesis;
  if (!hypothesis) table.note = "hypothesis not satisfied - comparison not asserted";
  if (original.dim_s() == 0) return table;
  const SubalgebraEmbedding<S> emb = adapted(original);
  const Bimodule<S> x = rebase_bimodule(x0, emb.ambient, adapted_basis(original));
  const GradedPiece<S> gp = associated_graded(emb, x, p, qmax + 1);
  const PowerTower<S> tower(emb);
  const auto tor_dims = enveloping_tor(emb, x, tower, p, p + qmax + 1, bar_limit, &table.bar_cross_checked);
  table.h0 = homology_dim(gp.complex, 0);
  for (int q = 1; q <= qmax; ++q) {
    QuotientTorRow row;
    row.q = q;
    row.quotient_homology = homology_dim(gp.complex, q);
    row.tor_total = tor_dims[p + q];
    row.tor_shifted = tor_dims[q];
    row.equal_total = row.quotient_homology == row.tor_total;
    row.equal_shifted = row.quotient_homology == row.tor_shifted;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace relhh
