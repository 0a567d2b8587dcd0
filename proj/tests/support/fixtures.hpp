#pragma once

// Algebras and extensions shared by the tests, built directly in code so that
// they do not depend on the JSON reader.

#include <array>
#include <random>
#include <string>
#include <vector>

#include "relhh/algebra.hpp"

namespace fixtures {

using relhh::AlgebraPtr;
using relhh::Bimodule;
using relhh::SparseMatrix;
using relhh::SubalgebraEmbedding;
using relhh::Triplets;

std::string corpus_dir();

template <class S>
SparseMatrix<S> cols(int rows, std::initializer_list<std::initializer_list<int>> columns) {
  Triplets<S> t;
  int c = 0;
  for (auto col : columns) {
    int r = 0;
    for (int x : col) {
      if (x != 0) t.emplace_back(r, c, S(x));
      ++r;
    }
    ++c;
  }
  return relhh::from_triplets<S>(rows, c, t);
}

/// Algebra from a sparse product table {i, j, k, coeff}: e_i e_j += coeff e_k.
template <class S>
AlgebraPtr<S> table(std::vector<std::string> labels, std::initializer_list<std::array<int, 4>> entries,
                    std::initializer_list<int> unit) {
  const int n = static_cast<int>(labels.size());
  Triplets<S> t;
  for (const auto& e : entries) t.emplace_back(e[2], e[0] * n + e[1], S(e[3]));
  Triplets<S> u;
  int k = 0;
  for (int x : unit) {
    if (x != 0) u.emplace_back(k, 0, S(x));
    ++k;
  }
  return relhh::make_algebra<S>(std::move(labels), relhh::from_triplets<S>(n, n * n, t),
                                relhh::from_triplets<S>(n, 1, u));
}

template <class S>
AlgebraPtr<S> ground_field() {
  return table<S>({"1"}, {{0, 0, 0, 1}}, {1});
}

template <class S>
AlgebraPtr<S> dual_numbers() {
  return table<S>({"1", "x"}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}}, {1, 0});
}

/// basis e11, e22, e12
template <class S>
AlgebraPtr<S> upper_triangular() {
  return relhh::from_quiver<S>({"1", "2"}, {{"a", 0, 1}}, {}, 8);
}

/// basis e1, e2 (orthogonal idempotents)
template <class S>
AlgebraPtr<S> k_times_k() {
  return table<S>({"e1", "e2"}, {{0, 0, 0, 1}, {1, 1, 1, 1}}, {1, 1});
}

/// basis 1, x, m; every product of x and m vanishes
template <class S>
AlgebraPtr<S> square_zero_algebra() {
  return table<S>({"1", "x", "m"}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {0, 2, 2, 1}, {2, 0, 2, 1}}, {1, 0, 0});
}

/// 1 -a-> 2 -b-> 3 with ab = 0; basis e1, e2, e3, a, b
template <class S>
AlgebraPtr<S> a3_quiver() {
  return relhh::from_quiver<S>({"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}}, {{"a", "b"}}, 8);
}

template <class S>
AlgebraPtr<S> product_algebra(const relhh::Algebra<S>& a, const relhh::Algebra<S>& b) {
  const int na = a.dim, nb = b.dim, n = na + nb;
  Triplets<S> t;
  for (int c = 0; c < a.mult.outerSize(); ++c)
    for (typename SparseMatrix<S>::InnerIterator it(a.mult, c); it; ++it) {
      const int i = static_cast<int>(it.col()) / na, j = static_cast<int>(it.col()) % na;
      t.emplace_back(static_cast<int>(it.row()), i * n + j, it.value());
    }
  for (int c = 0; c < b.mult.outerSize(); ++c)
    for (typename SparseMatrix<S>::InnerIterator it(b.mult, c); it; ++it) {
      const int i = static_cast<int>(it.col()) / nb, j = static_cast<int>(it.col()) % nb;
      t.emplace_back(na + static_cast<int>(it.row()), (na + i) * n + (na + j), it.value());
    }
  std::vector<std::string> labels;
  for (const auto& l : a.labels) labels.push_back(l + "_1");
  for (const auto& l : b.labels) labels.push_back(l + "_2");
  return relhh::make_algebra<S>(std::move(labels), relhh::from_triplets<S>(n, n * n, t), relhh::vstack(a.unit, b.unit));
}

template <class S>
SubalgebraEmbedding<S> square_zero() {
  return relhh::make_subalgebra<S>(square_zero_algebra<S>(), cols<S>(3, {{1, 0, 0}, {0, 1, 0}}));
}

template <class S>
struct Fixture {
  std::string name;
  SubalgebraEmbedding<S> emb;
  Bimodule<S> x;
};

template <class S>
Fixture<S> with_regular(std::string name, SubalgebraEmbedding<S> emb) {
  auto x = relhh::regular_bimodule(emb.ambient);
  return Fixture<S>{std::move(name), std::move(emb), std::move(x)};
}

/// The six shipped regimes, in corpus order.
template <class S>
std::vector<Fixture<S>> corpus_embeddings() {
  std::vector<Fixture<S>> out;
  out.push_back(with_regular<S>("k_in_dual", relhh::make_subalgebra<S>(dual_numbers<S>(), cols<S>(2, {{1, 0}}))));
  out.push_back(with_regular<S>("diag_in_upper",
                                relhh::make_subalgebra<S>(upper_triangular<S>(), cols<S>(3, {{1, 0, 0}, {0, 1, 0}}))));
  out.push_back(with_regular<S>("k_in_kxk", relhh::make_subalgebra<S>(k_times_k<S>(), cols<S>(2, {{1, 1}}))));
  out.push_back(with_regular<S>("square_zero", square_zero<S>()));
  out.push_back(with_regular<S>(
      "a3_quiver",
      relhh::make_subalgebra<S>(a3_quiver<S>(), cols<S>(5, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}}))));
  auto u = upper_triangular<S>();
  out.push_back(with_regular<S>("b_equals_a", relhh::make_subalgebra<S>(u, relhh::identity<S>(3))));
  return out;
}

/// k ⊂ the a3 quiver algebra (the ground field inside fixture 5).
template <class S>
Fixture<S> k_in_a3() {
  auto a = a3_quiver<S>();
  return with_regular<S>("k_in_a3_quiver", relhh::make_subalgebra<S>(a, a->unit));
}

/// σ + ι∘R for a random integer matrix R : A/B -> B.
template <class S>
SubalgebraEmbedding<S> perturbed_section(const SubalgebraEmbedding<S>& emb, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> val(-3, 3);
  Triplets<S> t;
  for (int i = 0; i < emb.dim_b(); ++i)
    for (int j = 0; j < emb.dim_s(); ++j) {
      const int v = val(rng);
      if (v != 0) t.emplace_back(i, j, S(v));
    }
  const auto r = relhh::from_triplets<S>(emb.dim_b(), emb.dim_s(), t);
  return relhh::with_section(emb, relhh::sum(emb.section, relhh::product(emb.inclusion, r)));
}

/// Base algebras of dimension at most 4 with candidate subalgebras of
/// dimension at most 2 (given as columns), used by the random extensions.
template <class S>
std::vector<std::pair<AlgebraPtr<S>, std::vector<SparseMatrix<S>>>> random_bases() {
  std::vector<std::pair<AlgebraPtr<S>, std::vector<SparseMatrix<S>>>> out;
  auto d = dual_numbers<S>();
  out.push_back({d, {cols<S>(2, {{1, 0}})}});
  auto kk = k_times_k<S>();
  out.push_back({kk, {cols<S>(2, {{1, 1}}), cols<S>(2, {{1, 0}, {0, 1}})}});
  auto u = upper_triangular<S>();
  out.push_back({u, {cols<S>(3, {{1, 1, 0}}), cols<S>(3, {{1, 0, 0}, {0, 1, 0}}), cols<S>(3, {{1, 1, 0}, {0, 0, 1}})}});
  auto sq = square_zero_algebra<S>();
  out.push_back({sq, {cols<S>(3, {{1, 0, 0}}), cols<S>(3, {{1, 0, 0}, {0, 1, 0}}), cols<S>(3, {{1, 0, 0}, {0, 1, 1}})}});
  // k[x]/(x^3): basis 1, x, x²
  auto t3 = table<S>({"1", "x", "x2"},
                     {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {0, 2, 2, 1}, {2, 0, 2, 1}, {1, 1, 2, 1}}, {1, 0, 0});
  out.push_back({t3, {cols<S>(3, {{1, 0, 0}}), cols<S>(3, {{1, 0, 0}, {0, 0, 1}})}});
  // 2x2 matrices: e11, e12, e21, e22
  auto m2 = table<S>({"e11", "e12", "e21", "e22"},
                     {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 2, 0, 1}, {1, 3, 1, 1}, {2, 0, 2, 1}, {2, 1, 3, 1}, {3, 2, 2, 1},
                      {3, 3, 3, 1}},
                     {1, 0, 0, 1});
  out.push_back({m2, {cols<S>(4, {{1, 0, 0, 1}}), cols<S>(4, {{1, 0, 0, 0}, {0, 0, 0, 1}}),
                      cols<S>(4, {{1, 0, 0, 1}, {0, 1, 0, 0}})}});
  // k[x,y]/(x², y²): 1, x, y, xy
  auto dd = table<S>({"1", "x", "y", "xy"},
                     {{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}, {0, 3, 3, 1}, {1, 0, 1, 1}, {2, 0, 2, 1}, {3, 0, 3, 1},
                      {1, 2, 3, 1}, {2, 1, 3, 1}},
                     {1, 0, 0, 0});
  out.push_back({dd, {cols<S>(4, {{1, 0, 0, 0}}), cols<S>(4, {{1, 0, 0, 0}, {0, 1, 0, 0}}),
                      cols<S>(4, {{1, 0, 0, 0}, {0, 0, 0, 1}})}});
  // Kronecker quiver: e1, e2, a, b with a, b : 1 -> 2
  auto kr = relhh::from_quiver<S>({"1", "2"}, {{"a", 0, 1}, {"b", 0, 1}}, {}, 8);
  out.push_back({kr, {cols<S>(4, {{1, 1, 0, 0}}), cols<S>(4, {{1, 0, 0, 0}, {0, 1, 0, 0}})}});
  return out;
}

/// A random extension: a base algebra in a random integral basis, with a
/// candidate subalgebra and a randomly perturbed section.
template <class S>
Fixture<S> random_fixture(unsigned seed) {
  std::mt19937 rng(seed * 7919u + 17u);
  const auto bases = random_bases<S>();
  const auto& [a, subs] = bases[rng() % bases.size()];
  const auto& sub = subs[rng() % subs.size()];
  const int n = a->dim;
  // unimodular change of basis: permutation times a few transvections
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  Triplets<S> pt;
  for (int i = 0; i < n; ++i) pt.emplace_back(perm[i], i, S(1));
  SparseMatrix<S> basis = relhh::from_triplets<S>(n, n, pt);
  std::uniform_int_distribution<int> val(-2, 2);
  for (int k = 0; k < n && n > 1; ++k) {
    const int i = static_cast<int>(rng() % n);
    int j = static_cast<int>(rng() % n);
    if (i == j) j = (j + 1) % n;
    Triplets<S> tt;
    for (int r = 0; r < n; ++r) tt.emplace_back(r, r, S(1));
    tt.emplace_back(i, j, S(val(rng)));
    basis = relhh::product(basis, relhh::from_triplets<S>(n, n, tt));
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  auto a2 = relhh::change_basis(*a, basis, labels);
  auto inc = relhh::product(relhh::inverse(basis), sub);
  auto emb = relhh::make_subalgebra<S>(a2, inc);
  if (emb.dim_s() > 0 && emb.dim_b() > 0) emb = perturbed_section(emb, seed + 101u);
  return with_regular<S>("random_" + std::to_string(seed), std::move(emb));
}

template <class S>
SubalgebraEmbedding<S> random_extension(unsigned seed) {
  return random_fixture<S>(seed).emb;
}

}  // namespace fixtures
