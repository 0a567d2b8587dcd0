#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "relhh/torlab.hpp"

using namespace relhh;
using Q = Rational;

namespace {

template <class S>
Module<S> trivial_module(const AlgebraPtr<S>& a, typename Module<S>::Side side, int dim) {
  // every basis element but the first acts by zero (augmented algebras with 1 = e_0)
  std::vector<SparseMatrix<S>> act(a->dim, zero_matrix<S>(dim, dim));
  act[0] = identity<S>(dim);
  return make_module<S>(a, side, dim, std::move(act));
}

template <class S>
std::vector<int> all_routes(const Module<S>& x, const Module<S>& m, int degrees) {
  const auto bar = tor(x, m, degrees, TorMethod::Bar);
  CHECK(tor(x, m, degrees, TorMethod::Resolution) == bar);
  const auto c = tor_unnormalised_complex(x, m, degrees);
  for (int n = 0; n < degrees; ++n) CHECK(homology_dim(c, n) == bar[n]);
  return bar;
}

}  // namespace

TEST_CASE("Tor over the ground field") {
  auto k = fixtures::ground_field<Q>();
  auto x = make_module<Q>(k, Module<Q>::Side::Right, 3, {identity<Q>(3)});
  auto m = make_module<Q>(k, Module<Q>::Side::Left, 2, {identity<Q>(2)});
  CHECK(all_routes(x, m, 4) == std::vector<int>{6, 0, 0, 0});
}

TEST_CASE("Tor over the dual numbers is periodic") {
  // k[x]/(x²) -x-> k[x]/(x²) -x-> ... -> k is the minimal resolution of k;
  // tensoring with k kills every map, so each Tor_n is one-dimensional
  auto d = fixtures::dual_numbers<Q>();
  auto x = trivial_module(d, Module<Q>::Side::Right, 1);
  auto m = trivial_module(d, Module<Q>::Side::Left, 1);
  CHECK(all_routes(x, m, 6) == std::vector<int>{1, 1, 1, 1, 1, 1});
  // the greedy resolution is the minimal one here
  auto res = free_resolution(m, 4);
  CHECK(res.ranks == std::vector<int>{1, 1, 1, 1, 1});
  // the regular module is free: Tor vanishes above degree 0
  auto reg = make_module<Q>(d, Module<Q>::Side::Left, 2, d->left);
  CHECK(all_routes(x, reg, 4) == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("Tor over a semisimple enveloping algebra") {
  auto ut = fixtures::corpus_embeddings<Q>()[1];
  auto env = enveloping(*ut.emb.sub);
  auto x = as_right_enveloping(restrict_bimodule(ut.x, ut.emb), env);
  auto m = as_left_enveloping(quotient_bimodule(ut.emb), env);
  auto t = all_routes(x, m, 4);
  for (int n = 1; n < 4; ++n) CHECK(t[n] == 0);
}

TEST_CASE("Tor_0 is the tensor product") {
  for (const auto& f : fixtures::corpus_embeddings<Q>()) {
    INFO(f.name);
    auto xb = restrict_bimodule(f.x, f.emb);
    auto q = quotient_bimodule(f.emb);
    auto env = enveloping(*f.emb.sub);
    auto t = tor(as_right_enveloping(xb, env), as_left_enveloping(q, env), 1, TorMethod::Resolution);
    CHECK(t[0] == coinvariants(xb, q).quotient_dim);
    // over B itself: A/B ⊗_B A/B
    auto tb = tor(right_part(q), left_part(q), 1);
    CHECK(tb[0] == tensor_over_B(q, q).dim());
  }
}

TEST_CASE("the two Tor routes agree on random modules") {
  std::mt19937 rng(42);
  for (const auto& [a, subs] : fixtures::random_bases<Q>()) {
    if (a->dim > 3) continue;
    // A / A v for a random v, against the regular and the top right modules
    for (int trial = 0; trial < 2; ++trial) {
      Triplets<Q> t;
      for (int j = 0; j < a->dim; ++j) t.emplace_back(j, 0, Q(static_cast<int>(rng() % 5) - 2));
      const SparseMatrix<Q> v = from_triplets<Q>(a->dim, 1, t);
      // left submodule A v, quotient A / A v
      SparseMatrix<Q> gens = zero_matrix<Q>(0, a->dim);
      for (int i = 0; i < a->dim; ++i) gens = vstack(gens, transpose(product(a->left[i], v)));
      auto q = make_quotient<Q>(a->dim, gens);
      std::vector<SparseMatrix<Q>> act;
      for (int i = 0; i < a->dim; ++i) act.push_back(induced_on_quotient(a->left[i], q, q));
      auto m = make_module<Q>(a, Module<Q>::Side::Left, q.quotient_dim, act);
      auto x = make_module<Q>(a, Module<Q>::Side::Right, a->dim, a->right);
      auto xq = top_module(a);
      all_routes(x, m, 3);
      all_routes(xq, m, 3);
    }
  }
}

TEST_CASE("hypothesis checks") {
  auto fx = fixtures::corpus_embeddings<Q>();
  auto kd = check_hypothesis(fx[0].emb, 4, 4);
  CHECK(kd.holds);
  CHECK_FALSE(kd.witness);
  CHECK(kd.note.find("bounded") != std::string::npos);
  CHECK(check_hypothesis(fx[1].emb, 4, 4).holds);
  auto sq = check_hypothesis(fx[3].emb, 4, 4);
  CHECK_FALSE(sq.holds);
  REQUIRE(sq.witness);
  CHECK(*sq.witness == std::make_pair(1, 1));
  CHECK(sq.dims[0][0] == 1);
}

TEST_CASE("tensor nilpotency") {
  auto fx = fixtures::corpus_embeddings<Q>();
  auto same = nilpotency_index(fx[5].emb, 4);
  REQUIRE(same.index);
  CHECK(*same.index == 1);
  auto ut = nilpotency_index(fx[1].emb, 4);
  REQUIRE(ut.index);
  CHECK(*ut.index == 2);
  CHECK(ut.dims == std::vector<int>{1, 0, 0, 0});
  auto kd = nilpotency_index(fx[0].emb, 5);
  CHECK_FALSE(kd.index);
  CHECK(kd.dims == std::vector<int>{1, 1, 1, 1, 1});
  CHECK_THROWS_AS(nilpotency_index(fx[0].emb, 0), DegreeOutOfRange);
  // once zero, the dimensions stay zero
  for (const auto& f : fx) {
    auto r = nilpotency_index(f.emb, 4);
    bool seen_zero = false;
    for (int d : r.dims) {
      if (seen_zero) CHECK(d == 0);
      seen_zero = seen_zero || d == 0;
    }
  }
}

TEST_CASE("the trace-form radical is a nilpotent two-sided ideal") {
  std::vector<AlgebraPtr<Q>> algebras{fixtures::dual_numbers<Q>(), fixtures::upper_triangular<Q>(),
                                      fixtures::square_zero_algebra<Q>(), fixtures::a3_quiver<Q>(),
                                      fixtures::k_times_k<Q>()};
  for (const auto& [a, subs] : fixtures::random_bases<Q>()) algebras.push_back(a);
  for (const auto& a : algebras) {
    auto rad = radical(*a);
    const SparseMatrix<Q> r = transpose(rad.basis());
    for (int i = 0; i < a->dim; ++i) {
      CHECK(rad.contains(transpose(product(a->left[i], r))));
      CHECK(rad.contains(transpose(product(a->right[i], r))));
    }
    // rad^dim = 0
    SparseMatrix<Q> power = r;
    for (int k = 1; k < a->dim && power.cols() > 0; ++k) {
      std::vector<SparseRow<Q>> rows;
      for (int c = 0; c < power.cols(); ++c)
        for (int j = 0; j < r.cols(); ++j) {
          auto p = rows_of(transpose(a->multiply(power.middleCols(c, 1), r.middleCols(j, 1))));
          rows.push_back(p[0]);
        }
      power = transpose(row_space(from_rows(rows, a->dim)).basis());
    }
    CHECK(is_zero(power));
  }
  CHECK(radical(*fixtures::dual_numbers<Q>()).dim() == 1);
  CHECK(radical(*fixtures::k_times_k<Q>()).dim() == 0);
  CHECK(radical(*fixtures::a3_quiver<Q>()).dim() == 2);
}

TEST_CASE("projective dimension estimates") {
  auto kk = fixtures::k_times_k<Q>();
  auto m = make_module<Q>(kk, Module<Q>::Side::Left, 2, kk->left);
  auto semisimple = pd_upper(kk, m, 8);
  REQUIRE(semisimple.value);
  CHECK(*semisimple.value == 0);

  auto d = fixtures::dual_numbers<Q>();
  auto periodic = pd_upper(d, trivial_module(d, Module<Q>::Side::Left, 1), 8);
  CHECK_FALSE(periodic.value);
  CHECK(periodic.note.find("bounded") != std::string::npos);

  auto ut = fixtures::corpus_embeddings<Q>()[1];
  auto env = enveloping(*ut.emb.sub);
  auto s = pd_upper(env, as_left_enveloping(quotient_bimodule(ut.emb), env), 8);
  REQUIRE(s.value);
  CHECK(*s.value == 0);

  // a free module has projective dimension 0
  auto free = pd_upper(d, make_module<Q>(d, Module<Q>::Side::Left, 2, d->left), 8);
  REQUIRE(free.value);
  CHECK(*free.value == 0);
  // zero module
  auto zero = pd_upper(d, make_module<Q>(d, Module<Q>::Side::Left, 0, {zero_matrix<Q>(0, 0), zero_matrix<Q>(0, 0)}), 8);
  REQUIRE(zero.value);
  CHECK(*zero.value == 0);
}

TEST_CASE("projective dimension needs characteristic zero") {
  PrimeFieldScope scope(5);
  auto d = fixtures::dual_numbers<Fp>();
  auto m = make_module<Fp>(d, Module<Fp>::Side::Left, 2, d->left);
  CHECK_THROWS_AS(pd_upper(d, m, 4), UnsupportedField);
  CHECK_THROWS_AS(radical(*d), UnsupportedField);
  // Tor itself works over F_p
  std::vector<SparseMatrix<Fp>> act{identity<Fp>(1), zero_matrix<Fp>(1, 1)};
  auto x = make_module<Fp>(d, Module<Fp>::Side::Right, 1, act);
  auto k = make_module<Fp>(d, Module<Fp>::Side::Left, 1, act);
  CHECK(tor(x, k, 4) == std::vector<int>{1, 1, 1, 1});
  CHECK(tor(x, k, 4, TorMethod::Resolution) == std::vector<int>{1, 1, 1, 1});
}
