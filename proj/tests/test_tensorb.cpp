#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "relhh/tensorb.hpp"

using namespace relhh;
using Q = Rational;

namespace {

/// k as a module over the dual numbers, x acting by 0.
Bimodule<Q> trivial_dual_module(AlgebraPtr<Q> d) {
  return make_bimodule<Q>(d, 1, {identity<Q>(1), zero_matrix<Q>(1, 1)}, {identity<Q>(1), zero_matrix<Q>(1, 1)});
}

std::vector<Bimodule<Q>> sample_modules(const SubalgebraEmbedding<Q>& emb) {
  PowerTower<Q> tower(emb);
  std::vector<Bimodule<Q>> out{unit_bimodule(emb), tower.power(1), tower.power(2)};
  out.push_back(restrict_bimodule(regular_bimodule(emb.ambient), emb));
  return out;
}

}  // namespace

TEST_CASE("tensor over B: unit laws and field case") {
  for (const auto& f : fixtures::corpus_embeddings<Q>()) {
    const auto b = unit_bimodule(f.emb);
    for (const auto& m : sample_modules(f.emb)) {
      CHECK(tensor_over_B(m, b).dim() == m.dim);
      CHECK(tensor_over_B(b, m).dim() == m.dim);
    }
  }
  auto k_in_d = fixtures::corpus_embeddings<Q>()[0].emb;
  auto x = restrict_bimodule(regular_bimodule(k_in_d.ambient), k_in_d);
  auto t = tensor_over_B(x, x);
  CHECK(t.dim() == 4);
  CHECK(t.space.relations.dim() == 0);
  CHECK(is_identity(t.space.projection));
}

TEST_CASE("tensor over dual numbers of two trivial modules") {
  auto d = fixtures::dual_numbers<Q>();
  auto k = trivial_dual_module(d);
  CHECK(tensor_over_B(k, k).dim() == 1);
}

TEST_CASE("associativity at the dimension level") {
  for (const auto& f : fixtures::corpus_embeddings<Q>()) {
    auto ms = sample_modules(f.emb);
    for (const auto& m : ms)
      for (const auto& n : ms)
        for (const auto& p : ms) {
          const int left = tensor_over_B(tensor_over_B(m, n).module, p).dim();
          const int right = tensor_over_B(m, tensor_over_B(n, p).module).dim();
          CHECK(left == right);
        }
  }
}

TEST_CASE("powers of A/B") {
  auto fx = fixtures::corpus_embeddings<Q>();
  // k in dual numbers: dim A - 1 = 1
  PowerTower<Q> dual(fx[0].emb);
  CHECK(dual.dim(1) == 1);
  CHECK(dual.dim(2) == 1);
  CHECK(dual.dim(0) == 1);
  // diagonal in upper triangular: e12 ⊗_B e12 = e12 e22 ⊗ e12 = e12 ⊗ e22 e12 = 0
  PowerTower<Q> upper(fx[1].emb);
  CHECK(upper.dim(1) == 1);
  CHECK(upper.dim(2) == 0);
  // B = k: (dim A - 1)^n
  auto k_in_a3 = fixtures::k_in_a3<Q>();
  PowerTower<Q> a3(k_in_a3.emb);
  CHECK(a3.dim(2) == 16);
  CHECK(a3.dim(3) == 64);
  // B = A
  PowerTower<Q> same(fx[5].emb);
  CHECK(same.dim(1) == 0);
  // the a3 quiver over its vertices: A/B = span{a, b}, a ⊗ b survives, b ⊗ a dies
  PowerTower<Q> quiver(fx[4].emb);
  CHECK(quiver.dim(1) == 2);
  CHECK(quiver.dim(2) == 1);
  CHECK(quiver.dim(3) == 0);
  // flat maps are surjective
  for (int n = 1; n <= 3; ++n) CHECK(rank(quiver.flat_map(n)) == quiver.dim(n));
}

TEST_CASE("coinvariants") {
  auto k_in_a3 = fixtures::k_in_a3<Q>();
  auto x = restrict_bimodule(k_in_a3.x, k_in_a3.emb);
  PowerTower<Q> tower(k_in_a3.emb);
  CHECK(coinvariants(x, tower.power(2)).quotient_dim == 5 * 16);

  // commutative B, X = M = B regular: X_B = B
  auto fx = fixtures::corpus_embeddings<Q>();
  auto sq = fx[3].emb;
  auto b = unit_bimodule(sq);
  CHECK(coinvariants(b, b).quotient_dim == 2);
  CHECK(commutator_quotient(b).quotient_dim == 2);

  // X = upper triangular over the diagonal, M = B: dim 2
  auto diag = fx[1].emb;
  auto xu = restrict_bimodule(fx[1].x, diag);
  CHECK(coinvariants(xu, unit_bimodule(diag)).quotient_dim == 2);
  CHECK(commutator_quotient(xu).quotient_dim == 2);
}
