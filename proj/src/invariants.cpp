#include "relhh/invariants.hpp"

#include <functional>
#include <random>

#include "relhh/relbar.hpp"

namespace relhh {

namespace {

class Suite {
 public:
  explicit Suite(std::string input) : input_(std::move(input)) {}

  /// Runs `body`, which returns an empty witness on success. Library errors
  /// become failures carrying the message.
  void run(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{input_, name, false, {}};
    try {
      r.witness = body();
      r.pass = r.witness.empty();
    } catch (const std::exception& e) {
      r.witness = e.what();
    }
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string input_;
  std::vector<CheckResult> results_;
};

template <class S>
SparseMatrix<S> alternative_section(const SubalgebraEmbedding<S>& emb, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> val(-3, 3);
  Triplets<S> t;
  for (int i = 0; i < emb.dim_b(); ++i) {
    for (int j = 0; j < emb.dim_s(); ++j) t.emplace_back(i, j, S(val(rng)));
  }
  return sum(emb.section, product(emb.inclusion, from_triplets<S>(emb.dim_b(), emb.dim_s(), t)));
}

template <class S>
std::vector<CheckResult> checks_for(const InputDocument& doc, const CheckOptions& options) {
  Suite suite(doc.name);
  const Problem<S> pr = build_problem<S>(doc);
  const SubalgebraEmbedding<S>& emb = pr.emb;
  const Bimodule<S>& x = pr.x;
  const Algebra<S>& a = *emb.ambient;
  const int n = doc.bounds.degree;

  suite.run("algebra.validation", [&] {
    make_algebra<S>(a.labels, a.mult, a.unit);
    make_algebra<S>(emb.sub->labels, emb.sub->mult, emb.sub->unit);
    make_bimodule<S>(emb.ambient, x.dim, x.left, x.right);
    make_subalgebra<S>(emb.ambient, emb.inclusion);
    return std::string();
  });
  suite.run("algebra.section", [&] {
    if (!is_identity(product(emb.projection, emb.section))) return std::string("π∘σ != 1");
    if (!is_zero(product(emb.projection, emb.inclusion))) return std::string("π∘inclusion != 0");
    return std::string();
  });
  suite.run("algebra.transported", [&] {
    const Bimodule<S> t = transported_S(emb);
    for (int i = 0; i < emb.dim_b(); ++i) {
      const SparseMatrix<S> b = emb.inclusion.middleCols(i, 1);
      // b.s - bs and s.b - sb lie in B
      const SparseMatrix<S> dl = difference(product(a.left_by(b), emb.section), product(emb.section, t.left[i]));
      const SparseMatrix<S> dr = difference(product(a.right_by(b), emb.section), product(emb.section, t.right[i]));
      if (!is_zero(product(emb.projection, dl)) || !is_zero(product(emb.projection, dr))) {
        return "transported action of basis element " + std::to_string(i) + " of B differs from the product modulo B";
      }
    }
    return std::string();
  });
  suite.run("relbar.resolution", [&] {
    RelativeResolution<S> res = relative_resolution(emb, n);
    if (options.corrupt_differential && res.top() >= 2 && res.d[2].rows() > 0 && res.d[2].cols() > 0) {
      Triplets<S> t{{0, 0, S(1)}};
      res.d[2] = sum(res.d[2], from_triplets<S>(static_cast<int>(res.d[2].rows()), static_cast<int>(res.d[2].cols()), t));
    }
    const ResolutionCheck c = check_resolution(res);
    return c.d_squared_zero && c.homotopy && c.augmentation_split ? std::string() : c.witness;
  });
  suite.run("relbar.section_independence", [&] {
    if (emb.dim_s() == 0 || emb.dim_b() == 0) return std::string();
    for (unsigned seed = 1; seed <= 3; ++seed) {
      if (!section_independence(emb, x, alternative_section(emb, seed), n - 1)) {
        return "differentials differ for alternative section " + std::to_string(seed);
      }
    }
    return std::string();
  });

  std::optional<FundamentalSequence<S>> fs;
  suite.run("fundamental.sequence", [&] {
    fs.emplace(build_fundamental(emb, x, n));
    return fs->checks.ok() ? std::string() : fs->checks.witness;
  });
  if (!fs) return suite.take();
  std::optional<GapComplex<S>> g;
  suite.run("fundamental.gap_dimensions", [&] {
    g.emplace(gap_complex(*fs));
    return std::string();
  });
  if (!g) return suite.take();
  suite.run("fundamental.filtration", [&] {
    filtration(*fs, *g);
    return std::string();
  });

  const JZReport r = jz(emb, x, *fs, *g, doc.bounds);
  auto per_degree = [&](const std::string& name, auto&& bad) {
    suite.run(name, [&] {
      std::string w;
      for (const auto& d : r.degrees) {
        const std::string msg = bad(d);
        if (!msg.empty()) w += (w.empty() ? "" : "; ") + ("m=" + std::to_string(d.m) + ": " + msg);
      }
      return w;
    });
  };
  per_degree("jz.composite_zero", [](const JZDegree& d) { return d.composite_zero ? std::string() : "K∘I != 0"; });
  per_degree("jz.gap_identity", [](const JZDegree& d) {
    if (!d.gap_identity || *d.gap_identity) return std::string();
    return "g=" + std::to_string(d.gap) + ", dim H(gap)=" + std::to_string(d.gap_homology);
  });
  per_degree("jz.connecting_identity", [&](const JZDegree& d) {
    if (!d.connecting_identity || *d.connecting_identity) return std::string();
    return "dim H(A|B)=" + std::to_string(d.h_rel) + ", rank K=" + std::to_string(d.rank_k) +
           ", dim Ker I_{m-1}=" + std::to_string(r.degrees[d.m - 2].ker_i);
  });
  suite.run("jz.degree_one", [&] { return r.degree_one.holds ? std::string() : r.degree_one.note; });
  if (r.flat.applicable) suite.run("jz.flat", [&] { return r.flat.holds ? std::string() : r.flat.note; });
  if (r.bounded.applicable) suite.run("jz.bounded", [&] { return r.bounded.holds ? std::string() : r.bounded.note; });
  if (r.hypothesis.holds && emb.dim_s() > 0) {
    suite.run("torlab.e1", [&] {
      if (r.e1.consistent_total()) return std::string();
      for (const auto& c : r.e1.cells) {
        if (c.quotient_homology != c.tor_total) {
          return "p=" + std::to_string(c.p) + ", q=" + std::to_string(c.q) + ": H_q=" +
                 std::to_string(c.quotient_homology) + ", Tor=" + std::to_string(c.tor_total);
        }
      }
      return std::string("H_0(G_p/G_{p-1}) != 0");
    });
  }
  if (emb.dim_b() == 1) {
    suite.run("hh.cross_pipeline", [&] {
      const auto abs = hochschild_complex(a, x, n - 1);
      const auto rel = relative_chain_complex(emb, x, n - 1);
      for (int m = 1; m <= n - 2; ++m) {
        const int h1 = homology_dim(abs, m), h2 = homology_dim(rel.complex, m);
        if (h1 != h2) {
          return "m=" + std::to_string(m) + ": H(A)=" + std::to_string(h1) + ", H(A|k)=" + std::to_string(h2);
        }
      }
      return std::string();
    });
  }
  return suite.take();
}

}  // namespace

std::vector<CheckResult> run_checks(const InputDocument& doc, const CheckOptions& options) {
  if (doc.field.rational()) return checks_for<Rational>(doc, options);
  PrimeFieldScope scope(doc.field.prime);
  return checks_for<Fp>(doc, options);
}

}  // namespace relhh
