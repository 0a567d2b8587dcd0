#include "relhh/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "relhh/invariants.hpp"
#include "relhh/io.hpp"

#ifndef RELHH_DEFAULT_CORPUS
#define RELHH_DEFAULT_CORPUS "corpus"
#endif

namespace relhh {

namespace {

struct Options {
  std::vector<std::string> inputs;
  bool corpus = false;
  std::string corpus_dir = RELHH_DEFAULT_CORPUS;
  int degree = 0;
  std::string field;
  std::string format = "table";
  bool corrupt = false;
};

struct Outcome {
  Json json;
  std::string table;
  int code = kExitOk;
};

std::vector<std::string> corpus_files(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError("--corpus", "corpus directory " + dir + " does not exist");
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<InputDocument> load(const Options& o) {
  std::vector<std::string> files = o.inputs;
  if (o.corpus) {
    const auto c = corpus_files(o.corpus_dir);
    files.insert(files.end(), c.begin(), c.end());
  }
  std::vector<InputDocument> docs;
  for (const auto& f : files) {
    InputDocument d = read_input_file(f);
    if (d.name.empty()) d.name = std::filesystem::path(f).stem().string();
    if (o.degree != 0) {
      if (o.degree < 3) throw InputError("--degree", "N must be at least 3");
      d.bounds.degree = o.degree;
    }
    if (!o.field.empty()) d.field = parse_field(o.field);
    docs.push_back(std::move(d));
  }
  return docs;
}

/// Runs `body<S>` over the document's field.
template <template <class> class Body>
Outcome dispatch(const InputDocument& doc, const std::string& command) {
  const Provenance p = provenance_of(doc, command);
  if (doc.field.rational()) return Body<Rational>::run(doc, p);
  PrimeFieldScope scope(doc.field.prime);
  return Body<Fp>::run(doc, p);
}

Json envelope(const Provenance& p) { return Json{{"schema_version", kSchemaVersion}, {"provenance", to_json(p)}}; }

std::string header(const Provenance& p) {
  return p.command + " " + p.name + "  field " + p.field + "  N=" + std::to_string(p.bounds.degree) + "  sha256 " +
         p.input_sha256.substr(0, 16) + "\n";
}

Outcome homology_outcome(const Provenance& p, const std::string& what, const std::vector<int>& dims) {
  Outcome o;
  o.json = envelope(p);
  o.json["homology"] = dims;
  std::ostringstream t;
  t << header(p) << std::setw(3) << "m" << "  dim " << what << "\n";
  for (std::size_t m = 0; m < dims.size(); ++m) t << std::setw(3) << m << "  " << dims[m] << "\n";
  o.table = t.str();
  return o;
}

template <class S>
struct HH {
  static Outcome run(const InputDocument& doc, const Provenance& p) {
    const Problem<S> pr = build_problem<S>(doc);
    const auto c = hochschild_complex(*pr.emb.ambient, pr.x, doc.bounds.degree - 1);
    std::vector<int> dims;
    for (int m = 0; m <= doc.bounds.degree - 2; ++m) dims.push_back(homology_dim(c, m));
    return homology_outcome(p, "H_m(A,X)", dims);
  }
};

template <class S>
struct RelHH {
  static Outcome run(const InputDocument& doc, const Provenance& p) {
    const Problem<S> pr = build_problem<S>(doc);
    const auto c = relative_chain_complex(pr.emb, pr.x, doc.bounds.degree - 1);
    std::vector<int> dims;
    for (int m = 0; m <= doc.bounds.degree - 2; ++m) dims.push_back(homology_dim(c.complex, m));
    return homology_outcome(p, "H_m(A|B,X)", dims);
  }
};

template <class S>
struct JZ {
  static Outcome run(const InputDocument& doc, const Provenance& p) {
    const Problem<S> pr = build_problem<S>(doc);
    const JZReport r = jz(pr.emb, pr.x, doc.bounds);
    Outcome o;
    o.json = jz_document(r, p);
    o.table = jz_table(r, p);
    o.code = r.identities_hold() && r.degree_one.holds ? kExitOk : kExitInvariantFailure;
    return o;
  }
};

template <class S>
struct Tor {
  static Outcome run(const InputDocument& doc, const Provenance& p) {
    const Problem<S> pr = build_problem<S>(doc);
    const Bounds& b = doc.bounds;
    JZReport partial;
    partial.hypothesis = check_hypothesis(pr.emb, b.nmax, b.starmax);
    partial.e1 = e1_page(pr.emb, pr.x, b.pmax, b.qmax, partial.hypothesis.holds);
    const Json full = to_json(partial);
    Outcome o;
    o.json = envelope(p);
    o.json["hypothesis"] = full["hypothesis"];
    o.json["e1"] = full["e1"];
    std::ostringstream t;
    t << header(p) << "dim Tor^B_*(A/B, (A/B)^{⊗_B n}), rows n = 1.." << b.nmax << ", columns * = 1.." << b.starmax
      << "\n";
    for (std::size_t n = 0; n < partial.hypothesis.dims.size(); ++n) {
      t << std::setw(3) << n + 1 << " ";
      for (int d : partial.hypothesis.dims[n]) t << std::setw(5) << d;
      t << "\n";
    }
    t << "hypothesis: " << (partial.hypothesis.holds ? "holds" : "fails") << "  [" << partial.hypothesis.note << "]\n";
    t << "E1 cells (p, q): Tor_{p+q}^{B^e}, Tor_q^{B^e}, H_q(G_p/G_{p-1})\n";
    for (const auto& c : partial.e1.cells) {
      t << "  (" << c.p << ", " << c.q << "): " << c.tor_total << ", " << c.tor_shifted << ", " << c.quotient_homology
        << "\n";
    }
    o.table = t.str();
    return o;
  }
};

template <class S>
struct Nilpotency {
  static Outcome run(const InputDocument& doc, const Provenance& p) {
    const Problem<S> pr = build_problem<S>(doc);
    const PowerTower<S> tower(pr.emb);
    const NilpotencyReport n = nilpotency_index(tower, doc.bounds.cap);
    Outcome o;
    o.json = envelope(p);
    o.json["dims"] = n.dims;
    o.json["index"] = n.index ? Json(*n.index) : Json(nullptr);
    o.json["cap"] = n.cap;
    std::ostringstream t;
    t << header(p) << "dim (A/B)^{⊗_B n}, n = 1.." << n.cap << ":";
    for (int d : n.dims) t << " " << d;
    t << "\nnilpotency index: " << (n.index ? std::to_string(*n.index) : "not reached by cap " + std::to_string(n.cap))
      << "\n";
    if constexpr (FieldTraits<S>::characteristic_zero) {
      const auto env = enveloping(*pr.emb.sub);
      const PdEstimate pd = pd_upper(env, as_left_enveloping(tower.quotient(), env), doc.bounds.cap);
      o.json["pd"] = Json{{"value", pd.value ? Json(*pd.value) : Json(nullptr)}, {"tor_dims", pd.tor_dims},
                          {"cap", pd.cap}, {"note", pd.note}};
      t << "pd_{B^e}(A/B): " << (pd.value ? std::to_string(*pd.value) : "not reached by cap") << "  [" << pd.note
        << "]\n";
    } else {
      o.json["pd"] = nullptr;
      t << "pd_{B^e}(A/B): not computed over a prime field\n";
    }
    o.table = t.str();
    return o;
  }
};

int report(const std::vector<Outcome>& outcomes, const Options& o, std::ostream& out) {
  int code = kExitOk;
  for (const auto& r : outcomes) code = std::max(code, r.code);
  if (o.format == "json") {
    if (outcomes.size() == 1) {
      out << outcomes[0].json.dump(2) << "\n";
    } else {
      Json all = Json::array();
      for (const auto& r : outcomes) all.push_back(r.json);
      out << all.dump(2) << "\n";
    }
  } else {
    for (std::size_t i = 0; i < outcomes.size(); ++i) out << (i ? "\n" : "") << outcomes[i].table;
  }
  return code;
}

template <template <class> class Body>
int run_command(const Options& o, const std::string& command, std::ostream& out) {
  const auto docs = load(o);
  if (docs.empty()) throw InputError("--input", "no input given (use --input <file> or --corpus)");
  std::vector<Outcome> outcomes;
  for (const auto& d : docs) outcomes.push_back(dispatch<Body>(d, command));
  return report(outcomes, o, out);
}

int run_check(const Options& o, std::ostream& out) {
  const auto docs = load(o);
  CheckOptions co;
  co.corrupt_differential = o.corrupt;
  std::vector<CheckResult> results;
  for (const auto& d : docs) {
    auto r = run_checks(d, co);
    results.insert(results.end(), r.begin(), r.end());
  }
  const auto failed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.pass; });
  if (o.format == "json") {
    Json arr = Json::array();
    for (const auto& r : results) {
      arr.push_back(Json{{"input", r.input}, {"check", r.name}, {"pass", r.pass}, {"witness", r.witness}});
    }
    out << Json{{"schema_version", kSchemaVersion}, {"checks", arr}, {"failed", failed}}.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      out << (r.pass ? "PASS " : "FAIL ") << r.input << " " << r.name;
      if (!r.pass) out << ": " << r.witness;
      out << "\n";
    }
    if (results.empty()) {
      out << "warning: 0 checks (no inputs)\n";
    } else {
      out << results.size() << " checks, " << failed << " failed\n";
    }
  }
  return failed == 0 ? kExitOk : kExitInvariantFailure;
}

bool is_input_error(const std::exception& e) {
  return dynamic_cast<const InputError*>(&e) || dynamic_cast<const DimensionMismatch*>(&e) ||
         dynamic_cast<const NotAssociative*>(&e) || dynamic_cast<const NotUnital*>(&e) ||
         dynamic_cast<const NotClosed*>(&e) || dynamic_cast<const UnitNotContained*>(&e) ||
         dynamic_cast<const InvalidBimodule*>(&e) || dynamic_cast<const InfiniteDimensional*>(&e) ||
         dynamic_cast<const DegreeBoundTooSmall*>(&e) || dynamic_cast<const DegreeOutOfRange*>(&e) ||
         dynamic_cast<const UnsupportedField*>(&e) || dynamic_cast<const NotASection*>(&e) ||
         dynamic_cast<const std::invalid_argument*>(&e);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hochschild homology of algebra extensions and the Jacobi-Zariski sequence", "relhh"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", o.inputs, "input JSON document")->check(CLI::ExistingFile);
    sub->add_flag("--corpus", o.corpus, "run over every document of the shipped corpus");
    sub->add_option("--corpus-dir", o.corpus_dir, "corpus directory")->check(CLI::ExistingDirectory);
    sub->add_option("--degree", o.degree, "degree bound N (complexes through degree N-1, report up to N-2)");
    sub->add_option("--field", o.field, "Q or Fp:<p>, overriding the document");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"table", "json"}));
  };
  CLI::App* hh = app.add_subcommand("hh", "Hochschild homology H_m(A,X), m = 0..N-2");
  CLI::App* rel = app.add_subcommand("rel-hh", "relative Hochschild homology H_m(A|B,X), m = 0..N-2");
  CLI::App* jzc = app.add_subcommand("jz", "the long sequence with gap, E1 page and verdicts");
  CLI::App* tor = app.add_subcommand("tor", "Tor tables and the Tor-vanishing hypothesis");
  CLI::App* nil = app.add_subcommand("nilpotency", "tensor nilpotency index and projective dimension estimate of A/B");
  CLI::App* chk = app.add_subcommand("check", "run every invariant suite");
  for (CLI::App* s : {hh, rel, jzc, tor, nil, chk}) common(s);
  chk->add_flag("--corrupt-differential", o.corrupt)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  try {
    if (*hh) return run_command<HH>(o, "hh", out);
    if (*rel) return run_command<RelHH>(o, "rel-hh", out);
    if (*jzc) return run_command<JZ>(o, "jz", out);
    if (*tor) return run_command<Tor>(o, "tor", out);
    if (*nil) return run_command<Nilpotency>(o, "nilpotency", out);
    return run_check(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e) ? kExitInputError : kExitInvariantFailure;
  }
}

}  // namespace relhh
