#include "relhh/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace relhh {

namespace {

void require_keys(const Json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw InputError(where.empty() ? "document" : where, "expected an object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw InputError(where.empty() ? item.key() : where + "." + item.key(), "unknown field");
    }
  }
}

const Json& required(const Json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where.empty() ? key : where + "." + key, "missing required field");
  return *it;
}

int get_int(const Json& j, const std::string& where, int lo, int hi) {
  if (!j.is_number_integer()) throw InputError(where, "expected an integer");
  const long long v = j.get<long long>();
  if (v < lo || v > hi) {
    throw InputError(where, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::string get_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where, "expected a string");
  return j.get<std::string>();
}

Rational get_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw InputError(where, "expected a rational string \"num/den\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(where, std::string("not a rational \"num/den\": ") + e.what());
  }
}

std::vector<Rational> get_vector(const Json& j, const std::string& where, int expected = -1) {
  if (!j.is_array()) throw InputError(where, "expected an array");
  if (expected >= 0 && static_cast<int>(j.size()) != expected) {
    throw InputError(where, "expected " + std::to_string(expected) + " entries, got " + std::to_string(j.size()));
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_rational(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

RationalMatrix get_square(const Json& j, const std::string& where, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw InputError(where, "expected a " + std::to_string(dim) + " x " + std::to_string(dim) + " matrix (list of rows)");
  }
  RationalMatrix m;
  for (int r = 0; r < dim; ++r) m.push_back(get_vector(j[r], where + "[" + std::to_string(r) + "]", dim));
  return m;
}

std::vector<std::string> get_strings(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

QuiverSpec parse_quiver(const Json& j) {
  const std::string where = "algebra.quiver";
  require_keys(j, where, {"vertices", "arrows", "relations", "path_cap"});
  QuiverSpec q;
  q.vertices = get_strings(required(j, "vertices", where), where + ".vertices");
  if (q.vertices.empty()) throw InputError(where + ".vertices", "at least one vertex is required");
  auto vertex = [&](const Json& v, const std::string& at) {
    const std::string name = get_string(v, at);
    for (std::size_t i = 0; i < q.vertices.size(); ++i) {
      if (q.vertices[i] == name) return static_cast<int>(i);
    }
    throw InputError(at, "unknown vertex '" + name + "'");
  };
  const Json& arrows = required(j, "arrows", where);
  if (!arrows.is_array()) throw InputError(where + ".arrows", "expected an array");
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const std::string at = where + ".arrows[" + std::to_string(a) + "]";
    require_keys(arrows[a], at, {"name", "source", "target"});
    q.arrows.push_back(Arrow{get_string(required(arrows[a], "name", at), at + ".name"),
                             vertex(required(arrows[a], "source", at), at + ".source"),
                             vertex(required(arrows[a], "target", at), at + ".target")});
  }
  if (j.contains("relations")) {
    const Json& rel = j["relations"];
    if (!rel.is_array()) throw InputError(where + ".relations", "expected an array of arrow-name paths");
    for (std::size_t r = 0; r < rel.size(); ++r) {
      q.relations.push_back(get_strings(rel[r], where + ".relations[" + std::to_string(r) + "]"));
    }
  }
  if (j.contains("path_cap")) q.path_cap = get_int(j["path_cap"], where + ".path_cap", 1, 64);
  return q;
}

AlgebraSpec parse_algebra(const Json& j) {
  require_keys(j, "algebra", {"labels", "mult", "unit", "quiver"});
  AlgebraSpec a;
  if (j.contains("quiver")) {
    for (const char* k : {"labels", "mult", "unit"}) {
      if (j.contains(k)) throw InputError(std::string("algebra.") + k, "not allowed together with algebra.quiver");
    }
    a.quiver = parse_quiver(j["quiver"]);
    return a;
  }
  a.labels = get_strings(required(j, "labels", "algebra"), "algebra.labels");
  const int n = static_cast<int>(a.labels.size());
  if (n == 0) throw InputError("algebra.labels", "an algebra needs at least one basis element");
  const Json& mult = required(j, "mult", "algebra");
  if (!mult.is_array()) throw InputError("algebra.mult", "expected an array of [i, j, k, coeff] entries");
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t e = 0; e < mult.size(); ++e) {
    const std::string at = "algebra.mult[" + std::to_string(e) + "]";
    if (!mult[e].is_array() || mult[e].size() != 4) throw InputError(at, "expected [i, j, k, coeff]");
    ProductEntry p;
    p.i = get_int(mult[e][0], at + "[0]", 0, n - 1);
    p.j = get_int(mult[e][1], at + "[1]", 0, n - 1);
    p.k = get_int(mult[e][2], at + "[2]", 0, n - 1);
    p.coeff = get_rational(mult[e][3], at + "[3]");
    if (!seen.emplace(p.i, p.j, p.k).second) throw InputError(at, "duplicate entry for (i, j, k)");
    a.mult.push_back(p);
  }
  a.unit = get_vector(required(j, "unit", "algebra"), "algebra.unit", n);
  return a;
}

BimoduleSpec parse_bimodule(const Json& j) {
  BimoduleSpec b;
  if (j.is_string()) {
    if (j.get<std::string>() != "regular") throw InputError("bimodule", "expected \"regular\" or an action object");
    return b;
  }
  require_keys(j, "bimodule", {"dim", "left", "right"});
  b.regular = false;
  b.dim = get_int(required(j, "dim", "bimodule"), "bimodule.dim", 0, 1 << 16);
  for (const char* side : {"left", "right"}) {
    const Json& ms = required(j, side, "bimodule");
    const std::string where = std::string("bimodule.") + side;
    if (!ms.is_array()) throw InputError(where, "expected one matrix per basis element of A");
    auto& out = std::string(side) == "left" ? b.left : b.right;
    for (std::size_t i = 0; i < ms.size(); ++i) out.push_back(get_square(ms[i], where + "[" + std::to_string(i) + "]", b.dim));
  }
  return b;
}

Json rational_json(const Rational& q) { return to_string(q); }

Json vector_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_json(q));
  return out;
}

Json bounds_json(const Bounds& b) {
  return Json{{"nmax", b.nmax}, {"starmax", b.starmax}, {"pmax", b.pmax}, {"qmax", b.qmax}, {"cap", b.cap}};
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> optional_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

Json verdict_json(const Verdict& v) { return Json{{"applicable", v.applicable}, {"holds", v.holds}, {"note", v.note}}; }

Verdict verdict_from(const Json& j) {
  Verdict v;
  v.applicable = j.at("applicable").get<bool>();
  v.holds = j.at("holds").get<bool>();
  v.note = j.at("note").get<std::string>();
  return v;
}

std::string line_column(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

FieldSpec parse_field(std::string_view text) {
  if (text == "Q") return FieldSpec{};
  if (text.substr(0, 3) == "Fp:") {
    const std::string digits(text.substr(3));
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 20) {
      const std::uint64_t p = std::stoull(digits);
      if (is_prime(p) && p < (1ULL << 62)) return FieldSpec{p};
      throw InputError("field", "modulus " + digits + " is not a prime below 2^62");
    }
  }
  throw InputError("field", "expected \"Q\" or \"Fp:<p>\", got \"" + std::string(text) + "\"");
}

InputDocument parse_input(const Json& j) {
  require_keys(j, "", {"schema_version", "name", "field", "algebra", "subalgebra", "bimodule", "degree", "bounds"});
  InputDocument doc;
  doc.schema_version = get_int(required(j, "schema_version", ""), "schema_version", 0, 1 << 20);
  if (doc.schema_version != kSchemaVersion) {
    throw InputError("schema_version", "unsupported version " + std::to_string(doc.schema_version) + " (expected " +
                                           std::to_string(kSchemaVersion) + ")");
  }
  if (j.contains("name")) doc.name = get_string(j["name"], "name");
  if (j.contains("field")) doc.field = parse_field(get_string(j["field"], "field"));
  doc.algebra = parse_algebra(required(j, "algebra", ""));
  const Json& sub = required(j, "subalgebra", "");
  if (!sub.is_array() || sub.empty()) throw InputError("subalgebra", "expected a non-empty list of coordinate vectors");
  const int n = doc.algebra.quiver ? -1 : static_cast<int>(doc.algebra.labels.size());
  for (std::size_t c = 0; c < sub.size(); ++c) doc.subalgebra.push_back(get_vector(sub[c], "subalgebra[" + std::to_string(c) + "]", n));
  if (j.contains("bimodule")) doc.bimodule = parse_bimodule(j["bimodule"]);
  if (j.contains("degree")) doc.bounds.degree = get_int(j["degree"], "degree", 3, 64);
  if (j.contains("bounds")) {
    const Json& b = j["bounds"];
    require_keys(b, "bounds", {"nmax", "starmax", "pmax", "qmax", "cap"});
    auto field = [&](const char* key, int& out) {
      if (b.contains(key)) out = get_int(b[key], std::string("bounds.") + key, 1, 64);
    };
    field("nmax", doc.bounds.nmax);
    field("starmax", doc.bounds.starmax);
    field("pmax", doc.bounds.pmax);
    field("qmax", doc.bounds.qmax);
    field("cap", doc.bounds.cap);
  }
  return doc;
}

InputDocument parse_input_text(std::string_view text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source, "invalid JSON at " + line_column(text, e.byte));
  }
  return parse_input(j);
}

InputDocument read_input_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_input_text(ss.str(), path);
}

Json to_json(const InputDocument& doc) {
  Json j;
  j["schema_version"] = doc.schema_version;
  j["name"] = doc.name;
  j["field"] = doc.field.name();
  Json a;
  if (doc.algebra.quiver) {
    const QuiverSpec& q = *doc.algebra.quiver;
    Json arrows = Json::array();
    for (const auto& ar : q.arrows) {
      arrows.push_back(Json{{"name", ar.name}, {"source", q.vertices[ar.source]}, {"target", q.vertices[ar.target]}});
    }
    a["quiver"] = Json{{"vertices", q.vertices}, {"arrows", arrows}, {"relations", q.relations}, {"path_cap", q.path_cap}};
  } else {
    a["labels"] = doc.algebra.labels;
    Json mult = Json::array();
    for (const auto& p : doc.algebra.mult) mult.push_back(Json{p.i, p.j, p.k, rational_json(p.coeff)});
    a["mult"] = mult;
    a["unit"] = vector_json(doc.algebra.unit);
  }
  j["algebra"] = a;
  Json sub = Json::array();
  for (const auto& v : doc.subalgebra) sub.push_back(vector_json(v));
  j["subalgebra"] = sub;
  if (doc.bimodule.regular) {
    j["bimodule"] = "regular";
  } else {
    auto mats = [](const std::vector<RationalMatrix>& ms) {
      Json out = Json::array();
      for (const auto& m : ms) {
        Json rows = Json::array();
        for (const auto& r : m) rows.push_back(vector_json(r));
        out.push_back(rows);
      }
      return out;
    };
    j["bimodule"] = Json{{"dim", doc.bimodule.dim}, {"left", mats(doc.bimodule.left)}, {"right", mats(doc.bimodule.right)}};
  }
  j["degree"] = doc.bounds.degree;
  j["bounds"] = bounds_json(doc.bounds);
  return j;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

std::string input_hash(const InputDocument& doc) { return sha256_hex(to_json(doc).dump()); }

// ---------------------------------------------------------------------------
// Reports

Provenance provenance_of(const InputDocument& doc, const std::string& command) {
  Provenance p;
  p.command = command;
  p.name = doc.name;
  p.input_sha256 = input_hash(doc);
  p.field = doc.field.name();
  p.bounds = doc.bounds;
  return p;
}

Json to_json(const Provenance& p) {
  return Json{{"command", p.command},   {"name", p.name},   {"input_sha256", p.input_sha256},
              {"tool_version", p.tool_version}, {"field", p.field}, {"degree", p.bounds.degree},
              {"bounds", bounds_json(p.bounds)}};
}

Provenance provenance_from_json(const Json& j) {
  Provenance p;
  p.command = j.at("command").get<std::string>();
  p.name = j.at("name").get<std::string>();
  p.input_sha256 = j.at("input_sha256").get<std::string>();
  p.tool_version = j.at("tool_version").get<std::string>();
  p.field = j.at("field").get<std::string>();
  p.bounds.degree = j.at("degree").get<int>();
  const Json& b = j.at("bounds");
  p.bounds.nmax = b.at("nmax").get<int>();
  p.bounds.starmax = b.at("starmax").get<int>();
  p.bounds.pmax = b.at("pmax").get<int>();
  p.bounds.qmax = b.at("qmax").get<int>();
  p.bounds.cap = b.at("cap").get<int>();
  return p;
}

Json to_json(const JZReport& r) {
  Json j;
  j["bound"] = r.bound;
  j["field"] = r.field;
  Json degrees = Json::array();
  for (const auto& d : r.degrees) {
    degrees.push_back(Json{{"m", d.m},
                           {"h_b", d.h_b},
                           {"h_a", d.h_a},
                           {"h_rel", d.h_rel},
                           {"rank_i", d.rank_i},
                           {"rank_k", d.rank_k},
                           {"ker_i", d.ker_i},
                           {"ker_k", d.ker_k},
                           {"gap", d.gap},
                           {"gap_homology", d.gap_homology},
                           {"gap_excess", d.gap_excess},
                           {"composite_zero", d.composite_zero},
                           {"gap_identity", optional_json(d.gap_identity)},
                           {"connecting_identity", optional_json(d.connecting_identity)},
                           {"i_matrix", d.i_matrix},
                           {"k_matrix", d.k_matrix}});
  }
  j["degrees"] = degrees;
  j["identities_hold"] = r.identities_hold();
  const HypothesisReport& h = r.hypothesis;
  j["hypothesis"] = Json{{"holds", h.holds},
                         {"nmax", h.nmax},
                         {"starmax", h.starmax},
                         {"witness", h.witness ? Json{h.witness->first, h.witness->second} : Json(nullptr)},
                         {"dims", h.dims},
                         {"note", h.note}};
  Json cells = Json::array();
  for (const auto& c : r.e1.cells) {
    cells.push_back(Json{{"p", c.p},
                         {"q", c.q},
                         {"tor_total", c.tor_total},
                         {"tor_shifted", c.tor_shifted},
                         {"quotient_homology", c.quotient_homology},
                         {"bar_checked", c.bar_checked}});
  }
  j["e1"] = Json{{"pmax", r.e1.pmax}, {"qmax", r.e1.qmax}, {"hypothesis", r.e1.hypothesis}, {"h0", r.e1.h0}, {"cells", cells}};
  j["flat"] = verdict_json(r.flat);
  j["degree_one"] = verdict_json(r.degree_one);
  Json bounded = verdict_json(r.bounded);
  bounded["nilpotency"] = optional_json(r.bounded.nilpotency);
  bounded["pd"] = optional_json(r.bounded.pd);
  bounded["supported"] = r.bounded.supported;
  j["bounded"] = bounded;
  const DegreeOneKernels& k = r.kernels;
  j["degree_one_kernels"] = Json{{"ker_b", k.ker_b},
                                 {"ker_a", k.ker_a},
                                 {"ker_rel", k.ker_rel},
                                 {"rank_iota", k.rank_iota},
                                 {"rank_kappa", k.rank_kappa}};
  return j;
}

JZReport report_from_json(const Json& j) {
  JZReport r;
  r.bound = j.at("bound").get<int>();
  r.field = j.at("field").get<std::string>();
  for (const auto& e : j.at("degrees")) {
    JZDegree d;
    d.m = e.at("m").get<int>();
    d.h_b = e.at("h_b").get<int>();
    d.h_a = e.at("h_a").get<int>();
    d.h_rel = e.at("h_rel").get<int>();
    d.rank_i = e.at("rank_i").get<int>();
    d.rank_k = e.at("rank_k").get<int>();
    d.ker_i = e.at("ker_i").get<int>();
    d.ker_k = e.at("ker_k").get<int>();
    d.gap = e.at("gap").get<int>();
    d.gap_homology = e.at("gap_homology").get<int>();
    d.gap_excess = e.at("gap_excess").get<int>();
    d.composite_zero = e.at("composite_zero").get<bool>();
    d.gap_identity = optional_from<bool>(e.at("gap_identity"));
    d.connecting_identity = optional_from<bool>(e.at("connecting_identity"));
    d.i_matrix = e.at("i_matrix").get<TextMatrix>();
    d.k_matrix = e.at("k_matrix").get<TextMatrix>();
    r.degrees.push_back(std::move(d));
  }
  const Json& h = j.at("hypothesis");
  r.hypothesis.holds = h.at("holds").get<bool>();
  r.hypothesis.nmax = h.at("nmax").get<int>();
  r.hypothesis.starmax = h.at("starmax").get<int>();
  if (!h.at("witness").is_null()) r.hypothesis.witness = std::make_pair(h["witness"][0].get<int>(), h["witness"][1].get<int>());
  r.hypothesis.dims = h.at("dims").get<std::vector<std::vector<int>>>();
  r.hypothesis.note = h.at("note").get<std::string>();
  const Json& e1 = j.at("e1");
  r.e1.pmax = e1.at("pmax").get<int>();
  r.e1.qmax = e1.at("qmax").get<int>();
  r.e1.hypothesis = e1.at("hypothesis").get<bool>();
  r.e1.h0 = e1.at("h0").get<std::vector<int>>();
  for (const auto& c : e1.at("cells")) {
    E1Cell cell;
    cell.p = c.at("p").get<int>();
    cell.q = c.at("q").get<int>();
    cell.tor_total = c.at("tor_total").get<int>();
    cell.tor_shifted = c.at("tor_shifted").get<int>();
    cell.quotient_homology = c.at("quotient_homology").get<int>();
    cell.bar_checked = c.at("bar_checked").get<bool>();
    r.e1.cells.push_back(cell);
  }
  r.flat = verdict_from(j.at("flat"));
  r.degree_one = verdict_from(j.at("degree_one"));
  const Json& b = j.at("bounded");
  static_cast<Verdict&>(r.bounded) = verdict_from(b);
  r.bounded.nilpotency = optional_from<int>(b.at("nilpotency"));
  r.bounded.pd = optional_from<int>(b.at("pd"));
  r.bounded.supported = b.at("supported").get<bool>();
  const Json& k = j.at("degree_one_kernels");
  r.kernels.ker_b = k.at("ker_b").get<int>();
  r.kernels.ker_a = k.at("ker_a").get<int>();
  r.kernels.ker_rel = k.at("ker_rel").get<int>();
  r.kernels.rank_iota = k.at("rank_iota").get<int>();
  r.kernels.rank_kappa = k.at("rank_kappa").get<int>();
  return r;
}

Json jz_document(const JZReport& r, const Provenance& p) {
  return Json{{"schema_version", kSchemaVersion}, {"provenance", to_json(p)}, {"report", to_json(r)}};
}

std::string jz_table(const JZReport& r, const Provenance& p) {
  std::ostringstream out;
  auto flag = [](const std::optional<bool>& f) -> std::string { return f ? (*f ? "yes" : "NO") : "-"; };
  out << "jz " << (p.name.empty() ? "(unnamed)" : p.name) << "  field " << r.field << "  N=" << r.bound << "  sha256 "
      << p.input_sha256.substr(0, 16) << "\n";
  out << std::setw(3) << "m" << std::setw(7) << "H(B)" << std::setw(7) << "H(A)" << std::setw(8) << "H(A|B)"
      << std::setw(6) << "rk I" << std::setw(6) << "rk K" << std::setw(6) << "gap" << std::setw(8) << "H(gap)"
      << std::setw(7) << "KI=0" << std::setw(6) << "(i)" << std::setw(6) << "(ii)" << "\n";
  for (const auto& d : r.degrees) {
    out << std::setw(3) << d.m << std::setw(7) << d.h_b << std::setw(7) << d.h_a << std::setw(8) << d.h_rel
        << std::setw(6) << d.rank_i << std::setw(6) << d.rank_k << std::setw(6) << d.gap << std::setw(8)
        << d.gap_homology << std::setw(7) << (d.composite_zero ? "yes" : "NO") << std::setw(6)
        << flag(d.gap_identity) << std::setw(6) << flag(d.connecting_identity) << "\n";
  }
  out << "identities: " << (r.identities_hold() ? "hold" : "FAIL") << "\n";
  out << "hypothesis Tor^B_*(A/B, (A/B)^n) = 0: " << (r.hypothesis.holds ? "holds" : "fails");
  if (r.hypothesis.witness) out << " at (n, *) = (" << r.hypothesis.witness->first << ", " << r.hypothesis.witness->second << ")";
  out << "  [" << r.hypothesis.note << "]\n";
  out << "E1 page (p, q): Tor_{p+q} Tor_q H_q(G_p/G_{p-1})";
  for (std::size_t i = 0; i < r.e1.cells.size(); ++i) {
    const E1Cell& c = r.e1.cells[i];
    if (c.q == 1) out << "\n  p=" << c.p << " (H_0=" << r.e1.h0[c.p - 1] << "):";
    out << "  (" << c.tor_total << "," << c.tor_shifted << "," << c.quotient_homology << ")";
  }
  out << "\n";
  auto verdict = [&](const char* name, const Verdict& v) {
    out << name << ": " << (!v.applicable ? "n/a" : v.holds ? "holds" : "FAILS") << "  [" << v.note << "]\n";
  };
  verdict("flat case", r.flat);
  verdict("bounded case", r.bounded);
  verdict("degree 1", r.degree_one);
  return out.str();
}

}  // namespace relhh
