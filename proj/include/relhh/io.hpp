#pragma once

// JSON input documents, field selection, and the machine-readable reports.
// Rationals travel as strings "num/den" (or "num"); every document carries
// "schema_version".

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "relhh/algebra.hpp"
#include "relhh/jzreport.hpp"

namespace relhh {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "relhh 1.0.0";

using Json = nlohmann::ordered_json;

/// Malformed input: names the offending field and the violated constraint.
class InputError : public Error {
 public:
  InputError(std::string field, std::string constraint)
      : Error(field + ": " + constraint), field_(std::move(field)), constraint_(std::move(constraint)) {}
  const std::string& field() const { return field_; }
  const std::string& constraint() const { return constraint_; }

 private:
  std::string field_, constraint_;
};

struct FieldSpec {
  std::uint64_t prime = 0;  // 0 for Q
  bool rational() const { return prime == 0; }
  std::string name() const { return rational() ? "Q" : "Fp:" + std::to_string(prime); }
  bool operator==(const FieldSpec&) const = default;
};

/// "Q" or "Fp:<p>" with p prime.
FieldSpec parse_field(std::string_view text);

using RationalMatrix = std::vector<std::vector<Rational>>;  // rows

struct QuiverSpec {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<std::vector<std::string>> relations;
  int path_cap = 16;
  bool operator==(const QuiverSpec&) const = default;
};

/// e_i e_j has coefficient `coeff` on e_k
struct ProductEntry {
  int i = 0, j = 0, k = 0;
  Rational coeff;
  bool operator==(const ProductEntry&) const = default;
};

struct AlgebraSpec {
  std::optional<QuiverSpec> quiver;
  std::vector<std::string> labels;
  std::vector<ProductEntry> mult;
  std::vector<Rational> unit;
  bool operator==(const AlgebraSpec&) const = default;
};

struct BimoduleSpec {
  bool regular = true;
  int dim = 0;
  std::vector<RationalMatrix> left, right;
  bool operator==(const BimoduleSpec&) const = default;
};

struct InputDocument {
  int schema_version = kSchemaVersion;
  std::string name;
  FieldSpec field;
  AlgebraSpec algebra;
  std::vector<std::vector<Rational>> subalgebra;  // coordinate vectors spanning B
  BimoduleSpec bimodule;
  Bounds bounds;
  bool operator==(const InputDocument&) const = default;
};

/// Parses JSON text; syntax errors report line and column.
InputDocument parse_input_text(std::string_view text, const std::string& source = "input");
InputDocument parse_input(const Json& j);
InputDocument read_input_file(const std::string& path);
Json to_json(const InputDocument& doc);

/// SHA-256 of the canonical serialisation, lowercase hex.
std::string input_hash(const InputDocument& doc);
std::string sha256_hex(std::string_view bytes);

template <class S>
struct Problem {
  SubalgebraEmbedding<S> emb;
  Bimodule<S> x;
};

namespace detail {

template <class S>
S convert(const Rational& q, const std::string& field) {
  try {
    return FieldTraits<S>::from_rational(q);
  } catch (const std::invalid_argument& e) {
    throw InputError(field, e.what());
  }
}

template <class S>
SparseMatrix<S> convert_matrix(const RationalMatrix& m, int rows, int cols, const std::string& field) {
  Triplets<S> t;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const S v = convert<S>(m[r][c], field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
      if (v != S(0)) t.emplace_back(r, c, v);
    }
  }
  return from_triplets<S>(rows, cols, t);
}

}  // namespace detail

/// Builds and validates A, B ⊂ A and X over the field S. Shape problems raise
/// InputError; algebraic validation errors propagate unchanged.
template <class S>
Problem<S> build_problem(const InputDocument& doc) {
  const AlgebraSpec& as = doc.algebra;
  AlgebraPtr<S> a;
  if (as.quiver) {
    try {
      a = from_quiver<S>(as.quiver->vertices, as.quiver->arrows, as.quiver->relations, as.quiver->path_cap);
    } catch (const std::invalid_argument& e) {
      throw InputError("algebra.quiver", e.what());
    }
  } else {
    const int n = static_cast<int>(as.labels.size());
    Triplets<S> t;
    for (std::size_t e = 0; e < as.mult.size(); ++e) {
      const ProductEntry& p = as.mult[e];
      const S c = detail::convert<S>(p.coeff, "algebra.mult[" + std::to_string(e) + "]");
      if (c != S(0)) t.emplace_back(p.k, p.i * n + p.j, c);
    }
    Triplets<S> u;
    for (int k = 0; k < n; ++k) {
      const S c = detail::convert<S>(as.unit[k], "algebra.unit[" + std::to_string(k) + "]");
      if (c != S(0)) u.emplace_back(k, 0, c);
    }
    a = make_algebra<S>(as.labels, from_triplets<S>(n, n * n, t), from_triplets<S>(n, 1, u));
  }
  const int n = a->dim;
  Triplets<S> inc;
  for (std::size_t c = 0; c < doc.subalgebra.size(); ++c) {
    const std::string where = "subalgebra[" + std::to_string(c) + "]";
    if (static_cast<int>(doc.subalgebra[c].size()) != n) {
      throw InputError(where, "expected " + std::to_string(n) + " coordinates (dim A)");
    }
    for (int r = 0; r < n; ++r) {
      const S v = detail::convert<S>(doc.subalgebra[c][r], where + "[" + std::to_string(r) + "]");
      if (v != S(0)) inc.emplace_back(r, static_cast<int>(c), v);
    }
  }
  SubalgebraEmbedding<S> emb =
      make_subalgebra<S>(a, from_triplets<S>(n, static_cast<int>(doc.subalgebra.size()), inc));
  if (doc.bimodule.regular) return Problem<S>{std::move(emb), regular_bimodule(a)};

  const BimoduleSpec& bs = doc.bimodule;
  auto side = [&](const std::vector<RationalMatrix>& ms, const std::string& name) {
    if (static_cast<int>(ms.size()) != n) {
      throw InputError("bimodule." + name, "expected one matrix per basis element of A (" + std::to_string(n) + ")");
    }
    std::vector<SparseMatrix<S>> out;
    for (int i = 0; i < n; ++i) {
      out.push_back(
          detail::convert_matrix<S>(ms[i], bs.dim, bs.dim, "bimodule." + name + "[" + std::to_string(i) + "]"));
    }
    return out;
  };
  auto left = side(bs.left, "left");
  auto right = side(bs.right, "right");
  return Problem<S>{std::move(emb), make_bimodule<S>(a, bs.dim, std::move(left), std::move(right))};
}

// ---------------------------------------------------------------------------
// Reports

struct Provenance {
  std::string command;
  std::string name;
  std::string input_sha256;
  std::string tool_version = kToolVersion;
  std::string field;
  Bounds bounds;
  bool operator==(const Provenance&) const = default;
};

Provenance provenance_of(const InputDocument& doc, const std::string& command);

Json to_json(const Provenance& p);
Provenance provenance_from_json(const Json& j);
Json to_json(const JZReport& r);
JZReport report_from_json(const Json& j);

/// {"schema_version", "provenance", "report"}
Json jz_document(const JZReport& r, const Provenance& p);

/// Human-readable table of a JZ report.
std::string jz_table(const JZReport& r, const Provenance& p);

}  // namespace relhh
