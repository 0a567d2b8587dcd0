#pragma once

// Exact sparse linear algebra over a field: ranks, kernels, row spaces,
// subspaces with reduced bases, and quotient spaces.
//
// Conventions: a linear map V -> W is a (dim W) x (dim V) matrix acting on
// column vectors; a family of vectors is stored as the rows of a matrix.

#include <Eigen/Sparse>

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "relhh/errors.hpp"
#include "relhh/scalar.hpp"

namespace relhh {

template <class S>
using SparseMatrix = Eigen::SparseMatrix<S, Eigen::RowMajor, int>;
template <class S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using DenseVector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Triplets = std::vector<Eigen::Triplet<S, int>>;

template <class S>
struct Entry {
  int col;
  S val;
};
template <class S>
using SparseRow = std::vector<Entry<S>>;

// ---------------------------------------------------------------------------
// Construction helpers

template <class S>
void prune_zeros(SparseMatrix<S>& m) {
  m.prune([](const Eigen::Index&, const Eigen::Index&, const S& v) { return v != S(0); });
}

template <class S>
SparseMatrix<S> from_triplets(int rows, int cols, const Triplets<S>& triplets) {
  SparseMatrix<S> m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  prune_zeros(m);
  m.makeCompressed();
  return m;
}

template <class S>
SparseMatrix<S> identity(int n) {
  SparseMatrix<S> m(n, n);
  m.setIdentity();
  return m;
}

template <class S>
SparseMatrix<S> zero_matrix(int rows, int cols) {
  SparseMatrix<S> m(rows, cols);
  m.makeCompressed();
  return m;
}

template <class S>
SparseMatrix<S> transpose(const SparseMatrix<S>& m) {
  SparseMatrix<S> t = m.transpose();
  t.makeCompressed();
  return t;
}

template <class S>
SparseMatrix<S> product(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  SparseMatrix<S> c = a * b;
  prune_zeros(c);
  c.makeCompressed();
  return c;
}

template <class S, class... Rest>
SparseMatrix<S> product(const SparseMatrix<S>& a, const SparseMatrix<S>& b, const Rest&... rest) {
  return product(product(a, b), rest...);
}

template <class S>
SparseMatrix<S> difference(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("difference of unequal shapes");
  SparseMatrix<S> c = a - b;
  prune_zeros(c);
  c.makeCompressed();
  return c;
}

template <class S>
SparseMatrix<S> sum(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("sum of unequal shapes");
  SparseMatrix<S> c = a + b;
  prune_zeros(c);
  c.makeCompressed();
  return c;
}

template <class S>
SparseMatrix<S> scaled(const SparseMatrix<S>& m, const S& c) {
  SparseMatrix<S> r = m * c;
  prune_zeros(r);
  r.makeCompressed();
  return r;
}

template <class S>
bool is_zero(const SparseMatrix<S>& m) {
  for (int r = 0; r < m.outerSize(); ++r) {
    for (typename SparseMatrix<S>::InnerIterator it(m, r); it; ++it) {
      if (it.value() != S(0)) return false;
    }
  }
  return true;
}

template <class S>
bool equal(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && is_zero(difference(a, b));
}

template <class S>
bool is_identity(const SparseMatrix<S>& m) {
  return m.rows() == m.cols() && equal(m, identity<S>(static_cast<int>(m.rows())));
}

/// First nonzero entry (row, col) of m, if any.
template <class S>
std::optional<std::pair<int, int>> first_nonzero(const SparseMatrix<S>& m) {
  for (int r = 0; r < m.outerSize(); ++r) {
    for (typename SparseMatrix<S>::InnerIterator it(m, r); it; ++it) {
      if (it.value() != S(0)) return std::make_pair(static_cast<int>(it.row()), static_cast<int>(it.col()));
    }
  }
  return std::nullopt;
}

template <class S>
SparseMatrix<S> to_sparse(const DenseMatrix<S>& d) {
  Triplets<S> t;
  for (int i = 0; i < d.rows(); ++i) {
    for (int j = 0; j < d.cols(); ++j) {
      if (d(i, j) != S(0)) t.emplace_back(i, j, d(i, j));
    }
  }
  return from_triplets<S>(static_cast<int>(d.rows()), static_cast<int>(d.cols()), t);
}

template <class S>
DenseMatrix<S> to_dense(const SparseMatrix<S>& m) {
  DenseMatrix<S> d = DenseMatrix<S>::Zero(m.rows(), m.cols());
  for (int r = 0; r < m.outerSize(); ++r) {
    for (typename SparseMatrix<S>::InnerIterator it(m, r); it; ++it) d(it.row(), it.col()) = it.value();
  }
  return d;
}

template <class S>
std::vector<SparseRow<S>> rows_of(const SparseMatrix<S>& m) {
  std::vector<SparseRow<S>> rows(m.rows());
  for (int r = 0; r < m.outerSize(); ++r) {
    for (typename SparseMatrix<S>::InnerIterator it(m, r); it; ++it) {
      if (it.value() != S(0)) rows[r].push_back({static_cast<int>(it.col()), it.value()});
    }
  }
  return rows;
}

template <class S>
SparseMatrix<S> from_rows(const std::vector<SparseRow<S>>& rows, int cols) {
  Triplets<S> t;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& e : rows[r]) t.emplace_back(static_cast<int>(r), e.col, e.val);
  }
  return from_triplets<S>(static_cast<int>(rows.size()), cols, t);
}

/// Stacks the rows of a on top of the rows of b.
template <class S>
SparseMatrix<S> vstack(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack of unequal widths");
  auto rows = rows_of(a);
  auto more = rows_of(b);
  rows.insert(rows.end(), more.begin(), more.end());
  return from_rows(rows, static_cast<int>(a.cols()));
}

/// Kronecker product a ⊗ b with row index i*rows(b)+k and column j*cols(b)+l.
template <class S>
SparseMatrix<S> kron(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  Triplets<S> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros()) * static_cast<std::size_t>(b.nonZeros()));
  for (int i = 0; i < a.outerSize(); ++i) {
    for (typename SparseMatrix<S>::InnerIterator ia(a, i); ia; ++ia) {
      for (int k = 0; k < b.outerSize(); ++k) {
        for (typename SparseMatrix<S>::InnerIterator ib(b, k); ib; ++ib) {
          t.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()),
                         static_cast<int>(ia.col() * b.cols() + ib.col()), ia.value() * ib.value());
        }
      }
    }
  }
  return from_triplets<S>(static_cast<int>(a.rows() * b.rows()), static_cast<int>(a.cols() * b.cols()), t);
}

// ---------------------------------------------------------------------------
// Elimination

namespace detail {

/// row - row[0].val * pivot, where pivot is monic with the same leading column.
/// The leading entry cancels and is dropped.
template <class S>
SparseRow<S> eliminate_lead(const SparseRow<S>& row, const SparseRow<S>& pivot) {
  const S factor = row[0].val;
  SparseRow<S> out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 1, j = 1;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].col < pivot[j].col)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].col < row[i].col) {
      out.push_back({pivot[j].col, -(factor * pivot[j].val)});
      ++j;
    } else {
      S v = row[i].val - factor * pivot[j].val;
      if (v != S(0)) out.push_back({row[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

template <class S>
void make_monic(SparseRow<S>& row) {
  const S inv = S(1) / row[0].val;
  row[0].val = S(1);
  for (std::size_t k = 1; k < row.size(); ++k) row[k].val *= inv;
}

/// Fraction-free reduction of integer rows: p_lead * row - r_lead * pivot,
/// divided by the content of the result.
inline SparseRow<Integer> eliminate_lead_integer(const SparseRow<Integer>& row, const SparseRow<Integer>& pivot) {
  const Integer& a = pivot[0].val;
  const Integer& b = row[0].val;
  const Integer g = boost::multiprecision::gcd(a, b);
  const Integer ra = a / g;  // multiplies row
  const Integer rb = b / g;  // multiplies pivot
  SparseRow<Integer> out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 1, j = 1;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].col < pivot[j].col)) {
      out.push_back({row[i].col, ra * row[i].val});
      ++i;
    } else if (i == row.size() || pivot[j].col < row[i].col) {
      out.push_back({pivot[j].col, -(rb * pivot[j].val)});
      ++j;
    } else {
      Integer v = ra * row[i].val - rb * pivot[j].val;
      if (v != 0) out.push_back({row[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  if (!out.empty()) {
    Integer content = abs(out[0].val);
    for (std::size_t k = 1; k < out.size() && content != 1; ++k) content = boost::multiprecision::gcd(content, out[k].val);
    if (content != 1) {
      for (auto& e : out) e.val /= content;
    }
  }
  return out;
}

inline SparseRow<Integer> primitive_integer_row(const SparseRow<Rational>& row) {
  Integer l = 1;
  for (const auto& e : row) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(e.val));
  SparseRow<Integer> out;
  out.reserve(row.size());
  Integer content = 0;
  for (const auto& e : row) {
    Integer v = boost::multiprecision::numerator(e.val) * (l / boost::multiprecision::denominator(e.val));
    content = content == 0 ? abs(v) : boost::multiprecision::gcd(content, v);
    out.push_back({e.col, std::move(v)});
  }
  if (content > 1) {
    for (auto& e : out) e.val /= content;
  }
  return out;
}

}  // namespace detail

/// Incrementally built row-echelon basis with monic pivot rows.
template <class S>
class EchelonBasis {
 public:
  explicit EchelonBasis(int ncols) : ncols_(ncols), pivot_row_(ncols, -1) {}

  int cols() const { return ncols_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Reduces `row` (sorted by column) against the basis; keeps it if it is
  /// independent. Returns whether the rank grew.
  bool insert(SparseRow<S> row) {
    while (!row.empty()) {
      const int k = pivot_row_[row[0].col];
      if (k < 0) break;
      row = detail::eliminate_lead(row, rows_[k]);
    }
    if (row.empty()) return false;
    detail::make_monic(row);
    pivot_row_[row[0].col] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }

  /// Whether `row` (sorted by column) lies in the span, without storing it.
  bool contains(SparseRow<S> row) const {
    while (!row.empty()) {
      const int k = pivot_row_[row[0].col];
      if (k < 0) return false;
      row = detail::eliminate_lead(row, rows_[k]);
    }
    return true;
  }

  /// Reduced row-echelon rows, sorted by pivot column.
  std::vector<SparseRow<S>> reduced_rows() const {
    std::vector<int> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return rows_[a][0].col < rows_[b][0].col; });
    std::vector<int> position(rows_.size());
    for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = static_cast<int>(p);
    std::vector<SparseRow<S>> out(rows_.size());
    std::vector<S> acc(ncols_, S(0));
    std::vector<char> touched(ncols_, 0);
    std::vector<int> touched_cols;
    // Back substitution from the last pivot; already reduced rows carry no
    // other pivot columns, so each subtraction only touches free columns.
    for (int pos = static_cast<int>(order.size()) - 1; pos >= 0; --pos) {
      const SparseRow<S>& row = rows_[order[pos]];
      touched_cols.clear();
      auto touch = [&](int c) {
        if (!touched[c]) {
          touched[c] = 1;
          touched_cols.push_back(c);
        }
      };
      for (const auto& e : row) {
        touch(e.col);
        acc[e.col] += e.val;
      }
      for (std::size_t k = 1; k < row.size(); ++k) {
        const int c = row[k].col;
        const int pr = pivot_row_[c];
        if (pr < 0) continue;
        const S factor = acc[c];
        if (factor == S(0)) continue;
        const SparseRow<S>& red = out[position[pr]];
        for (const auto& e : red) {
          touch(e.col);
          acc[e.col] -= factor * e.val;
        }
      }
      std::sort(touched_cols.begin(), touched_cols.end());
      SparseRow<S> reduced;
      for (int c : touched_cols) {
        if (acc[c] != S(0)) reduced.push_back({c, acc[c]});
        acc[c] = S(0);
        touched[c] = 0;
      }
      out[pos] = std::move(reduced);
    }
    return out;
  }

 private:
  int ncols_;
  std::vector<int> pivot_row_;
  std::vector<SparseRow<S>> rows_;
};

/// A subspace of S^n given by a basis with designated coordinate columns:
/// basis(i, pivots[i]) == 1 and basis(j, pivots[i]) == 0 for j != i. Reduced
/// row-echelon bases and kernel bases built from free columns both qualify.
template <class S>
class Subspace {
 public:
  Subspace() = default;
  Subspace(int ambient_dim, SparseMatrix<S> basis, std::vector<int> pivots)
      : ambient_dim_(ambient_dim), basis_(std::move(basis)), pivots_(std::move(pivots)), position_(ambient_dim, -1) {
    for (std::size_t i = 0; i < pivots_.size(); ++i) position_[pivots_[i]] = static_cast<int>(i);
  }

  static Subspace zero(int ambient_dim) { return Subspace(ambient_dim, zero_matrix<S>(0, ambient_dim), {}); }
  static Subspace whole(int ambient_dim) {
    std::vector<int> piv(ambient_dim);
    std::iota(piv.begin(), piv.end(), 0);
    return Subspace(ambient_dim, identity<S>(ambient_dim), piv);
  }

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(pivots_.size()); }
  const SparseMatrix<S>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  /// Coordinates (one row per input row) of vectors known to lie in the
  /// subspace; nullopt if any of them does not.
  std::optional<SparseMatrix<S>> coordinates(const SparseMatrix<S>& vectors) const {
    if (vectors.cols() != ambient_dim_) throw DimensionMismatch("coordinates: vector length differs from ambient");
    Triplets<S> t;
    for (int r = 0; r < vectors.outerSize(); ++r) {
      for (typename SparseMatrix<S>::InnerIterator it(vectors, r); it; ++it) {
        const int p = position_[it.col()];
        if (p >= 0) t.emplace_back(r, p, it.value());
      }
    }
    SparseMatrix<S> coords = from_triplets<S>(static_cast<int>(vectors.rows()), dim(), t);
    if (!equal(product(coords, basis_), vectors)) return std::nullopt;
    return coords;
  }

  /// Index of the first row of `vectors` outside the subspace, or -1.
  int first_outside(const SparseMatrix<S>& vectors) const {
    for (int r = 0; r < vectors.rows(); ++r) {
      SparseMatrix<S> row = vectors.middleRows(r, 1);
      if (!coordinates(row)) return r;
    }
    return -1;
  }

  bool contains(const SparseMatrix<S>& vectors) const { return coordinates(vectors).has_value(); }

 private:
  int ambient_dim_ = 0;
  SparseMatrix<S> basis_;
  std::vector<int> pivots_;
  std::vector<int> position_;
};

namespace detail {

template <class S>
std::vector<int> rows_by_length(const std::vector<SparseRow<S>>& rows) {
  std::vector<int> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rows[a].size() < rows[b].size(); });
  return order;
}

template <class S>
int rank_by_field_elimination(std::vector<SparseRow<S>> rows, int ncols) {
  EchelonBasis<S> basis(ncols);
  for (int r : rows_by_length(rows)) {
    if (!rows[r].empty()) basis.insert(std::move(rows[r]));
  }
  return basis.rank();
}

inline int rank_fraction_free(const std::vector<SparseRow<Rational>>& rows, int ncols) {
  std::vector<int> pivot_row(ncols, -1);
  std::vector<SparseRow<Integer>> pivots;
  for (int r : rows_by_length(rows)) {
    if (rows[r].empty()) continue;
    SparseRow<Integer> row = primitive_integer_row(rows[r]);
    while (!row.empty()) {
      const int k = pivot_row[row[0].col];
      if (k < 0) break;
      row = eliminate_lead_integer(row, pivots[k]);
    }
    if (row.empty()) continue;
    pivot_row[row[0].col] = static_cast<int>(pivots.size());
    pivots.push_back(std::move(row));
  }
  return static_cast<int>(pivots.size());
}

}  // namespace detail

/// Exact rank. Over Q this runs fraction-free integer elimination.
template <class S>
int rank(const SparseMatrix<S>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Eliminate along the orientation with shorter rows.
  const bool use_transpose = m.cols() > m.rows();
  const SparseMatrix<S> oriented = use_transpose ? transpose(m) : m;
  auto rows = rows_of(oriented);
  if constexpr (std::is_same_v<S, Rational>) {
    return detail::rank_fraction_free(rows, static_cast<int>(oriented.cols()));
  } else {
    return detail::rank_by_field_elimination(std::move(rows), static_cast<int>(oriented.cols()));
  }
}

/// Row space of m with its reduced row-echelon basis.
template <class S>
Subspace<S> row_space(const SparseMatrix<S>& m) {
  EchelonBasis<S> basis(static_cast<int>(m.cols()));
  auto rows = rows_of(m);
  for (int r : detail::rows_by_length(rows)) {
    if (!rows[r].empty()) basis.insert(std::move(rows[r]));
  }
  auto reduced = basis.reduced_rows();
  std::vector<int> pivots;
  pivots.reserve(reduced.size());
  for (const auto& row : reduced) pivots.push_back(row[0].col);
  return Subspace<S>(static_cast<int>(m.cols()), from_rows(reduced, static_cast<int>(m.cols())), std::move(pivots));
}

/// Column space of m, i.e. the image of the map, as a subspace of the target.
template <class S>
Subspace<S> image(const SparseMatrix<S>& m) {
  return row_space(transpose(m));
}

/// Basis of {v : m v = 0}, one kernel vector per free column of the reduced
/// row-echelon form of m.
template <class S>
Subspace<S> kernel_basis(const SparseMatrix<S>& m) {
  const int n = static_cast<int>(m.cols());
  const Subspace<S> rs = row_space(m);
  std::vector<char> is_pivot(n, 0);
  for (int p : rs.pivots()) is_pivot[p] = 1;
  std::vector<int> free_cols;
  std::vector<int> free_pos(n, -1);
  for (int c = 0; c < n; ++c) {
    if (!is_pivot[c]) {
      free_pos[c] = static_cast<int>(free_cols.size());
      free_cols.push_back(c);
    }
  }
  std::vector<SparseRow<S>> kernel_rows(free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) kernel_rows[f].push_back({free_cols[f], S(1)});
  const auto& b = rs.basis();
  for (int r = 0; r < b.outerSize(); ++r) {
    const int p = rs.pivots()[r];
    for (typename SparseMatrix<S>::InnerIterator it(b, r); it; ++it) {
      if (it.col() == p) continue;
      kernel_rows[free_pos[it.col()]].push_back({p, -it.value()});
    }
  }
  for (auto& row : kernel_rows) {
    std::sort(row.begin(), row.end(), [](const Entry<S>& a, const Entry<S>& b2) { return a.col < b2.col; });
  }
  return Subspace<S>(n, from_rows(kernel_rows, n), std::move(free_cols));
}

/// Inverse of a square matrix; throws DimensionMismatch if it is singular.
template <class S>
SparseMatrix<S> inverse(const SparseMatrix<S>& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw DimensionMismatch("inverse of a non-square matrix");
  Triplets<S> t;
  for (int r = 0; r < m.outerSize(); ++r) {
    for (typename SparseMatrix<S>::InnerIterator it(m, r); it; ++it) t.emplace_back(r, static_cast<int>(it.col()), it.value());
    t.emplace_back(r, n + r, S(1));
  }
  const Subspace<S> rs = row_space(from_triplets<S>(n, 2 * n, t));
  for (int i = 0; i < n; ++i) {
    if (i >= rs.dim() || rs.pivots()[i] != i) throw DimensionMismatch("inverse of a singular matrix");
  }
  SparseMatrix<S> inv = rs.basis().rightCols(n);
  prune_zeros(inv);
  inv.makeCompressed();
  return inv;
}

/// Selects the given columns of m, in the given order.
template <class S>
SparseMatrix<S> select_columns(const SparseMatrix<S>& m, const std::vector<int>& cols) {
  Triplets<S> t;
  for (std::size_t k = 0; k < cols.size(); ++k) t.emplace_back(cols[k], static_cast<int>(k), S(1));
  return product(m, from_triplets<S>(static_cast<int>(m.cols()), static_cast<int>(cols.size()), t));
}

// ---------------------------------------------------------------------------
// Quotient spaces

/// ambient / span(relations). The quotient basis is the set of free columns of
/// the reduced relation basis, so the section is the coordinate inclusion of
/// those columns.
template <class S>
struct QuotientSpace {
  int ambient_dim = 0;
  Subspace<S> relations;
  int quotient_dim = 0;
  SparseMatrix<S> projection;  // quotient_dim x ambient_dim
  SparseMatrix<S> section;     // ambient_dim x quotient_dim
};

template <class S>
QuotientSpace<S> make_quotient(int ambient_dim, const SparseMatrix<S>& relations) {
  if (relations.cols() != ambient_dim) {
    throw DimensionMismatch("relations have " + std::to_string(relations.cols()) + " columns, ambient dimension is " +
                            std::to_string(ambient_dim));
  }
  QuotientSpace<S> q;
  q.ambient_dim = ambient_dim;
  q.relations = row_space(relations);
  std::vector<int> free_pos(ambient_dim, 0);
  for (int p : q.relations.pivots()) free_pos[p] = -1;
  int next = 0;
  for (int c = 0; c < ambient_dim; ++c) {
    if (free_pos[c] == 0) free_pos[c] = next++;
  }
  q.quotient_dim = next;
  Triplets<S> proj, sec;
  for (int c = 0; c < ambient_dim; ++c) {
    if (free_pos[c] >= 0) {
      proj.emplace_back(free_pos[c], c, S(1));
      sec.emplace_back(c, free_pos[c], S(1));
    }
  }
  const auto& b = q.relations.basis();
  for (int r = 0; r < b.outerSize(); ++r) {
    const int p = q.relations.pivots()[r];
    for (typename SparseMatrix<S>::InnerIterator it(b, r); it; ++it) {
      if (it.col() != p) proj.emplace_back(free_pos[it.col()], p, -it.value());
    }
  }
  q.projection = from_triplets<S>(q.quotient_dim, ambient_dim, proj);
  q.section = from_triplets<S>(ambient_dim, q.quotient_dim, sec);
  return q;
}

template <class S>
QuotientSpace<S> trivial_quotient(int ambient_dim) {
  return make_quotient<S>(ambient_dim, zero_matrix<S>(0, ambient_dim));
}

/// The map induced by f : src.ambient -> dst.ambient on the quotients, after
/// checking that f carries the src relations into the dst relations.
template <class S>
SparseMatrix<S> induced_on_quotient(const SparseMatrix<S>& f, const QuotientSpace<S>& src, const QuotientSpace<S>& dst) {
  if (f.cols() != src.ambient_dim || f.rows() != dst.ambient_dim) {
    throw DimensionMismatch("induced_on_quotient: map is " + std::to_string(f.rows()) + "x" +
                            std::to_string(f.cols()) + ", quotients need " + std::to_string(dst.ambient_dim) + "x" +
                            std::to_string(src.ambient_dim));
  }
  const SparseMatrix<S> projected = product(dst.projection, f);
  if (src.relations.dim() > 0) {
    const SparseMatrix<S> leak = product(projected, transpose(src.relations.basis()));
    if (auto at = first_nonzero(leak)) {
      throw WellDefinednessViolation("relation vector " + std::to_string(at->second) +
                                     " is mapped outside the target relation subspace (quotient coordinate " +
                                     std::to_string(at->first) + ")");
    }
  }
  return product(projected, src.section);
}

}  // namespace relhh
