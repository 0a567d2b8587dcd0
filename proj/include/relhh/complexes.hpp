#pragma once

// Bounded chain complexes of finite-dimensional spaces, chain maps, homology
// with explicit bases, the low-degree truncation and subquotient complexes.

#include <memory>
#include <string>
#include <vector>

#include "relhh/exactlin.hpp"

namespace relhh {

/// Degrees 0..top. d(n) maps degree n to degree n-1; d(0) is the zero map to
/// a zero space. Homology is only defined up to degree top-1.
template <class S>
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(std::vector<int> dims, std::vector<SparseMatrix<S>> differentials)
      : dims_(std::move(dims)), d_(std::move(differentials)) {
    if (dims_.empty()) throw DimensionMismatch("a chain complex needs at least degree 0");
    if (d_.size() + 1 == dims_.size()) d_.insert(d_.begin(), zero_matrix<S>(0, dims_[0]));
    if (d_.size() != dims_.size()) throw DimensionMismatch("one differential per degree expected");
    for (std::size_t n = 0; n < d_.size(); ++n) {
      const int rows = n == 0 ? 0 : dims_[n - 1];
      if (d_[n].rows() != rows || d_[n].cols() != dims_[n]) {
        throw DimensionMismatch("differential in degree " + std::to_string(n) + " has shape " +
                                std::to_string(d_[n].rows()) + "x" + std::to_string(d_[n].cols()) + ", expected " +
                                std::to_string(rows) + "x" + std::to_string(dims_[n]));
      }
    }
    for (std::size_t n = 2; n < d_.size(); ++n) {
      if (auto at = first_nonzero(product(d_[n - 1], d_[n]))) {
        throw ValidationError("d∘d != 0: d_" + std::to_string(n - 1) + " d_" + std::to_string(n) +
                              " has a nonzero entry at (" + std::to_string(at->first) + ", " +
                              std::to_string(at->second) + ")");
      }
    }
  }

  int top() const { return static_cast<int>(dims_.size()) - 1; }
  int dim(int n) const { return n < 0 || n > top() ? 0 : dims_[n]; }
  const std::vector<int>& dims() const { return dims_; }
  const SparseMatrix<S>& d(int n) const { return d_.at(n); }

 private:
  std::vector<int> dims_;
  std::vector<SparseMatrix<S>> d_;
};

template <class S>
void require_reported_degree(const ChainComplex<S>& c, int n) {
  if (n < 0 || n > c.top() - 1) {
    throw DegreeOutOfRange("homology in degree " + std::to_string(n) + " needs degree " + std::to_string(n + 1) +
                           "; the complex stops at " + std::to_string(c.top()));
  }
}

/// H_n with bases: cycles Z_n ⊆ C_n, and H_n as a quotient of cycle coordinates
/// by boundary coordinates.
template <class S>
struct Homology {
  int degree = 0;
  Subspace<S> cycles;
  int boundary_rank = 0;
  QuotientSpace<S> classes;
  int dim() const { return classes.quotient_dim; }
  /// Representative cycles of the homology basis, as columns in C_n.
  SparseMatrix<S> representatives() const { return product(transpose(cycles.basis()), classes.section); }
};

template <class S>
Homology<S> homology(const ChainComplex<S>& c, int n) {
  require_reported_degree(c, n);
  Homology<S> h;
  h.degree = n;
  h.cycles = n == 0 ? Subspace<S>::whole(c.dim(0)) : kernel_basis(c.d(n));
  auto coords = h.cycles.coordinates(transpose(c.d(n + 1)));
  if (!coords) throw ValidationError("boundaries are not cycles in degree " + std::to_string(n));
  h.classes = make_quotient<S>(h.cycles.dim(), *coords);
  h.boundary_rank = h.classes.relations.dim();
  return h;
}

/// dim H_n from ranks only.
template <class S>
int homology_dim(const ChainComplex<S>& c, int n) {
  require_reported_degree(c, n);
  return c.dim(n) - rank(c.d(n)) - rank(c.d(n + 1));
}

template <class S>
using ComplexPtr = std::shared_ptr<const ChainComplex<S>>;

/// f_n : source_n -> target_n commuting with the differentials, in degrees
/// 0..min(top).
template <class S>
class ChainMap {
 public:
  ChainMap(ComplexPtr<S> source, ComplexPtr<S> target, std::vector<SparseMatrix<S>> components)
      : source_(std::move(source)), target_(std::move(target)), f_(std::move(components)) {
    const int top = std::min(source_->top(), target_->top());
    if (static_cast<int>(f_.size()) != top + 1) throw DimensionMismatch("chain map needs one component per degree");
    for (int n = 0; n <= top; ++n) {
      if (f_[n].rows() != target_->dim(n) || f_[n].cols() != source_->dim(n)) {
        throw DimensionMismatch("chain map component " + std::to_string(n) + " has the wrong shape");
      }
    }
    for (int n = 1; n <= top; ++n) {
      if (auto at = first_nonzero(difference(product(target_->d(n), f_[n]), product(f_[n - 1], source_->d(n))))) {
        throw ValidationError("chain map square fails in degree " + std::to_string(n) + " at (" +
                              std::to_string(at->first) + ", " + std::to_string(at->second) + ")");
      }
    }
  }

  const ChainComplex<S>& source() const { return *source_; }
  const ChainComplex<S>& target() const { return *target_; }
  ComplexPtr<S> source_ptr() const { return source_; }
  ComplexPtr<S> target_ptr() const { return target_; }
  int top() const { return static_cast<int>(f_.size()) - 1; }
  const SparseMatrix<S>& operator[](int n) const { return f_.at(n); }

 private:
  ComplexPtr<S> source_, target_;
  std::vector<SparseMatrix<S>> f_;
};

/// H_n(f) in the bases of homology(source, n) and homology(target, n).
template <class S>
SparseMatrix<S> induced_map(const ChainMap<S>& f, const Homology<S>& hs, const Homology<S>& ht) {
  const SparseMatrix<S> image = product(f[hs.degree], hs.representatives());
  auto coords = ht.cycles.coordinates(transpose(image));
  if (!coords) throw ValidationError("chain map does not send cycles to cycles in degree " + std::to_string(hs.degree));
  return product(ht.classes.projection, transpose(*coords));
}

template <class S>
SparseMatrix<S> induced_map(const ChainMap<S>& f, int n) {
  require_reported_degree(f.source(), n);
  require_reported_degree(f.target(), n);
  return induced_map(f, homology(f.source(), n), homology(f.target(), n));
}

/// The complex with degree 1 replaced by Ker d_1 and degree 0 by 0; it has the
/// same homology in degrees >= 1.
template <class S>
struct Truncation {
  ChainComplex<S> complex;
  Subspace<S> degree_one;  // Ker d_1 inside the original degree 1
};

template <class S>
Truncation<S> truncate(const ChainComplex<S>& c) {
  if (c.top() < 1) throw DegreeOutOfRange("truncation needs degree 1");
  Truncation<S> t;
  t.degree_one = kernel_basis(c.d(1));
  std::vector<int> dims = c.dims();
  dims[0] = 0;
  dims[1] = t.degree_one.dim();
  std::vector<SparseMatrix<S>> d;
  d.push_back(zero_matrix<S>(0, 0));
  d.push_back(zero_matrix<S>(0, dims[1]));
  if (c.top() >= 2) {
    auto coords = t.degree_one.coordinates(transpose(c.d(2)));
    if (!coords) throw ValidationError("Im d_2 is not inside Ker d_1");
    d.push_back(transpose(*coords));
  }
  for (int n = 3; n <= c.top(); ++n) d.push_back(c.d(n));
  t.complex = ChainComplex<S>(std::move(dims), std::move(d));
  return t;
}

/// A chain map between the truncations induced by f.
template <class S>
std::vector<SparseMatrix<S>> truncate_components(const ChainMap<S>& f, const Truncation<S>& source,
                                                 const Truncation<S>& target) {
  std::vector<SparseMatrix<S>> out;
  out.push_back(zero_matrix<S>(0, 0));
  const SparseMatrix<S> image = product(f[1], transpose(source.degree_one.basis()));
  auto coords = target.degree_one.coordinates(transpose(image));
  if (!coords) throw ValidationError("map does not restrict to the degree-1 kernels");
  out.push_back(transpose(*coords));
  for (int n = 2; n <= f.top(); ++n) out.push_back(f[n]);
  return out;
}

/// Per degree n, big[n] ⊇ small[n] subspaces of ambient_n (given by their
/// bases); the result is the complex big/small with induced differentials,
/// in the quotient coordinates of `quotients[n]`.
template <class S>
struct Subquotient {
  ChainComplex<S> complex;
  std::vector<Subspace<S>> big;
  std::vector<QuotientSpace<S>> quotients;  // in coordinates of big[n]
};

template <class S>
Subquotient<S> subquotient_complex(const ChainComplex<S>& ambient, const std::vector<Subspace<S>>& big,
                                   const std::vector<Subspace<S>>& small) {
  const int top = ambient.top();
  if (static_cast<int>(big.size()) != top + 1 || static_cast<int>(small.size()) != top + 1) {
    throw DimensionMismatch("subquotient needs one subspace per degree");
  }
  Subquotient<S> sq;
  sq.big = big;
  std::vector<int> dims;
  for (int n = 0; n <= top; ++n) {
    if (big[n].ambient_dim() != ambient.dim(n) || small[n].ambient_dim() != ambient.dim(n)) {
      throw DimensionMismatch("subspace in degree " + std::to_string(n) + " lives in the wrong space");
    }
    auto coords = big[n].coordinates(small[n].basis());
    if (!coords) throw NotSubcomplex(n, big[n].first_outside(small[n].basis()), "small subspace is not inside big");
    sq.quotients.push_back(make_quotient<S>(big[n].dim(), *coords));
    dims.push_back(sq.quotients.back().quotient_dim);
  }
  std::vector<SparseMatrix<S>> d;
  d.push_back(zero_matrix<S>(0, dims[0]));
  for (int n = 1; n <= top; ++n) {
    const SparseMatrix<S> image_big = transpose(product(ambient.d(n), transpose(big[n].basis())));
    auto cb = big[n - 1].coordinates(image_big);
    if (!cb) throw NotSubcomplex(n, big[n - 1].first_outside(image_big), "d(big) leaves big");
    const SparseMatrix<S> image_small = transpose(product(ambient.d(n), transpose(small[n].basis())));
    if (!small[n - 1].contains(image_small)) {
      throw NotSubcomplex(n, small[n - 1].first_outside(image_small), "d(small) leaves small");
    }
    // d in big coordinates, then descended to the quotients
    d.push_back(induced_on_quotient(transpose(*cb), sq.quotients[n], sq.quotients[n - 1]));
  }
  sq.complex = ChainComplex<S>(std::move(dims), std::move(d));
  return sq;
}

}  // namespace relhh
