#pragma once

// Exact ground fields: arbitrary-precision rationals and prime fields.

#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "relhh/errors.hpp"

namespace relhh {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

/// Residue modulo the prime installed by the innermost live `PrimeFieldScope`
/// on the current thread.
class Fp {
 public:
  Fp() = default;
  Fp(long long v);  // NOLINT(google-explicit-constructor): literals like Scalar(1)
  Fp(int v) : Fp(static_cast<long long>(v)) {}  // NOLINT

  static std::uint64_t modulus();

  std::uint64_t value() const { return v_; }

  Fp& operator+=(Fp o);
  Fp& operator-=(Fp o);
  Fp& operator*=(Fp o);
  Fp& operator/=(Fp o);
  Fp operator-() const;
  Fp inverse() const;

  friend Fp operator+(Fp a, Fp b) { return a += b; }
  friend Fp operator-(Fp a, Fp b) { return a -= b; }
  friend Fp operator*(Fp a, Fp b) { return a *= b; }
  friend Fp operator/(Fp a, Fp b) { return a /= b; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }
  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

 private:
  std::uint64_t v_ = 0;
};

/// Installs the modulus used by `Fp` arithmetic on this thread.
class PrimeFieldScope {
 public:
  explicit PrimeFieldScope(std::uint64_t p);
  ~PrimeFieldScope();
  PrimeFieldScope(const PrimeFieldScope&) = delete;
  PrimeFieldScope& operator=(const PrimeFieldScope&) = delete;

 private:
  std::uint64_t previous_;
};

bool is_prime(std::uint64_t n);

/// Parses "a", "-a" or "a/b" into a reduced rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

template <class S>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool characteristic_zero = true;
  static std::string name() { return "Q"; }
  static Rational from_rational(const Rational& q) { return q; }
  static std::string format(const Rational& q) { return to_string(q); }
};

template <>
struct FieldTraits<Fp> {
  static constexpr bool characteristic_zero = false;
  static std::string name() { return "Fp:" + std::to_string(Fp::modulus()); }
  static Fp from_rational(const Rational& q);
  static std::string format(Fp a) { return std::to_string(a.value()); }
};

}  // namespace relhh

namespace Eigen {

template <>
struct NumTraits<relhh::Fp> : GenericNumTraits<relhh::Fp> {
  using Real = relhh::Fp;
  using NonInteger = relhh::Fp;
  using Literal = relhh::Fp;
  using Nested = relhh::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
