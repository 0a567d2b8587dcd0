#include "relhh/scalar.hpp"

#include <stdexcept>

namespace relhh {

namespace {

thread_local std::uint64_t current_modulus = 0;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

std::uint64_t require_modulus() {
  if (current_modulus == 0) throw std::logic_error("Fp arithmetic outside a PrimeFieldScope");
  return current_modulus;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Fp::Fp(long long v) {
  const std::uint64_t p = require_modulus();
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += static_cast<long long>(p);
  v_ = static_cast<std::uint64_t>(r);
}

std::uint64_t Fp::modulus() { return current_modulus; }

Fp& Fp::operator+=(Fp o) {
  const std::uint64_t p = require_modulus();
  v_ += o.v_;
  if (v_ >= p) v_ -= p;
  return *this;
}

Fp& Fp::operator-=(Fp o) {
  const std::uint64_t p = require_modulus();
  v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p - o.v_;
  return *this;
}

Fp& Fp::operator*=(Fp o) {
  v_ = mul_mod(v_, o.v_, require_modulus());
  return *this;
}

Fp& Fp::operator/=(Fp o) { return *this *= o.inverse(); }

Fp Fp::operator-() const {
  Fp r;
  r.v_ = v_ == 0 ? 0 : require_modulus() - v_;
  return r;
}

Fp Fp::inverse() const {
  const std::uint64_t p = require_modulus();
  if (v_ == 0) throw std::domain_error("division by zero in Fp");
  Fp r;
  r.v_ = pow_mod(v_, p - 2, p);
  return r;
}

PrimeFieldScope::PrimeFieldScope(std::uint64_t p) : previous_(current_modulus) {
  if (p >= (1ULL << 62) || !is_prime(p)) {
    throw std::invalid_argument("field modulus " + std::to_string(p) + " is not a prime below 2^62");
  }
  current_modulus = p;
}

PrimeFieldScope::~PrimeFieldScope() { current_modulus = previous_; }

Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("missing digits");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("invalid digit in '" + std::string(s) + "'");
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Fp FieldTraits<Fp>::from_rational(const Rational& q) {
  const std::uint64_t p = require_modulus();
  auto reduce = [p](const Integer& z) {
    Integer r = z % p;
    if (r < 0) r += p;
    return Fp(static_cast<long long>(r.convert_to<unsigned long long>()));
  };
  Fp den = reduce(boost::multiprecision::denominator(q));
  if (den == Fp(0)) {
    throw std::invalid_argument("rational " + to_string(q) + " has a denominator divisible by " + std::to_string(p));
  }
  return reduce(boost::multiprecision::numerator(q)) / den;
}

}  // namespace relhh
