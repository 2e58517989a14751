#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace regdyn {

using Integer = mpz_class;
using Rational = mpq_class;

/// Coefficient domain: the rationals (modulus 0) or the prime field F_p.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint64_t p);

  bool is_rational() const noexcept { return p_ == 0; }
  std::uint64_t modulus() const noexcept { return p_; }

  /// Canonical representative: lowest terms for Q, [0, p) for F_p.
  Rational reduce(const Rational& value) const;
  Rational inverse(const Rational& value) const;

  std::string to_string() const;
  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

/// An exact element of Q or F_p. Rationals are kept in lowest terms with a
/// positive denominator, prime-field elements in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(Rational value, Field field = Field());
  Scalar(long value, Field field = Field()) : Scalar(Rational(value), field) {}

  const Rational& value() const noexcept { return value_; }
  const Field& field() const noexcept { return field_; }
  bool is_zero() const { return value_ == 0; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  std::string to_string() const;

 private:
  void check_same_field(const Scalar& o) const;
  Rational value_;
  Field field_;
};

std::string rational_to_string(const Rational& q);
Rational parse_rational(const std::string& text);

namespace integers {

bool is_prime(const Integer& n);
/// Prime factorization of |n| (n != 0), ascending primes with exponents.
std::vector<std::pair<Integer, unsigned>> factor(const Integer& n);
/// All positive divisors of |n|, ascending.
std::vector<Integer> divisors(const Integer& n);
/// p-adic valuation of a nonzero rational.
long valuation(const Rational& x, const Integer& p);
Integer lcm_of_denominators(const std::vector<Rational>& values);
Integer gcd_of_numerators(const std::vector<Rational>& values);

}  // namespace integers

}  // namespace regdyn
