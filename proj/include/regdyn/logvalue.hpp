#pragma once

#include <map>
#include <string>

#include "regdyn/scalar.hpp"

namespace regdyn {

/// Exact real number of the form  sum_b c_b log(b) + c  with rational c_b, c
/// and integer bases b > 1 kept pairwise coprime, so the representation is
/// unique and the zero test is exact.
class LogValue {
 public:
  LogValue() = default;
  /// log(x) for a positive rational x.
  static LogValue log_of(const Rational& x);
  /// max(0, log x) for x > 0.
  static LogValue log_plus(const Rational& x);
  static LogValue constant(const Rational& c);

  const std::map<Integer, Rational>& logs() const noexcept { return logs_; }
  const Rational& plain() const noexcept { return plain_; }
  bool is_zero() const noexcept { return logs_.empty() && plain_ == 0; }

  LogValue operator+(const LogValue& o) const;
  LogValue operator-(const LogValue& o) const;
  LogValue operator-() const;
  LogValue scaled(const Rational& s) const;
  LogValue& operator+=(const LogValue& o) { return *this = *this + o; }
  /// Exact: compares in a common coprime basis, so log(6) == log(2) + log(3).
  friend bool operator==(const LogValue& a, const LogValue& b) { return (a - b).is_zero(); }

  double to_double() const;
  /// Decimal approximation with `digits` significant digits.
  std::string approx(int digits = 20) const;
  /// Exact rendering, e.g. "2*log(3) - log(5) + 1"; "0" for zero.
  std::string to_string() const;

 private:
  void add_log(const Integer& base, const Rational& coeff);
  std::map<Integer, Rational> logs_;
  Rational plain_ = 0;
};

enum class Ordering { Less, Equal, Greater, Inconclusive };
const char* to_string(Ordering o);

/// Working precision for archimedean approximations: REGDYN_PRECISION_BITS,
/// default 128, never below 128.
long precision_bits();

/// Sign of a - b. Exact zero test first; numeric evaluation with a 2^-80 guard
/// band; inside the band an exact power comparison when the exponents are
/// small, else one precision widening, else Inconclusive.
Ordering compare(const LogValue& a, const LogValue& b);

LogValue max(const LogValue& a, const LogValue& b);

}  // namespace regdyn
