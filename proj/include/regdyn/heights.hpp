#pragma once

#include <string>
#include <vector>

#include "regdyn/logvalue.hpp"
#include "regdyn/point.hpp"

namespace regdyn {

/// A place of Q: the archimedean absolute value (prime() == 0) or the p-adic
/// one normalized by |p|_p = 1/p.
class Place {
 public:
  Place() = default;
  static Place infinity() { return Place(); }
  /// Throws heights.InvalidInput unless p is prime.
  static Place finite(const Integer& p);
  /// "inf" or "p:<prime>".
  static Place parse(const std::string& literal);

  bool archimedean() const noexcept { return p_ == 0; }
  const Integer& prime() const noexcept { return p_; }
  std::string to_string() const;
  friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }
  friend bool operator<(const Place& a, const Place& b) { return a.p_ < b.p_; }

 private:
  Integer p_ = 0;
};

std::vector<Place> parse_places(const std::string& comma_separated);

/// |x|_v as an exact rational; 0 for x = 0.
Rational abs_value(const Place& v, const Rational& x);
/// log |x|_v for x != 0.
LogValue log_abs(const Place& v, const Rational& x);

/// Places where some coordinate has nonzero valuation, plus infinity.
std::vector<Place> relevant_places(const std::vector<Rational>& values);

/// Sum over places of log max_i |x_i|_v.
LogValue naive_height(const Point& projective);
/// Largest |coordinate| of the primitive integer representative.
Integer height_bound_of(const Point& projective);

/// Sum of log |x|_v over infinity and every prime dividing x; exactly zero.
LogValue product_formula_check(const Rational& x);

/// Projective points of P^n with primitive integer coordinates bounded by B,
/// first nonzero coordinate positive, in lexicographic order.
std::vector<Point> points_of_bounded_height(int n, const Integer& bound);

}  // namespace regdyn
