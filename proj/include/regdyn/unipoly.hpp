#pragma once

#include <utility>
#include <vector>

#include "regdyn/poly.hpp"

namespace regdyn {

/// Dense univariate polynomial; coeffs()[i] multiplies t^i. Trailing zeros
/// are trimmed, so the zero polynomial has no coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs, Field field = Field());
  static UniPoly monomial(int degree, const Rational& c, Field field = Field());
  /// Requires every variable other than `var` to be absent.
  static UniPoly from_multi(const MultiPoly& p, std::size_t var);
  MultiPoly to_multi(std::size_t nvars, std::size_t var) const;

  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  const Field& field() const noexcept { return field_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  Rational coeff(int i) const;
  const Rational& leading() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(const Rational& s) const;
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }

  Rational evaluate(const Rational& t) const;
  UniPoly derivative() const;
  UniPoly monic() const;

 private:
  void trim();
  std::vector<Rational> c_;
  Field field_;
};

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Yun's algorithm over Q. Monic squarefree factors, multiplicities increasing.
std::vector<std::pair<UniPoly, int>> squarefree_decompose(const UniPoly& p);

/// Distinct rational roots in increasing order.
std::vector<Rational> rational_roots(const UniPoly& p);

/// Largest m with (t - r)^m dividing p.
int root_multiplicity(const UniPoly& p, const Rational& r);

}  // namespace regdyn
