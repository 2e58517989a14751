#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regdyn/scalar.hpp"

namespace regdyn {

using Exponents = std::vector<std::uint32_t>;

/// Graded-lex "greater than": higher total degree first, ties broken
/// lexicographically with x1 > x2 > ... . Used as the term-map order so
/// iteration starts at the leading term.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Upper bound on stored terms for any intermediate product.
inline constexpr std::size_t kTermLimit = 400000;

/// Sparse multivariate polynomial over Q or F_p. No stored coefficient is
/// zero; the zero polynomial has no terms and no degree.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  explicit MultiPoly(std::size_t nvars = 1, Field field = Field());

  static MultiPoly constant(std::size_t nvars, const Rational& c, Field field = Field());
  static MultiPoly variable(std::size_t nvars, std::size_t index, Field field = Field());
  static MultiPoly monomial(Exponents exps, const Rational& c, Field field = Field());

  std::size_t nvars() const noexcept { return nvars_; }
  const Field& field() const noexcept { return field_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; std::nullopt is the zero polynomial's -infinity.
  std::optional<int> degree() const;
  /// Degree in one variable, -1 for the zero polynomial.
  int degree_in(std::size_t var) const;
  bool is_homogeneous() const;

  Rational coefficient(const Exponents& e) const;
  const Exponents& leading_exponents() const;
  const Rational& leading_coefficient() const;
  Rational constant_term() const;

  void add_term(const Exponents& e, const Rational& c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(const Rational& c) const;
  MultiPoly pow(unsigned n) const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  MultiPoly homogeneous_part(int degree) const;
  /// Sum of the terms of maximal total degree.
  MultiPoly top_form() const;
  /// x0-homogenization to `target_degree`; the result has nvars()+1
  /// variables with x0 at index 0.
  MultiPoly homogenize(int target_degree) const;
  /// Inverse of homogenize: sets variable 0 to 1 and drops it.
  MultiPoly dehomogenize() const;

  MultiPoly derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;
  /// Replace each variable i by subs[i]; all subs share one ring.
  MultiPoly compose(const std::vector<MultiPoly>& subs) const;
  /// Coefficient of var^k, as a polynomial in the same ring (var absent).
  MultiPoly coefficient_in(std::size_t var, unsigned k) const;
  /// Replace a single variable by a value and keep the ring.
  MultiPoly substitute(std::size_t var, const Rational& value) const;
  /// Move into a ring with `new_nvars` variables; variable i goes to var_map[i].
  MultiPoly remap(std::size_t new_nvars, const std::vector<std::size_t>& var_map) const;
  MultiPoly with_field(Field field) const;

  /// Scaled so the leading coefficient is 1.
  MultiPoly monic() const;
  /// Q only: integer coefficients with gcd 1 and positive leading coefficient.
  MultiPoly primitive() const;

  /// Canonical text: graded-lex descending terms, "p/q" coefficients.
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  std::size_t nvars_;
  Field field_;
  TermMap terms_;
};

std::vector<std::string> default_variable_names(std::size_t nvars);

/// Multivariate division by a single divisor under graded-lex order.
std::pair<MultiPoly, MultiPoly> divide(const MultiPoly& a, const MultiPoly& b);
/// a / b when b divides a, std::nullopt otherwise.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);
bool divides(const MultiPoly& b, const MultiPoly& a);

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var);
/// Monic gcd (recursive primitive PRS); gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
/// Q only: a / gcd(a, all partial derivatives).
MultiPoly squarefree_part(const MultiPoly& a);

/// Sylvester resultant eliminating `var`. Formal degrees default to the actual
/// degrees in `var`; pass them explicitly to treat binary forms homogeneously
/// (e.g. Res_X(X^3, Y^3) with formal degrees 3, 3 is Y^9).
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var,
                    std::optional<int> formal_p = std::nullopt,
                    std::optional<int> formal_q = std::nullopt);

}  // namespace regdyn
