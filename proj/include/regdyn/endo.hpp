#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regdyn/error.hpp"
#include "regdyn/linalg.hpp"
#include "regdyn/point.hpp"
#include "regdyn/poly.hpp"

namespace regdyn {

/// How a regularity verdict was reached: "certified" verdicts are exact,
/// "attested" ones rest on rank deficiency modulo several primes.
enum class Certification { Certified, Attested };
const char* to_string(Certification c);

/// Result of the base-point-freeness test for m homogeneous forms of degree d
/// in m variables: the degree-D part of their ideal, D = m(d-1)+1, is
/// everything iff the forms have no common nonzero zero.
struct RegularityReport {
  bool regular = false;
  Certification certification = Certification::Certified;
  std::optional<Point> witness;  // a rational common zero, when one was found
  int macaulay_degree = 0;
  std::size_t rank = 0;
  std::size_t columns = 0;
};

RegularityReport check_base_point_free(const std::vector<MultiPoly>& forms);

/// endo.NotRegular with the common zero of the top forms when known.
class NotRegularError : public Error {
 public:
  NotRegularError(const std::string& detail, std::optional<Point> witness, Certification how);
  const std::optional<Point>& witness() const noexcept { return witness_; }
  Certification certification() const noexcept { return how_; }

 private:
  std::optional<Point> witness_;
  Certification how_;
};

/// Self-map of P^m given by m+1 homogeneous forms of one degree, normalized
/// to primitive integer coefficients with the first leading coefficient
/// positive (over F_p: equal to 1).
class ProjEndo {
 public:
  ProjEndo() = default;
  /// Validates homogeneity, a common degree >= 1 and base-point-freeness.
  static ProjEndo make(std::vector<MultiPoly> forms);
  /// Normalizes only; for maps already known to be regular.
  static ProjEndo make_unchecked(std::vector<MultiPoly> forms,
                                 Certification how = Certification::Certified);

  std::size_t dim() const noexcept { return forms_.size() - 1; }
  int degree() const noexcept { return degree_; }
  const std::vector<MultiPoly>& components() const noexcept { return forms_; }
  const Field& field() const { return forms_.front().field(); }
  Certification certification() const noexcept { return how_; }

  /// Image of a projective point, normalized.
  Point apply(const Point& x) const;
  /// this ∘ inner
  ProjEndo compose(const ProjEndo& inner) const;
  ProjEndo iterate(int n) const;

  /// "[X^2 : Y^2]" style rendering; names default to X, Y, Z or X0..Xm.
  std::string to_string(const std::vector<std::string>& names = {}) const;
  friend bool operator==(const ProjEndo& a, const ProjEndo& b) { return a.forms_ == b.forms_; }

 private:
  std::vector<MultiPoly> forms_;
  int degree_ = 0;
  Certification how_ = Certification::Certified;
};

std::vector<std::string> projective_variable_names(std::size_t count);

/// A regular endomorphism of A^N: x -> (f_i + g_i) with homogeneous top forms
/// f_i of degree d and no common nonzero zero, tails g_i of degree <= d - k.
class RegularEndo {
 public:
  RegularEndo() = default;
  /// Throws endo.DegenerateInput for an empty list or degree 0,
  /// endo.DimensionError for mismatched rings, NotRegularError otherwise.
  static RegularEndo make(std::vector<MultiPoly> components);

  std::size_t n() const noexcept { return components_.size(); }
  int d() const noexcept { return d_; }
  int k() const noexcept { return k_; }
  const Field& field() const { return components_.front().field(); }
  const std::vector<MultiPoly>& components() const noexcept { return components_; }
  /// Degree-d parts; a component of lower degree contributes zero.
  const std::vector<MultiPoly>& top_forms() const noexcept { return top_; }
  const std::vector<MultiPoly>& tails() const noexcept { return tails_; }
  /// [x0^d : hom(f_1 + g_1) : ... ] on P^N, x0 first.
  ProjEndo lift() const;
  Certification certification() const noexcept { return how_; }

  Point apply(const Point& x) const;
  std::string to_string() const;
  friend bool operator==(const RegularEndo& a, const RegularEndo& b) {
    return a.components_ == b.components_;
  }

 private:
  static RegularEndo assemble(std::vector<MultiPoly> components, Certification how);
  friend RegularEndo iterate(const RegularEndo& f, int n);
  friend RegularEndo conjugate_linear(const RegularEndo& f, const Matrix& a);

  std::vector<MultiPoly> components_;
  std::vector<MultiPoly> top_;
  std::vector<MultiPoly> tails_;
  int d_ = 0;
  int k_ = 0;
  Certification how_ = Certification::Certified;
};

int degree_gap(const RegularEndo& f);
/// f_inf = [f_1 : ... : f_N] on H_inf = P^{N-1}.
ProjEndo restrict_infinity(const RegularEndo& f);
/// n-fold composition; endo.ResourceLimit past the term cap.
RegularEndo iterate(const RegularEndo& f, int n);
/// A ∘ f ∘ A^{-1}; endo.SingularMatrix for singular A.
RegularEndo conjugate_linear(const RegularEndo& f, const Matrix& a);

/// The map induced on binary quadratics aX^2 + bXY + cY^2 (coordinates
/// [A:B:C]) by sending both roots through g.
ProjEndo symmetric_square(const ProjEndo& g);

}  // namespace regdyn
