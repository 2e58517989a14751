#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regdyn/endo.hpp"

namespace regdyn {

/// Affine plane curve g(x, y) = 0. Irreducibility is the caller's claim.
class PlaneCurve {
 public:
  PlaneCurve() = default;
  /// curve.DimensionError unless g is in two variables,
  /// curve.DegenerateInput for constant g.
  static PlaneCurve make(MultiPoly g);

  const MultiPoly& poly() const noexcept { return g_; }
  const MultiPoly& top_form() const noexcept { return top_; }
  int degree() const noexcept { return degree_; }
  const Field& field() const { return g_.field(); }
  bool contains(const Point& x) const;
  std::string to_string() const;

 private:
  MultiPoly g_;
  MultiPoly top_;
  int degree_ = 0;
};

/// t -> (p_1(t)/q_1(t), ..., p_N(t)/q_N(t)) over Q.
class ParamCurve {
 public:
  ParamCurve() = default;
  /// curve.DimensionError for fewer than two coordinates or a non-univariate
  /// entry, curve.DegenerateInput for a zero denominator.
  static ParamCurve make(std::vector<std::pair<MultiPoly, MultiPoly>> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  const std::vector<std::pair<MultiPoly, MultiPoly>>& coords() const noexcept { return coords_; }
  /// Rational parameters where some denominator vanishes.
  const std::vector<Rational>& excluded() const noexcept { return excluded_; }
  /// nullopt at a pole.
  std::optional<Point> at(const Rational& t) const;
  std::string to_string() const;

 private:
  std::vector<std::pair<MultiPoly, MultiPoly>> coords_;
  std::vector<Rational> excluded_;
};

/// A point [0:a:b] of the closure on the line at infinity, or an irreducible
/// locus cut out by a top-form factor without rational roots.
struct InfinityPoint {
  std::optional<Point> point;
  MultiPoly factor;
  int residue_degree = 1;
  int intersection = 1;
};

/// From the top form: sum of residue_degree * intersection equals deg g.
std::vector<InfinityPoint> infinity_points(const PlaneCurve& c);

/// g o f in the ideal (g); curve.DimensionError unless f acts on A^2.
bool is_invariant(const PlaneCurve& c, const RegularEndo& f);

struct Pullback {
  MultiPoly composed;     // g o f
  MultiPoly squarefree;   // its squarefree part
  /// factors x - c and y - h(x) of the squarefree part, h in Q[x]
  std::vector<MultiPoly> linear_factors;
  MultiPoly residual;     // squarefree part divided by those factors
};

Pullback pullback_curve(const PlaneCurve& c, const RegularEndo& f);

/// [0:a:b] when g is a multiple of b*x - a*y, else nullopt.
std::optional<Point> is_vertical_line(const PlaneCurve& c);

/// [0 : x_1 : ... : x_N] in primitive form; curve.ProjectionUndefined at O.
Point central_project(const Point& x);

/// 0, 1, -1, 2, -2, 1/2, -1/2, ... in order of height, then size.
std::vector<Rational> rationals_by_height(std::size_t count);

/// Rational points on x-slices taken in height order; may return fewer
/// than budget. Every point satisfies g = 0 exactly.
std::vector<Point> sample_points(const PlaneCurve& c, std::size_t budget);
/// Images of the first budget non-excluded parameters in height order.
std::vector<Point> sample_points(const ParamCurve& c, std::size_t budget);

/// Among the factors, those vanishing at every given point.
std::vector<MultiPoly> components_through(const std::vector<MultiPoly>& factors,
                                          const std::vector<Point>& points);

}  // namespace regdyn
