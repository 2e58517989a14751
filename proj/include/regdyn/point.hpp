#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regdyn/poly.hpp"

namespace regdyn {

/// Coordinates of an affine or projective rational point.
using Point = std::vector<Rational>;

/// Projective representative: over Q primitive integers with the first
/// nonzero coordinate positive; over F_p the first nonzero coordinate is 1.
Point normalize_projective(const Point& p, Field field = Field());
bool projectively_equal(const Point& a, const Point& b, Field field = Field());

/// "[0:1:-1]" for projective, "(2, 0)" for affine.
std::string projective_to_string(const Point& p);
std::string affine_to_string(const Point& p);

/// Component of a homogeneous binary form F(X, Y): either the rational point
/// [a:b] of the linear factor bX - aY, or a squarefree factor without
/// rational roots (residue degree = its degree; it may still be reducible).
struct BinaryFactor {
  std::optional<Point> point;
  MultiPoly factor;
  int degree = 1;
  int multiplicity = 1;
};

/// Splits a nonzero binary form over Q into rational linear factors and
/// residual squarefree parts, each with its multiplicity.
std::vector<BinaryFactor> split_binary_form(const MultiPoly& form);

/// Multiplicity of the linear factor bX - aY vanishing at [a:b].
int linear_factor_multiplicity(const MultiPoly& form, const Point& at);

}  // namespace regdyn
