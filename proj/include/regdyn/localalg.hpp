#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "regdyn/endo.hpp"

namespace regdyn {

/// Length of the local ring at P of the fiber through Q, with the
/// dimensions dim k[x]/(F + m^M) observed for M = 2, 4, 8, ...
struct MultiplicityResult {
  int value = 0;
  int truncation = 0;
  bool stabilized = false;
  std::vector<std::pair<int, std::size_t>> trace;
};

/// Affine map components at the rational point P; Q defaults to the image.
/// Throws localalg.InvalidInput if Q is not the image and
/// localalg.NotIsolated if the dimensions are still growing at M = 64.
MultiplicityResult multiplicity_at(const std::vector<MultiPoly>& map, const Point& p,
                                   const std::optional<Point>& q = std::nullopt);
/// Same for a projective map at a rational point, through affine charts.
MultiplicityResult multiplicity_projective(const ProjEndo& g, const Point& p);

struct RamificationEntry {
  std::optional<Point> point;  // rational point of P^1, or
  MultiPoly factor;            // the squarefree factor cutting it out
  int residue_degree = 1;
  int index = 1;
};

struct RamificationProfile {
  MultiPoly wronskian;
  std::vector<RamificationEntry> entries;
  int max_index = 1;
};

/// Order of vanishing of g - g(P) at P; Q only (localalg.UnsupportedField).
int ramification_index_p1(const ProjEndo& g, const Point& p);
/// Wronskian dG0/dX dG1/dY - dG0/dY dG1/dX split into factors with index
/// multiplicity + 1. localalg.UnsupportedField over F_p or when W = 0.
RamificationProfile max_multiplicity_p1(const ProjEndo& g);
/// The fiber over a rational point, as factors of Q1 G0 - Q0 G1 with
/// residue degree and index; the weighted sum is deg g.
std::vector<RamificationEntry> fiber_p1(const ProjEndo& g, const Point& q);

/// i(P) for the closure of the plane curve g = 0 against x0 = 0 at
/// P = [0:a:b]; localalg.NotOnCurve when P is not on the closure.
int intersection_number_at_infinity(const MultiPoly& curve, const Point& p);

/// Rational common zeros in A^2 of two polynomials with finitely many
/// common zeros along each vertical slice; a shared curve is skipped.
std::vector<Point> rational_common_zeros(const MultiPoly& a, const MultiPoly& b);

struct SurveyResult {
  int dim = 1;
  int degree = 0;
  long coeff_height = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t skipped_nonregular = 0;
  std::map<int, std::size_t> histogram;
  std::vector<int> values;  // per sample, injected maps first
};

/// Seeded survey of the maximal multiplicity over regular maps with integer
/// coefficients in [-H, H]. Dim 1: binary forms of degree d, e from the
/// Wronskian. Dim 2: affine maps of degree d, e = 2 whenever the Jacobian is
/// nonconstant, raised by multiplicity_at at rational points where the
/// Jacobian and its derivative along the kernel both vanish, or at singular
/// points of the Jacobian curve.
/// localalg.SamplingExhausted after 1000 * samples draws without a sample.
SurveyResult survey_max_multiplicity(int dim, int degree, std::size_t samples, long coeff_height,
                                     std::uint64_t seed, const std::vector<ProjEndo>& injected_p1 = {},
                                     const std::vector<RegularEndo>& injected_a2 = {});

/// Max multiplicity of one affine map of A^2 as used by the survey.
int survey_multiplicity_a2(const RegularEndo& f);

}  // namespace regdyn
