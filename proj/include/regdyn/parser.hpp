#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regdyn/heights.hpp"
#include "regdyn/point.hpp"
#include "regdyn/poly.hpp"

namespace regdyn {

/// Text plus variable environment; the environment order fixes exponent
/// positions. An empty environment means default_variable_names(nvars).
struct PolySource {
  std::string text;
  std::vector<std::string> variables;
  Field field;
};

/// Grammar (whitespace insignificant):
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)* ['/' posint]
///   factor := int ['/' posint] | var ['^' int] | '(' expr ')' ['^' int]
/// Juxtaposition ("3x") is rejected. With the default environment of up to
/// three variables, x1, x2, x3 are accepted as aliases of x, y, z.
MultiPoly parse_poly(const PolySource& src);
MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& variables,
                     Field field = Field());
/// Canonical text; parse_poly(render(p)) == p.
std::string render(const MultiPoly& p, const std::vector<std::string>& variables = {});

/// Splits on commas outside parentheses.
std::vector<std::string> split_top_level(const std::string& text, char sep = ',');
std::vector<MultiPoly> parse_poly_list(const std::vector<std::string>& items,
                                       const std::vector<std::string>& variables,
                                       Field field = Field());
/// "2, 0" or "1/2,3"
Point parse_point(const std::string& text);
/// "Q" or "Fp:<p>"
Field parse_field(const std::string& text);

/// A ratio of two polynomials in t, written "num" or "num/(den)".
std::pair<MultiPoly, MultiPoly> parse_rational_function(const std::string& text);

struct CurveSpec {
  bool parametric = false;
  MultiPoly poly;  // plane curve in x, y
  std::vector<std::pair<MultiPoly, MultiPoly>> coords;  // parametric, in t
};

struct JobSpec {
  std::string kind;
  std::size_t n = 0;
  Field field;
  std::vector<MultiPoly> f;        // endomorphism components
  std::vector<MultiPoly> map;      // map for "mult"
  std::optional<CurveSpec> curve;
  std::optional<Point> start;
  std::optional<Point> at;
  std::optional<Point> point;
  int n_max = 20;
  std::optional<Rational> height_cap;  // bound B on exp(height)
  std::vector<Place> places;
  std::uint64_t seed = 1;
  int p_max = 6;
  std::string statement;
  int samples = 100;
  int dim = 1;
  int degree = 3;
  Integer coeff_height = 10;
};

extern const char* const kJobKinds[];

/// Parses and validates a JSON job document; errors are parser.SchemaError
/// (with a field path) and parser.DimensionError.
JobSpec parse_job(const std::string& document);

}  // namespace regdyn
