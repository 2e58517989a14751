#include "regdyn/point.hpp"

#include <algorithm>

#include "regdyn/error.hpp"
#include "regdyn/unipoly.hpp"

namespace regdyn {

Point normalize_projective(const Point& p, Field field) {
  auto first = std::find_if(p.begin(), p.end(), [&](const Rational& v) { return field.reduce(v) != 0; });
  if (first == p.end()) throw Error("core", ErrorCode::DegenerateInput, "projective point with all coordinates zero");
  Point out(p.size());
  if (!field.is_rational()) {
    const Rational inv = field.inverse(field.reduce(*first));
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = field.reduce(p[i] * inv);
    return out;
  }
  Integer l = integers::lcm_of_denominators(p);
  Integer g = integers::gcd_of_numerators(p);
  Rational s(l, g);
  s.canonicalize();
  if (*first < 0) s = -s;
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] * s;
  return out;
}

bool projectively_equal(const Point& a, const Point& b, Field field) {
  if (a.size() != b.size()) return false;
  return normalize_projective(a, field) == normalize_projective(b, field);
}

std::string projective_to_string(const Point& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ":";
    s += rational_to_string(p[i]);
  }
  return s + "]";
}

std::string affine_to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += rational_to_string(p[i]);
  }
  return s + ")";
}

namespace {

void check_binary(const MultiPoly& form) {
  if (form.nvars() != 2 || !form.is_homogeneous()) {
    throw Error("core", ErrorCode::DimensionError, "expected a binary form");
  }
  if (form.is_zero()) throw Error("core", ErrorCode::DegenerateInput, "zero binary form");
}

int y_order(const MultiPoly& form) {
  int m = -1;
  for (const auto& [e, c] : form.terms()) {
    m = m < 0 ? static_cast<int>(e[1]) : std::min(m, static_cast<int>(e[1]));
  }
  return m;
}

}  // namespace

std::vector<BinaryFactor> split_binary_form(const MultiPoly& form) {
  check_binary(form);
  std::vector<BinaryFactor> out;
  const int m_inf = y_order(form);
  if (m_inf > 0) {
    out.push_back({Point{1, 0}, MultiPoly::variable(2, 1, form.field()), 1, m_inf});
  }
  const UniPoly f = UniPoly::from_multi(form.substitute(1, 1), 0);
  for (const auto& [s, mult] : squarefree_decompose(f)) {
    UniPoly rest = s;
    for (const auto& r : rational_roots(s)) {
      Point pt = normalize_projective({r, 1});
      MultiPoly lin = MultiPoly::variable(2, 0) * MultiPoly::constant(2, pt[1]) -
                      MultiPoly::variable(2, 1) * MultiPoly::constant(2, pt[0]);
      out.push_back({pt, lin, 1, mult});
      rest = divmod(rest, UniPoly({-r, Rational(1)})).first;
    }
    if (rest.degree() > 0) {
      // homogenize puts the new variable first: (Y, X) -> (X, Y).
      MultiPoly h = rest.to_multi(1, 0).homogenize(rest.degree()).remap(2, {1, 0}).primitive();
      out.push_back({std::nullopt, h, rest.degree(), mult});
    }
  }
  return out;
}

int linear_factor_multiplicity(const MultiPoly& form, const Point& at) {
  check_binary(form);
  if (at.size() != 2 || (at[0] == 0 && at[1] == 0)) {
    throw Error("core", ErrorCode::DimensionError, "expected a point of P^1");
  }
  if (at[1] == 0) return y_order(form);
  const UniPoly f = UniPoly::from_multi(form.substitute(1, 1), 0);
  return root_multiplicity(f, at[0] / at[1]);
}

}  // namespace regdyn
