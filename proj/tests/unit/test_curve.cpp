#include <functional>

#include "doctest.h"
#include "regdyn/curve.hpp"
#include "regdyn/parser.hpp"
#include "regdyn/rng.hpp"

using namespace regdyn;

namespace {

MultiPoly P(const std::string& s, Field f = Field()) { return parse_poly(s, default_variable_names(2), f); }

PlaneCurve C(const std::string& s, Field f = Field()) { return PlaneCurve::make(P(s, f)); }

RegularEndo E(const std::string& a, const std::string& b, Field f = Field()) {
  return RegularEndo::make({P(a, f), P(b, f)});
}

ParamCurve hyperbola() {
  return ParamCurve::make({parse_rational_function("t^2 + 1/(t)"), parse_rational_function("t^2 - 1/(t)")});
}

void expect_code(const std::function<void()>& fn, ErrorCode code) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
    CHECK(e.module() == "curve");
  }
}

bool has_point(const std::vector<InfinityPoint>& pts, const Point& p, int i) {
  for (const auto& q : pts) {
    if (q.point && *q.point == p && q.intersection == i) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("points at infinity") {
  const auto a = infinity_points(C("x^2 - y^2 - 4"));
  CHECK(a.size() == 2);
  CHECK(has_point(a, {0, 1, 1}, 1));
  CHECK(has_point(a, {0, 1, -1}, 1));
  const auto b = infinity_points(C("y - x^2"));
  REQUIRE(b.size() == 1);
  CHECK(has_point(b, {0, 0, 1}, 2));
  CHECK(has_point(infinity_points(C("x")), {0, 0, 1}, 1));
  const auto c = infinity_points(C("x^2 + y^2 - 1"));
  REQUIRE(c.size() == 1);
  CHECK(!c[0].point);
  CHECK(c[0].residue_degree == 2);
  const auto d = infinity_points(C("x^2 - y^2 - 1", Field::prime(5)));
  CHECK(has_point(d, {0, 1, 1}, 1));
  CHECK(has_point(d, {0, 1, 4}, 1));
}

TEST_CASE("Bezout at infinity") {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    MultiPoly g(2);
    const int d = static_cast<int>(rng.uniform_int(1, 5));
    for (int t = 0; t <= d; ++t) {
      for (int a = 0; a <= t; ++a) {
        if (rng.uniform_int(0, 2) == 0) continue;
        g = g + MultiPoly::monomial({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(t - a)},
                                    Rational(rng.uniform_int(-3, 3)));
      }
    }
    if (g.is_constant()) continue;
    const auto c = PlaneCurve::make(g);
    int total = 0;
    for (const auto& p : infinity_points(c)) total += p.residue_degree * p.intersection;
    CHECK(total == c.degree());
  }
}

TEST_CASE("invariance") {
  const auto f1 = E("x^3 - 3*x", "y^3 + 3*y");
  CHECK(is_invariant(C("x^2 - y^2 - 4"), f1));
  CHECK(!is_invariant(C("x^2 - y^2 - 4"), E("x^2", "y^2")));
  CHECK(is_invariant(C("y - x^2"), E("x^2", "y^2")));
  const Field f5 = Field::prime(5);
  CHECK(is_invariant(C("x^2 - y^2 - 1", f5), E("x^5 + (x^2 - y^2 - 1)*y^3", "y^5", f5)));
  CHECK(!is_invariant(C("x^2 - y^2 - 2", f5), E("x^5 + (x^2 - y^2 - 1)*y^3", "y^5", f5)));
  expect_code([] { is_invariant(C("x"), RegularEndo::make(parse_poly_list({"x^2", "y^2", "z^2"}, default_variable_names(3)))); },
              ErrorCode::DimensionError);

  // invariance sends sampled points into the curve
  const auto h = C("x^2 - y^2 - 4");
  for (const auto& x : sample_points(hyperbola(), 30)) {
    REQUIRE(h.contains(x));
    CHECK(h.contains(f1.apply(x)));
  }
}

TEST_CASE("pullbacks") {
  const auto sq = E("x^2", "y^2");
  const auto a = pullback_curve(C("x - 2"), sq);
  CHECK(a.squarefree == P("x^2 - 2"));
  CHECK(a.linear_factors.empty());
  const auto b = pullback_curve(C("y - x^2"), sq);
  CHECK(b.linear_factors.size() == 2);
  CHECK(b.residual.is_constant());
  const auto f1 = E("x^3 - 3*x", "y^3 + 3*y");
  const auto c = pullback_curve(C("x^2 - y^2 - 4"), f1);
  CHECK(*c.squarefree.degree() == 6);
  CHECK(divides(P("x^2 - y^2 - 4"), c.squarefree));
  const auto d = pullback_curve(C("x - 4"), sq);
  CHECK(d.linear_factors.size() == 2);
  const auto e = pullback_curve(C("y - 2*x"), E("x^3", "y^3 + x"));
  CHECK(divides(e.squarefree, e.composed));

  // divisibility agrees with invariance
  for (const auto& [curve, map] : std::vector<std::pair<std::string, RegularEndo>>{
           {"x^2 - y^2 - 4", f1}, {"x^2 - y^2 - 4", sq}, {"y - x^2", sq}, {"y - 2*x", sq}, {"y", sq}}) {
    const auto pc = pullback_curve(C(curve), map);
    CHECK(divides(P(curve), pc.composed) == is_invariant(C(curve), map));
  }
  CHECK(components_through(b.linear_factors, {{2, 4}}).size() == 1);
}

TEST_CASE("vertical lines and central projection") {
  REQUIRE(is_vertical_line(C("y - 2*x")).has_value());
  CHECK(*is_vertical_line(C("y - 2*x")) == Point{0, 1, 2});
  CHECK(!is_vertical_line(C("x - 2")));
  CHECK(!is_vertical_line(C("x^2 - y^2 - 4")));
  for (const std::string& s : {"y - 2*x", "3*x + 5*y", "x"}) {
    const auto c = C(s);
    const auto p = is_vertical_line(c);
    REQUIRE(p.has_value());
    CHECK(c.contains({0, 0}));
    const auto inf = infinity_points(c);
    REQUIRE(inf.size() == 1);
    CHECK(*inf[0].point == *p);
    CHECK(inf[0].intersection == 1);
  }
  CHECK(central_project({4, Rational(1, 4)}) == Point{0, 16, 1});
  CHECK(central_project({1, 0}) == Point{0, 1, 0});
  expect_code([] { central_project({0, 0}); }, ErrorCode::ProjectionUndefined);
}

TEST_CASE("sampling") {
  const auto hp = hyperbola();
  CHECK(*hp.at(2) == Point{Rational(5, 2), Rational(3, 2)});
  CHECK(*hp.at(1) == Point{2, 0});
  CHECK(!hp.at(0));
  const auto h = C("x^2 - y^2 - 4");
  const auto pts = sample_points(hp, 100);
  CHECK(pts.size() == 100);
  for (const auto& p : pts) CHECK(h.contains(p));
  const auto sl = sample_points(h, 6);
  CHECK(!sl.empty());
  for (const auto& p : sl) CHECK(h.contains(p));
  bool found = false;
  for (const auto& p : sample_points(C("x^2 - y^2 - 4"), 40)) found |= p == Point{Rational(5, 2), Rational(3, 2)};
  CHECK(found);
  const auto r = rationals_by_height(7);
  CHECK(r == std::vector<Rational>{0, 1, -1, 2, -2, Rational(1, 2), Rational(-1, 2)});
  for (const auto& p : sample_points(C("x - 3"), 5)) CHECK(p[0] == 3);
}
