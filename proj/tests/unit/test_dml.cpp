#include <functional>

#include "doctest.h"
#include "regdyn/dml.hpp"
#include "regdyn/parser.hpp"

using namespace regdyn;

namespace {

MultiPoly P(const std::string& s) { return parse_poly(s, default_variable_names(2)); }

RegularEndo E(const std::string& a, const std::string& b) { return RegularEndo::make({P(a), P(b)}); }

ProjEndo G(const std::string& a, const std::string& b) {
  const std::vector<std::string> xy{"X", "Y"};
  return ProjEndo::make({parse_poly(a, xy), parse_poly(b, xy)});
}

RegularEndo example_i() { return E("x^3 - 3*x", "y^3 + 3*y"); }

void expect_code(const std::function<void()>& fn, ErrorCode code) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
    CHECK(e.module() == "dml");
  }
}

}  // namespace

TEST_CASE("orbits") {
  const auto a = orbit(example_i(), {2, 0}, 5);
  CHECK(a.points.size() == 6);
  for (const auto& p : a.points) CHECK(p == Point{2, 0});
  CHECK(a.reason == Truncation::NMax);

  const auto sq = E("x^2", "y^2");
  const auto b = orbit(sq, {2, 3}, 3);
  CHECK(b.points == std::vector<Point>{{2, 3}, {4, 9}, {16, 81}, {256, 6561}});
  CHECK(b.heights[3] == LogValue::log_of(6561));

  const auto c = orbit(sq, {2, 3}, 10, LogValue::log_of(100));
  CHECK(c.points.back() == Point{16, 81});
  CHECK(c.reason == Truncation::HeightCap);

  const auto d = orbit(sq, {2, 3}, 100);
  CHECK(d.reason == Truncation::ResourceCap);
  for (std::size_t n = 1; n < d.points.size(); ++n) {
    CHECK(d.points[n] == sq.apply(d.points[n - 1]));
    CHECK(compare(d.heights[n], d.heights[n - 1]) != Ordering::Less);
  }
}

TEST_CASE("return sets") {
  const auto a = return_set(example_i(), {2, 0}, PlaneCurve::make(P("x^2 - y^2 - 4")), 50);
  CHECK(a.indices.size() == 51);
  REQUIRE(a.decomposition);
  CHECK(*a.decomposition == std::vector<Progression>{{0, 1}});
  CHECK(describe(*a.decomposition) == "n >= 0");
  CHECK(!a.truncated);

  const auto sq = E("x^2", "y^2");
  const auto b = return_set(sq, {2, 3}, PlaneCurve::make(P("x - 2")), 50);
  CHECK(b.indices == std::vector<int>{0});
  const auto c = return_set(sq, {2, 3}, PlaneCurve::make(P("x - y")), 50);
  CHECK(c.indices.empty());
  REQUIRE(c.decomposition);
  CHECK(c.decomposition->empty());

  // the decomposition covers exactly the hits of the window
  const auto swap = E("y", "x");
  const auto d = return_set(swap, {1, 2}, PlaneCurve::make(P("x - 1")), 20);
  REQUIRE(d.decomposition);
  CHECK(*d.decomposition == std::vector<Progression>{{0, 2}});
  const auto e = return_set(swap, {1, 2}, PlaneCurve::make(P("y - 2")), 9);
  CHECK(e.indices == std::vector<int>{0, 2, 4, 6, 8});
  // double scan: every omitted index fails membership
  const auto orb = orbit(swap, {1, 2}, 9);
  for (int n = 0; n <= 9; ++n) {
    const bool in = std::find(e.indices.begin(), e.indices.end(), n) != e.indices.end();
    CHECK(in == PlaneCurve::make(P("y - 2")).contains(orb.points[n]));
  }
  expect_code([] { return_set(RegularEndo::make(parse_poly_list({"x^2", "y^2", "z^2"}, default_variable_names(3))),
                              {1, 1, 1}, PlaneCurve::make(P("x")), 3); },
              ErrorCode::DimensionError);
}

TEST_CASE("periodic points on P1") {
  const auto a = periodic_points_p1(G("X^2", "Y^2"), 1);
  CHECK(a.points.size() == 3);
  CHECK(*a.fixed_form.degree() == 3);
  const auto b = periodic_points_p1(G("X^2", "Y^2"), 2);
  CHECK(*b.fixed_form.degree() == 5);
  CHECK(b.points.size() == 3);
  bool quadratic = false;
  for (const auto& f : b.factors) quadratic |= !f.point && f.degree == 2;
  CHECK(quadratic);
  const auto c = periodic_points_p1(G("Y^2", "X^2"), 2);
  int two_cycle = 0;
  for (const auto& [p, n] : c.points) two_cycle += n == 2;
  CHECK(two_cycle == 2);
  expect_code([] { periodic_points_p1(G("X", "Y"), 1); }, ErrorCode::UnsupportedDegree);
  // degree accounting d^p + 1
  for (int p = 1; p <= 3; ++p) CHECK(*periodic_points_p1(G("X^3 + Y^3", "X*Y^2"), p).fixed_form.degree() == (p == 1 ? 4 : p == 2 ? 10 : 28));
}

TEST_CASE("backward cycles") {
  const auto a = backward_cycle_at_infinity(G("X^3", "Y^3"), {1, 1}, 1, 4);
  for (const auto& p : a) CHECK(p == Point{1, 1});
  const auto g = G("Y^2", "X^2");
  const auto b = backward_cycle_at_infinity(g, {1, 0}, 2, 5);
  CHECK(b == std::vector<Point>{{1, 0}, {0, 1}, {1, 0}, {0, 1}, {1, 0}});
  for (std::size_t n = 0; n + 1 < b.size(); ++n) CHECK(g.apply(b[n + 1]) == b[n]);
  expect_code([] { backward_cycle_at_infinity(G("X^2", "Y^2"), {1, 2}, 1, 3); }, ErrorCode::NotPeriodic);
}

TEST_CASE("periodicity tests") {
  CHECK(rational_periodicity(G("X^5 + Y^5", "X^4*Y"), {0, 1}).first == PeriodStatus::NotPeriodic);
  CHECK(rational_periodicity(G("Y^2", "X^2"), {1, 0}) == std::pair{PeriodStatus::Periodic, 2});
  // roots of t^2 + t + 1 form a 2-cycle of t^2
  CHECK(factor_period(G("X^2", "Y^2"), parse_poly("X^2 + X*Y + Y^2", {"X", "Y"}), 6) == 2);
  CHECK(!factor_period(G("X^2", "Y^2"), parse_poly("X^2 - 2*Y^2", {"X", "Y"}), 6));
}

TEST_CASE("condition k") {
  const auto i = condition_k(example_i());
  CHECK(i.verdict == Verdict::Fails);
  REQUIRE(i.witness);
  CHECK(i.witness->e == 3);

  const auto ii = condition_k(E("(x^4 + y^4)/2 - 6", "x*y*(x^2 + y^2)/2"));
  CHECK(ii.k == 4);
  CHECK(ii.verdict == Verdict::Fails);
  REQUIRE(ii.witness);
  REQUIRE(ii.witness->point);
  CHECK(*ii.witness->point == Point{1, 1});
  CHECK(ii.witness->e == 2);

  const auto h = condition_k(E("x^5 + y^5", "x^4*y"));
  CHECK(h.verdict == Verdict::Holds);
  CHECK(h.k == 5);
  bool preperiodic = false;
  for (const auto& e : h.certificate) {
    if (e.point && *e.point == Point{0, 1}) preperiodic = e.e == 4 && e.status == PeriodStatus::NotPeriodic;
    if (!e.point) CHECK(e.e == 2);
  }
  CHECK(preperiodic);
  expect_code([] { condition_k(RegularEndo::make(parse_poly_list({"x^2", "y^2", "z^2"}, default_variable_names(3)))); },
              ErrorCode::UnsupportedDimension);
  const auto c3 = condition_k(RegularEndo::make(parse_poly_list({"x^2", "y^2", "z^2"}, default_variable_names(3))), 6,
                              {{1, 0, 0}});
  CHECK(c3.verdict == Verdict::Fails);
}
