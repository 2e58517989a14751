#include <functional>

#include "doctest.h"
#include "regdyn/localalg.hpp"
#include "regdyn/parser.hpp"
#include "regdyn/rng.hpp"
#include "regdyn/unipoly.hpp"

using namespace regdyn;

namespace {

MultiPoly P(const std::string& s, std::size_t n = 2, Field f = Field()) {
  return parse_poly(s, default_variable_names(n), f);
}

std::vector<MultiPoly> M(const std::vector<std::string>& comps, Field f = Field()) {
  std::vector<MultiPoly> out;
  for (const auto& c : comps) out.push_back(P(c, comps.size(), f));
  return out;
}

ProjEndo G(const std::string& a, const std::string& b) {
  const std::vector<std::string> xy{"X", "Y"};
  return ProjEndo::make({parse_poly(a, xy), parse_poly(b, xy)});
}

MultiPoly random_binary_form(Rng& rng, int d, long h = 5) {
  MultiPoly f(2);
  for (int i = 0; i <= d; ++i) {
    f = f + MultiPoly::monomial({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(d - i)},
                                Rational(rng.uniform_int(-h, h)));
  }
  return f;
}

UniPoly random_unipoly(Rng& rng, int d) {
  std::vector<Rational> c;
  for (int i = 0; i <= d; ++i) c.push_back(Rational(rng.uniform_int(-4, 4)));
  if (c.back() == 0) c.back() = 1;
  return UniPoly(c);
}

void expect_code(const std::function<void()>& fn, ErrorCode code) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
    CHECK(e.module() == "localalg");
  }
}

}  // namespace

TEST_CASE("multiplicities of monomial-type maps") {
  CHECK(multiplicity_at(M({"x", "y"}), {0, 0}).value == 1);
  CHECK(multiplicity_at(M({"x^2", "y^2"}), {0, 0}).value == 4);
  CHECK(multiplicity_at(M({"2*y - x^2", "y^2"}), {0, 0}).value == 4);
  CHECK(multiplicity_at(M({"x^3", "y^2"}), {0, 0}).value == 6);
  CHECK(multiplicity_at(M({"x^2", "y^2"}), {1, 0}).value == 2);
  CHECK(multiplicity_at(M({"x^2", "y^2"}), {1, -3}).value == 1);
  CHECK(multiplicity_at(M({"x^2 + y", "y^2"}), {0, 0}).value == 4);
  CHECK(multiplicity_at(M({"x^2", "y^2", "z^2"}), {0, 0, 0}).value == 8);
  const auto r = multiplicity_at(M({"x^2", "y^2"}), {0, 0}, Point{0, 0});
  CHECK(r.stabilized);
  CHECK(r.trace.size() >= 2);
  CHECK(r.trace.back().second == 4);
}

TEST_CASE("multiplicity errors") {
  expect_code([] { multiplicity_at(M({"x*y", "x^2"}), {0, 0}); }, ErrorCode::NotIsolated);
  expect_code([] { multiplicity_at(M({"x", "y"}), {0, 0}, Point{1, 0}); }, ErrorCode::InvalidInput);
  expect_code([] { multiplicity_at(M({"x", "y"}), {0, 0, 0}); }, ErrorCode::DimensionError);
}

TEST_CASE("products of one-variable maps multiply multiplicities") {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const UniPoly a = random_unipoly(rng, static_cast<int>(rng.uniform_int(1, 4)));
    const UniPoly b = random_unipoly(rng, static_cast<int>(rng.uniform_int(1, 4)));
    const Rational s = Rational(rng.uniform_int(-2, 2)), t = Rational(rng.uniform_int(-2, 2));
    const int ea = root_multiplicity(a - UniPoly({a.evaluate(s)}), s);
    const int eb = root_multiplicity(b - UniPoly({b.evaluate(t)}), t);
    const std::vector<MultiPoly> map{a.to_multi(2, 0), b.to_multi(2, 1)};
    CHECK(multiplicity_at(map, {s, t}).value == ea * eb);
  }
}

TEST_CASE("multiplicity over a prime field") {
  const Field f7 = Field::prime(7);
  CHECK(multiplicity_at(M({"x^2", "y^3"}, f7), {0, 0}).value == 6);
  CHECK(multiplicity_at(M({"x^2 + y", "y^2"}, f7), {0, 0}).value == 4);
}

TEST_CASE("ramification on P^1") {
  const auto cube = G("X^3", "Y^3");
  CHECK(ramification_index_p1(cube, {0, 1}) == 3);
  CHECK(ramification_index_p1(cube, {1, 0}) == 3);
  CHECK(ramification_index_p1(cube, {1, 1}) == 1);
  CHECK(multiplicity_projective(cube, {0, 1}).value == 3);
  CHECK(multiplicity_projective(cube, {1, 1}).value == 1);

  const auto prof = max_multiplicity_p1(G("X^4 + Y^4", "X*Y*(X^2+Y^2)"));
  CHECK(prof.max_index == 2);
  const auto lattes = G("(X^2+Y^2)^2", "4*X*Y*(X^2-Y^2)");
  CHECK(lattes.degree() == 4);
  CHECK(max_multiplicity_p1(lattes).max_index == 2);
  CHECK(max_multiplicity_p1(cube).max_index == 3);
  CHECK(max_multiplicity_p1(G("X", "Y")).max_index == 1);
  // Riemann-Hurwitz: the Wronskian has degree 2d - 2
  CHECK(*prof.wronskian.degree() == 6);

  const std::vector<std::string> xy{"X", "Y"};
  const auto f5 = ProjEndo::make({parse_poly("X^2", xy, Field::prime(5)), parse_poly("Y^2", xy, Field::prime(5))});
  expect_code([&] { max_multiplicity_p1(f5); }, ErrorCode::UnsupportedField);
  expect_code([&] { ramification_index_p1(f5, {0, 1}); }, ErrorCode::UnsupportedField);
}

TEST_CASE("fibers have total degree d") {
  Rng rng(12);
  int checked = 0;
  while (checked < 30) {
    const int d = static_cast<int>(rng.uniform_int(1, 4));
    ProjEndo g;
    try {
      g = ProjEndo::make({random_binary_form(rng, d), random_binary_form(rng, d)});
    } catch (const Error&) {
      continue;
    }
    const Point q{rng.rational(4, 3), Rational(1)};
    int total = 0;
    for (const auto& e : fiber_p1(g, q)) {
      total += e.index * e.residue_degree;
      if (e.point) {
        CHECK(projectively_equal(g.apply(*e.point), q));
        CHECK(ramification_index_p1(g, *e.point) == e.index);
      }
    }
    CHECK(total == d);
    ++checked;
  }
}

TEST_CASE("Macaulay multiplicity equals the ramification index on P^1") {
  Rng rng(2024);
  int checked = 0;
  while (checked < 50) {
    const int d = static_cast<int>(rng.uniform_int(2, 4));
    // force ramification at [0:1] half of the time
    MultiPoly g0 = random_binary_form(rng, d, 4);
    MultiPoly g1 = random_binary_form(rng, d, 4);
    if (checked % 2 == 0) {
      const int e = static_cast<int>(rng.uniform_int(2, d));
      g0 = P("x^" + std::to_string(e)) * random_binary_form(rng, d - e, 4);
    }
    ProjEndo g;
    try {
      g = ProjEndo::make({g0, g1});
    } catch (const Error&) {
      continue;
    }
    for (const Point& p : {Point{0, 1}, Point{1, 0}, Point{1, 1}, Point{rng.rational(3, 2), Rational(1)}}) {
      CHECK(multiplicity_projective(g, p).value == ramification_index_p1(g, p));
    }
    ++checked;
  }
}

TEST_CASE("chain rule for ramification") {
  Rng rng(31);
  int checked = 0;
  while (checked < 20) {
    ProjEndo f, g;
    try {
      f = ProjEndo::make({random_binary_form(rng, 2, 3), random_binary_form(rng, 2, 3)});
      g = ProjEndo::make({random_binary_form(rng, 2, 3), random_binary_form(rng, 2, 3)});
    } catch (const Error&) {
      continue;
    }
    const Point p{rng.rational(3, 2), Rational(1)};
    CHECK(ramification_index_p1(g.compose(f), p) == ramification_index_p1(f, p) * ramification_index_p1(g, f.apply(p)));
    ++checked;
  }
}

TEST_CASE("intersection numbers at infinity") {
  const auto c = P("x^2 - y^2 - 4");
  CHECK(intersection_number_at_infinity(c, {0, 1, 1}) == 1);
  CHECK(intersection_number_at_infinity(c, {0, 1, -1}) == 1);
  CHECK(intersection_number_at_infinity(P("y - x^2"), {0, 0, 1}) == 2);
  expect_code([&] { intersection_number_at_infinity(c, {0, 1, 0}); }, ErrorCode::NotOnCurve);
  expect_code([&] { intersection_number_at_infinity(c, {1, 1, 1}); }, ErrorCode::NotOnCurve);
}

TEST_CASE("rational common zeros") {
  const auto z = rational_common_zeros(P("x^2 - 1"), P("y - x"));
  REQUIRE(z.size() == 2);
  CHECK(z[0] == Point{-1, -1});
  CHECK(z[1] == Point{1, 1});
  CHECK(rational_common_zeros(P("x^2 + 1"), P("y")).empty());
  CHECK(rational_common_zeros(P("x*y"), P("x + y")) == std::vector<Point>{{0, 0}});
}

TEST_CASE("jacobian criterion") {
  // nonconstant Jacobian gives at least 2 somewhere
  CHECK(survey_multiplicity_a2(RegularEndo::make(M({"x^2", "y^2"}))) == 4);
  CHECK(survey_multiplicity_a2(RegularEndo::make(M({"x^2 + y", "y^2 + x"}))) >= 2);
  CHECK(survey_multiplicity_a2(RegularEndo::make(M({"x + y", "y"}))) == 1);
}

TEST_CASE("survey is deterministic") {
  const auto a = survey_max_multiplicity(1, 3, 40, 10, 7);
  const auto b = survey_max_multiplicity(1, 3, 40, 10, 7);
  CHECK(a.values == b.values);
  CHECK(a.samples == 40);
  for (int e : a.values) CHECK((e >= 1 && e <= 3));
  const auto inj = survey_max_multiplicity(1, 3, 5, 10, 7, {G("X^3", "Y^3")});
  CHECK(inj.values.front() == 3);
  CHECK(inj.samples == 6);
  const auto two = survey_max_multiplicity(2, 2, 10, 5, 3);
  for (int e : two.values) CHECK((e >= 1 && e <= 4));
  expect_code([] { survey_max_multiplicity(3, 2, 10, 5, 3); }, ErrorCode::UnsupportedDimension);
}
