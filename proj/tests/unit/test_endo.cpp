#include <functional>

#include "doctest.h"
#include "regdyn/endo.hpp"
#include "regdyn/parser.hpp"
#include "regdyn/rng.hpp"

using namespace regdyn;

namespace {

MultiPoly P(const std::string& s, std::size_t n = 2, Field f = Field()) {
  return parse_poly(s, default_variable_names(n), f);
}

RegularEndo E(const std::vector<std::string>& comps, Field f = Field()) {
  std::vector<MultiPoly> out;
  for (const auto& c : comps) out.push_back(P(c, comps.size(), f));
  return RegularEndo::make(out);
}

ProjEndo G(const std::string& a, const std::string& b) {
  const std::vector<std::string> xy{"X", "Y"};
  return ProjEndo::make({parse_poly(a, xy), parse_poly(b, xy)});
}

void expect_code(const std::function<void()>& fn, ErrorCode code) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
    CHECK(e.module() == "endo");
  }
}

MultiPoly random_binary_form(Rng& rng, int d) {
  MultiPoly f(2);
  for (int i = 0; i <= d; ++i) {
    f = f + MultiPoly::monomial({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(d - i)},
                                Rational(rng.uniform_int(-4, 4)));
  }
  return f;
}

}  // namespace

TEST_CASE("construction and degree gap") {
  const auto f1 = E({"x^3 - 3*x", "y^3 + 3*y"});
  CHECK(f1.d() == 3);
  CHECK(degree_gap(f1) == 2);
  CHECK(f1.certification() == Certification::Certified);
  const auto f2 = E({"(x^4+y^4)/2 - 6", "x*y*(x^2+y^2)/2"});
  CHECK(degree_gap(f2) == 4);
  const auto sq = E({"x^2", "y^2"});
  CHECK(sq.d() == 2);
  CHECK(sq.k() == 2);
  CHECK(f1.tails()[0] == P("-3*x"));
  CHECK(f1.lift().components()[1] == P("x2^3 - 3*x1^2*x2", 3));
}

TEST_CASE("non-regular maps") {
  try {
    E({"x*y", "x^2"});
    FAIL("expected NotRegular");
  } catch (const NotRegularError& e) {
    CHECK(e.qualified_code() == "endo.NotRegular");
    REQUIRE(e.witness().has_value());
    CHECK(*e.witness() == Point{0, 1});
  }
  expect_code([] { RegularEndo::make({}); }, ErrorCode::DegenerateInput);
  expect_code([] { E({"x + y", "x + y + 1"}); }, ErrorCode::NotRegular);
  expect_code([] { E({"x^2", "1"}); }, ErrorCode::NotRegular);
  expect_code([] { E({"3", "1"}); }, ErrorCode::DegenerateInput);
  expect_code([] { RegularEndo::make({P("x^2"), P("y^2", 3)}); }, ErrorCode::DimensionError);
  // N = 3: x*y, y*z, z*x all vanish on [1:0:0]
  expect_code([] { E({"x*y", "y*z", "z*x"}); }, ErrorCode::NotRegular);
  CHECK(E({"x^2 + y", "y^2", "z^2 + x*y"}).d() == 2);
  const Field f5 = Field::prime(5);
  CHECK(E({"x^5 + (x^2-y^2-1)*y^3", "y^5"}, f5).k() == 2);
  expect_code([] { E({"x^2 - y^2", "x*y - y^2"}, Field::prime(5)); }, ErrorCode::NotRegular);
}

TEST_CASE("regularity agrees with resultants for binary forms") {
  Rng rng(17);
  int irregular = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int d = static_cast<int>(rng.uniform_int(1, 4));
    MultiPoly a = random_binary_form(rng, d);
    MultiPoly b = random_binary_form(rng, d);
    if (trial % 3 == 0 && d > 1) {
      const MultiPoly common = random_binary_form(rng, 1);
      a = common * random_binary_form(rng, d - 1);
      b = common * random_binary_form(rng, d - 1);
    }
    if (a.is_zero() || b.is_zero()) continue;
    const bool by_resultant = !resultant(a, b, 0, d, d).is_zero();
    const auto rep = check_base_point_free({a, b});
    CHECK(rep.regular == by_resultant);
    CHECK(rep.certification == Certification::Certified);
    if (!rep.regular) {
      ++irregular;
      REQUIRE(rep.witness.has_value());
      CHECK(a.evaluate(*rep.witness) == 0);
      CHECK(b.evaluate(*rep.witness) == 0);
    }
  }
  CHECK(irregular > 5);
}

TEST_CASE("restriction to infinity") {
  CHECK(restrict_infinity(E({"x^3 - 3*x", "y^3 + 3*y"})) == G("X^3", "Y^3"));
  CHECK(restrict_infinity(E({"(x^4+y^4)/2 - 6", "x*y*(x^2+y^2)/2"})) == G("X^4 + Y^4", "X^3*Y + X*Y^3"));
  CHECK(restrict_infinity(E({"x^2 + y", "y^2 + x"})) == G("X^2", "Y^2"));
  CHECK(G("X^4 + Y^4", "X*Y*(X^2+Y^2)").to_string() == "[X^4 + Y^4 : X^3*Y + X*Y^3]");
}

TEST_CASE("iteration") {
  const auto sq = E({"x^2", "y^2"});
  const auto sq2 = iterate(sq, 2);
  CHECK(sq2.components()[0] == P("x^4"));
  CHECK(sq2.k() == 4);
  CHECK(iterate(sq, 1) == sq);
  const auto f1 = E({"x^3 - 3*x", "y^3 + 3*y"});
  const auto f9 = iterate(f1, 2);
  CHECK(f9.d() == 9);
  for (int n = 1; n <= 3; ++n) {
    CHECK(restrict_infinity(iterate(f1, n)) == restrict_infinity(f1).iterate(n));
    CHECK(iterate(sq, n).d() == (1 << n));
    CHECK(iterate(sq, n).k() == (1 << n));
  }
  const auto p = Point{2, 0};
  CHECK(iterate(f1, 3).apply(p) == f1.apply(f1.apply(f1.apply(p))));
  expect_code([&] { iterate(f1, 0); }, ErrorCode::InvalidInput);
}

TEST_CASE("linear conjugation") {
  const auto f1 = E({"x^3 - 3*x", "y^3 + 3*y"});
  CHECK(conjugate_linear(f1, Matrix::identity(2)) == f1);
  const auto swapped = conjugate_linear(f1, Matrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(swapped.components()[0] == P("x^3 + 3*x"));
  CHECK(swapped.components()[1] == P("y^3 - 3*y"));
  const auto diag = conjugate_linear(E({"x^2", "y^2"}), Matrix::from_rows({{1, 0}, {0, 2}}));
  CHECK(diag.components()[1] == P("1/2*y^2"));
  expect_code([&] { conjugate_linear(f1, Matrix::from_rows({{1, 2}, {2, 4}})); }, ErrorCode::SingularMatrix);

  Rng rng(8);
  const auto f2 = E({"(x^4+y^4)/2 - 6", "x*y*(x^2+y^2)/2"});
  for (int trial = 0; trial < 30; ++trial) {
    Matrix a(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) a.at(i, j) = rng.rational(5, 3);
    }
    if (determinant(a) == 0) continue;
    for (const auto& f : {f1, f2}) {
      const auto g = conjugate_linear(f, a);
      CHECK(g.d() == f.d());
      CHECK(g.k() == f.k());
      CHECK_NOTHROW(RegularEndo::make(g.components()));
    }
  }
}

TEST_CASE("symmetric square") {
  const std::vector<std::string> abc{"A", "B", "C"};
  const auto s = symmetric_square(G("X^2", "Y^2"));
  CHECK(s.components()[0] == parse_poly("A^2", abc));
  CHECK(s.components()[1] == parse_poly("2*A*C - B^2", abc));
  CHECK(s.components()[2] == parse_poly("C^2", abc));
  CHECK(s.to_string(abc) == "[A^2 : 2*A*C - B^2 : C^2]");
  const auto id = symmetric_square(G("X", "Y"));
  CHECK(id.components()[0] == parse_poly("A", abc));
  CHECK(id.components()[1] == parse_poly("B", abc));
  CHECK(id.components()[2] == parse_poly("C", abc));
  // affine trace in the chart A = 1
  CHECK(s.components()[1].dehomogenize() == P("2*y - x^2"));
  CHECK(s.components()[2].dehomogenize() == P("y^2"));
}

TEST_CASE("symmetric square commutes with the root map") {
  Rng rng(99);
  int checked = 0;
  while (checked < 40) {
    const int d = static_cast<int>(rng.uniform_int(1, 3));
    const MultiPoly g0 = random_binary_form(rng, d);
    const MultiPoly g1 = random_binary_form(rng, d);
    ProjEndo g;
    try {
      g = ProjEndo::make({g0, g1});
    } catch (const Error&) {
      continue;
    }
    const auto s = symmetric_square(g);
    const Rational r1 = rng.rational(6, 4), r2 = rng.rational(6, 4);
    // quadratic with roots [r1:1], [r2:1] is X^2 - (r1 + r2) X Y + r1 r2 Y^2
    const Point q{1, -(r1 + r2), r1 * r2};
    const Point i1 = g.apply({r1, 1}), i2 = g.apply({r2, 1});
    // (i1[1] X - i1[0] Y)(i2[1] X - i2[0] Y)
    const Point expected{i1[1] * i2[1], -(i1[1] * i2[0] + i1[0] * i2[1]), i1[0] * i2[0]};
    CHECK(projectively_equal(s.apply(q), expected));
    ++checked;
  }
}
