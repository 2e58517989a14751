#include <cmath>
#include <functional>

#include "doctest.h"
#include "regdyn/error.hpp"
#include "regdyn/linalg.hpp"
#include "regdyn/logvalue.hpp"
#include "regdyn/parser.hpp"
#include "regdyn/point.hpp"
#include "regdyn/rng.hpp"
#include "regdyn/unipoly.hpp"

using namespace regdyn;

namespace {

MultiPoly P(const std::string& s, std::size_t n = 2, Field f = Field()) {
  return parse_poly(s, default_variable_names(n), f);
}

MultiPoly random_poly(Rng& rng, std::size_t nvars, int max_deg, int terms, Field f) {
  MultiPoly p(nvars, f);
  for (int t = 0; t < terms; ++t) {
    Exponents e(nvars, 0);
    int budget = static_cast<int>(rng.uniform_int(0, max_deg));
    for (std::size_t i = 0; i < nvars && budget > 0; ++i) {
      const int k = static_cast<int>(rng.uniform_int(0, budget));
      e[i] = static_cast<std::uint32_t>(k);
      budget -= k;
    }
    p = p + MultiPoly::monomial(e, rng.rational(9, 4), f);
  }
  return p;
}

void expect_code(const std::function<void()>& fn, ErrorCode code) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("scalar canonical forms") {
  Scalar a(Rational(6, -4));
  CHECK(a.value() == Rational(-3, 2));
  CHECK(a.value().get_den() == 2);
  Scalar b(Rational(-1), Field::prime(7));
  CHECK(b.value() == 6);
  CHECK((Scalar(3, Field::prime(7)) / Scalar(5, Field::prime(7))).value() == 2);
  expect_code([] { Field::prime(8); }, ErrorCode::InvalidInput);
  expect_code([] { Scalar(1) + Scalar(1, Field::prime(5)); }, ErrorCode::FieldMismatch);
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  expect_code([] { parse_rational("1/0"); }, ErrorCode::InvalidCoefficient);
}

TEST_CASE("integer helpers") {
  auto f = integers::factor(Integer(360));
  REQUIRE(f.size() == 3);
  CHECK(f[0].first == 2);
  CHECK(f[0].second == 3);
  CHECK(integers::divisors(Integer(12)).size() == 6);
  CHECK(integers::valuation(Rational(9, 2), Integer(3)) == 2);
  CHECK(integers::valuation(Rational(9, 2), Integer(2)) == -1);
  Integer big = Integer("1000000007") * Integer("998244353");
  auto g = integers::factor(big);
  REQUIRE(g.size() == 2);
  CHECK(g[0].first == Integer("998244353"));
}

TEST_CASE("top_form") {
  CHECK(P("x^3 - 3*x", 1).top_form() == P("x^3", 1));
  CHECK(P("x^2 - y^2 - 4").top_form() == P("x^2 - y^2"));
  CHECK(P("(x^4+y^4)/2 - 6").top_form() == P("1/2*x^4 + 1/2*y^4"));
  expect_code([] { MultiPoly(2).top_form(); }, ErrorCode::DegenerateInput);
  CHECK_FALSE(MultiPoly(2).degree().has_value());
}

TEST_CASE("homogenize and dehomogenize") {
  const auto h = P("x^2 - y^2 - 4").homogenize(2);
  CHECK(h == P("x2^2 - x3^2 - 4*x1^2", 3));
  CHECK(P("x^3 - 3*x", 1).homogenize(3) == P("x2^3 - 3*x1^2*x2", 2));
  CHECK(MultiPoly::constant(2, 1).homogenize(0) == MultiPoly::constant(3, 1));
  CHECK(h.dehomogenize() == P("x^2 - y^2 - 4"));
  expect_code([] { P("x^3").homogenize(2); }, ErrorCode::InvalidDegree);
}

TEST_CASE("squarefree decomposition") {
  auto t = [](std::vector<long> c) {
    std::vector<Rational> r(c.begin(), c.end());
    return UniPoly(r);
  };
  auto a = squarefree_decompose(t({0, -1, 0, 1}));
  REQUIRE(a.size() == 1);
  CHECK(a[0].second == 1);
  CHECK(a[0].first == t({0, -1, 0, 1}));
  auto b = squarefree_decompose(t({0, 0, -1, 1}));
  REQUIRE(b.size() == 2);
  CHECK(b[0] == std::make_pair(t({-1, 1}), 1));
  CHECK(b[1] == std::make_pair(t({0, 1}), 2));
  auto c = squarefree_decompose(t({0, 0, 0, 0, 9}));
  REQUIRE(c.size() == 1);
  CHECK(c[0] == std::make_pair(t({0, 1}), 4));
  expect_code([] { squarefree_decompose(UniPoly()); }, ErrorCode::DegenerateInput);
}

TEST_CASE("squarefree decomposition recomposes") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    UniPoly p({Rational(rng.nonzero_rational(5, 3))});
    const int parts = static_cast<int>(rng.uniform_int(1, 3));
    for (int i = 0; i < parts; ++i) {
      UniPoly lin({rng.rational(4, 3), Rational(1)});
      const int m = static_cast<int>(rng.uniform_int(1, 3));
      for (int j = 0; j < m; ++j) p = p * lin;
    }
    UniPoly back({Rational(1)});
    int last = 0;
    for (const auto& [f, m] : squarefree_decompose(p)) {
      CHECK(m > last);
      last = m;
      CHECK(gcd(f, f.derivative()).degree() == 0);
      for (int j = 0; j < m; ++j) back = back * f;
    }
    CHECK(back.scaled(p.leading()) == p);
  }
}

TEST_CASE("resultant examples") {
  CHECK(resultant(P("x^2 - y"), P("x - y"), 0) == P("y^2 - y"));
  CHECK(resultant(P("x^3"), P("y^3"), 0, 3, 3) == P("y^9"));
  CHECK(resultant(P("x"), P("x"), 0).is_zero());
  expect_code([] { resultant(P("y"), P("x"), 0); }, ErrorCode::InvalidDegree);
}

TEST_CASE("resultant vanishes exactly on a shared factor") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    UniPoly a({rng.rational(5, 2), rng.rational(5, 2), Rational(1)});
    UniPoly b({rng.rational(5, 2), Rational(1)});
    if (trial % 2 == 0) b = b * UniPoly({rng.rational(3, 1), Rational(1)});
    if (trial % 4 == 0) a = a * b;
    const MultiPoly ma = a.to_multi(1, 0);
    const MultiPoly mb = b.to_multi(1, 0);
    const bool shared = gcd(a, b).degree() > 0;
    CHECK(resultant(ma, mb, 0).is_zero() == shared);
  }
}

TEST_CASE("ring axioms and degree multiplicativity") {
  for (Field f : {Field::rationals(), Field::prime(7)}) {
    Rng rng(f.modulus() + 3);
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_poly(rng, 3, 4, 4, f);
      auto b = random_poly(rng, 3, 4, 4, f);
      auto c = random_poly(rng, 3, 3, 3, f);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b - b == a);
      if (!a.is_zero() && !b.is_zero()) {
        CHECK(*(a * b).degree() == *a.degree() + *b.degree());
        CHECK((a * b).top_form() == a.top_form() * b.top_form());
        auto q = divide_exact(a * b, b);
        REQUIRE(q.has_value());
        CHECK(*q == a);
      }
    }
  }
}

TEST_CASE("polynomial gcd") {
  const auto g = gcd(P("(x - y)*(x + 2*y^2)"), P("(x - y)*(x^3 + 1)"));
  CHECK(g == P("x - y"));
  CHECK(squarefree_part(P("(x - y)^2*(x + 1)")) == P("(x - y)*(x + 1)").monic());
}

TEST_CASE("prime-field arithmetic") {
  const Field f5 = Field::prime(5);
  const auto p = P("x^5 + (x^2 - y^2 - 1)*y^3", 2, f5);
  CHECK(p.coefficient({2, 3}) == 1);
  CHECK(P("6*x", 2, f5) == P("x", 2, f5));
  CHECK(divides(P("x + 1", 2, f5), P("x^5 + 1", 2, f5)));
}

TEST_CASE("linear algebra") {
  Matrix m = Matrix::from_rows({{1, 2}, {3, 4}});
  CHECK(determinant(m) == -2);
  CHECK(inverse(m) * m == Matrix::identity(2));
  CHECK(rank(Matrix::from_rows({{1, 2}, {2, 4}})) == 1);
  expect_code([] { inverse(Matrix::from_rows({{1, 2}, {2, 4}})); }, ErrorCode::SingularMatrix);
  auto x = solve(m, {Rational(5), Rational(11)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 2);
  CHECK_FALSE(solve(Matrix::from_rows({{1, 1}, {1, 1}}), {Rational(1), Rational(2)}).has_value());
  SparseEchelon e;
  CHECK(e.insert({{0, 1}, {1, 2}}));
  CHECK(e.insert({{1, 1}}));
  CHECK_FALSE(e.insert({{0, 3}, {1, 1}}));
  CHECK(e.rank() == 2);
}

TEST_CASE("log values") {
  const auto zero = LogValue::log_of(6) - LogValue::log_of(2) - LogValue::log_of(3);
  CHECK(zero.is_zero());
  CHECK(LogValue::log_of(8) == LogValue::log_of(2).scaled(3));
  CHECK(LogValue::log_plus(Rational(1, 2)).is_zero());
  CHECK(compare(LogValue::log_of(3), LogValue::log_of(2)) == Ordering::Greater);
  CHECK(compare(LogValue::log_of(8), LogValue::log_of(2).scaled(3)) == Ordering::Equal);
  // 2^10 = 1024 > 1000 = 10^3: close logs resolved exactly
  CHECK(compare(LogValue::log_of(2).scaled(10), LogValue::log_of(10).scaled(3)) == Ordering::Greater);
  CHECK(compare(LogValue::constant(1), LogValue::log_of(3)) == Ordering::Less);
  CHECK(LogValue::log_of(Rational(9, 4)).to_string() == "-2*log(2) + 2*log(3)");
  CHECK(LogValue().to_string() == "0");
  CHECK(std::abs(LogValue::log_of(10).to_double() - std::log(10.0)) < 1e-12);
}

TEST_CASE("binary form splitting") {
  // 9 X^2 Y^2
  auto parts = split_binary_form(P("9*x^2*y^2"));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].point == Point{1, 0});
  CHECK(parts[0].multiplicity == 2);
  CHECK(parts[1].point == Point{0, 1});
  CHECK(parts[1].multiplicity == 2);
  auto w = split_binary_form(P("(x^2 - y^2)*(x^4 + 4*x^2*y^2 + y^4)"));
  int points = 0;
  int total = 0;
  for (const auto& b : w) {
    if (b.point) ++points;
    total += b.degree * b.multiplicity;
    if (!b.point) CHECK(b.factor == P("x^4 + 4*x^2*y^2 + y^4"));
  }
  CHECK(points == 2);
  CHECK(total == 6);
  CHECK(linear_factor_multiplicity(P("x^3*(x - y)"), Point{0, 1}) == 3);
  CHECK(linear_factor_multiplicity(P("x^3*(x - y)"), Point{1, 0}) == 0);
  CHECK(normalize_projective({Rational(-6), Rational(4)}) == Point{3, -2});
}
