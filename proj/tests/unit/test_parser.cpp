#include <functional>

#include "doctest.h"
#include "regdyn/error.hpp"
#include "regdyn/parser.hpp"
#include "regdyn/rng.hpp"

using namespace regdyn;

namespace {

const std::vector<std::string> xy{"x", "y"};

void expect_code(const std::function<void()>& fn, ErrorCode code, const std::string& module = "parser") {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
    CHECK(e.module() == module);
  }
}

}  // namespace

TEST_CASE("basic polynomials") {
  const auto p = parse_poly("x^2 - y^2 - 4", xy);
  CHECK(p.term_count() == 3);
  CHECK(p.coefficient({0, 0}) == -4);
  const auto q = parse_poly("3/2*x*y + x^4", xy);
  CHECK(q.term_count() == 2);
  CHECK(q.coefficient({1, 1}) == Rational(3, 2));
  CHECK(q.coefficient({4, 0}) == 1);
  CHECK(parse_poly("-x + 0", xy) == parse_poly("-1*x", xy));
  CHECK(parse_poly("(3/2)*x", xy) == parse_poly("3/2*x", xy));
  CHECK(parse_poly("(x^4+y^4)/2 - 6", xy) == parse_poly("1/2*x^4 + 1/2*y^4 - 6", xy));
  CHECK(parse_poly("x1*x2", xy) == parse_poly("x*y", xy));
}

TEST_CASE("syntax errors carry offsets") {
  try {
    parse_poly("x^", xy);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 2);
    CHECK(e.qualified_code() == "parser.SyntaxError");
  }
  try {
    parse_poly("3x", xy);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 1);
  }
  expect_code([] { parse_poly("x + + y", xy); }, ErrorCode::SyntaxError);
  expect_code([] { parse_poly("(x + y", xy); }, ErrorCode::SyntaxError);
  expect_code([] { parse_poly("", xy); }, ErrorCode::SyntaxError);
  expect_code([] { parse_poly("z", xy); }, ErrorCode::UnknownVariable);
  expect_code([] { parse_poly("x/0", xy); }, ErrorCode::InvalidCoefficient);
  expect_code([] { parse_poly("1/0*x", xy); }, ErrorCode::InvalidCoefficient);
}

TEST_CASE("custom environments and prime fields") {
  const std::vector<std::string> env{"u", "v", "w"};
  const auto p = parse_poly("u*w^2 - v", env);
  CHECK(p.coefficient({1, 0, 2}) == 1);
  expect_code([&] { parse_poly("x", env); }, ErrorCode::UnknownVariable);
  const auto f = parse_poly("7*x + 3", xy, Field::prime(5));
  CHECK(f.coefficient({1, 0}) == 2);
  CHECK(parse_field("Fp:5") == Field::prime(5));
  expect_code([] { parse_field("R"); }, ErrorCode::SchemaError);
}

TEST_CASE("render round trip fixpoint") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    // random term sequence, checked against direct term-map construction
    MultiPoly direct(2);
    std::string text;
    const int terms = static_cast<int>(rng.uniform_int(1, 6));
    for (int t = 0; t < terms; ++t) {
      const Rational c = rng.rational(20, 6);
      const auto ex = static_cast<std::uint32_t>(rng.uniform_int(0, 5));
      const auto ey = static_cast<std::uint32_t>(rng.uniform_int(0, 5));
      direct = direct + MultiPoly::monomial({ex, ey}, c);
      text += (c < 0 ? " - " : " + ") + rational_to_string(abs(c)) + "*x^" + std::to_string(ex) +
              "*y^" + std::to_string(ey);
    }
    const auto parsed = parse_poly(text, xy);
    CHECK(parsed == direct);
    const auto r1 = render(parsed, xy);
    CHECK(parse_poly(r1, xy) == parsed);
    CHECK(render(parse_poly(r1, xy), xy) == r1);
  }
}

TEST_CASE("points and rational functions") {
  CHECK(parse_point("2, 0") == Point{2, 0});
  CHECK(parse_point("[0:1:-1]") == Point{0, 1, -1});
  CHECK(parse_point("(1/2,3)") == Point{Rational(1, 2), 3});
  const auto [n, d] = parse_rational_function("t^2 + 1/(t)");
  CHECK(n == parse_poly("t^2 + 1", {"t"}));
  CHECK(d == parse_poly("t", {"t"}));
  const auto [n2, d2] = parse_rational_function("t - 1");
  CHECK(d2.is_constant());
  expect_code([] { parse_rational_function("t/(0)"); }, ErrorCode::InvalidCoefficient);
}

TEST_CASE("jobs") {
  const auto job = parse_job(R"j({"kind":"orbit","f":["x^3-3*x","y^3+3*y"],"start":[2,0],"n_max":5})j");
  CHECK(job.kind == "orbit");
  CHECK(job.n == 2);
  CHECK(job.n_max == 5);
  CHECK(job.start == Point{2, 0});
  const auto obj = parse_job(
      R"j({"kind":"invariant","f":{"n":2,"components":["x^5+(x^2-y^2-1)*y^3","y^5"],"field":"Fp:5"},
          "curve":{"kind":"plane","poly":"x^2-y^2-1"}})j");
  CHECK(obj.field == Field::prime(5));
  CHECK(obj.curve.has_value());
  const auto param = parse_job(R"j({"kind":"infinity","curve":{"kind":"param","coords":["t^2+1/(t)","t^2-1/(t)"]}})j");
  CHECK(param.curve->parametric);
  CHECK(param.curve->coords.size() == 2);
  const auto places = parse_job(R"j({"kind":"weil-check","statement":"chart-change","places":["inf","p:2"]})j");
  CHECK(places.places.size() == 2);

  expect_code([] { parse_job(R"j({"kind":"orbit","f":["x^2","y^2"],"start":[1,2,3]})j"); }, ErrorCode::DimensionError);
  expect_code([] { parse_job(""); }, ErrorCode::SchemaError);
  expect_code([] { parse_job("{}"); }, ErrorCode::SchemaError);
  expect_code([] { parse_job(R"j({"kind":"dance"})j"); }, ErrorCode::SchemaError);
  expect_code([] { parse_job(R"j({"kind":"orbit","f":["x^2","y^2"]})j"); }, ErrorCode::SchemaError);
  expect_code([] { parse_job(R"j({"kind":"height","point":[1,2],"n_max":"a"})j"); }, ErrorCode::SchemaError);
  expect_code([] { parse_job(R"j({"kind":"weil-check","statement":"x","places":["p:4"]})j"); }, ErrorCode::SchemaError);
  try {
    parse_job(R"j({"kind":"orbit","f":["x^2","y^2"],"start":[1,2],"seed":-1})j");
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("$.seed") != std::string::npos);
  }
}
