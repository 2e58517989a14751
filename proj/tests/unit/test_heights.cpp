#include <functional>
#include <set>

#include "doctest.h"
#include "regdyn/error.hpp"
#include "regdyn/heights.hpp"
#include "regdyn/rng.hpp"

using namespace regdyn;

namespace {

void expect_code(const std::function<void()>& fn, ErrorCode code) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

// Independent oracle: all integer vectors in [-B, B]^2, reduced to a
// canonical representative and deduplicated.
std::size_t brute_force_p1(long b) {
  std::set<std::pair<long, long>> seen;
  for (long x = -b; x <= b; ++x) {
    for (long y = -b; y <= b; ++y) {
      if (x == 0 && y == 0) continue;
      long g = std::gcd(std::abs(x), std::abs(y));
      long a = x / g, c = y / g;
      if (a < 0 || (a == 0 && c < 0)) {
        a = -a;
        c = -c;
      }
      seen.insert({a, c});
    }
  }
  return seen.size();
}

}  // namespace

TEST_CASE("absolute values") {
  CHECK(abs_value(Place::finite(3), Rational(9, 2)) == Rational(1, 9));
  CHECK(abs_value(Place::infinity(), Rational(-5, 2)) == Rational(5, 2));
  CHECK(abs_value(Place::finite(2), Rational(9, 2)) == 2);
  CHECK(abs_value(Place::finite(2), 0) == 0);
  expect_code([] { Place::finite(4); }, ErrorCode::InvalidInput);
  CHECK(Place::parse("p:7").prime() == 7);
  CHECK(Place::parse("inf").archimedean());
  expect_code([] { Place::parse("q:2"); }, ErrorCode::InvalidInput);
  CHECK(parse_places("inf, p:2,p:3").size() == 3);
}

TEST_CASE("multiplicativity and triangle inequalities") {
  Rng rng(9);
  const std::vector<Place> places{Place::infinity(), Place::finite(2), Place::finite(3), Place::finite(5)};
  for (int trial = 0; trial < 200; ++trial) {
    const Rational x = rng.nonzero_rational(1000, 1000);
    const Rational y = rng.nonzero_rational(1000, 1000);
    for (const auto& v : places) {
      CHECK(abs_value(v, x * y) == abs_value(v, x) * abs_value(v, y));
      const Rational s = abs_value(v, x + y);
      if (v.archimedean()) {
        CHECK(s <= abs_value(v, x) + abs_value(v, y));
      } else {
        CHECK(s <= std::max(abs_value(v, x), abs_value(v, y)));
      }
    }
  }
}

TEST_CASE("naive heights") {
  CHECK(naive_height({3, 2}) == LogValue::log_of(3));
  CHECK(naive_height({1, 1}).is_zero());
  CHECK(naive_height({6, 4}) == LogValue::log_of(3));
  CHECK(naive_height({Rational(1, 2), Rational(1, 3)}) == LogValue::log_of(3));
  expect_code([] { naive_height({0, 0}); }, ErrorCode::DegenerateInput);
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Point p{rng.rational(50, 20), rng.rational(50, 20), rng.nonzero_rational(50, 20)};
    const Rational s = rng.nonzero_rational(30, 30);
    const auto h = naive_height(p);
    CHECK(h == naive_height({p[0] * s, p[1] * s, p[2] * s}));
    CHECK(h == LogValue::log_of(Rational(height_bound_of(p))));
    CHECK(compare(h, LogValue()) != Ordering::Less);
  }
}

TEST_CASE("product formula") {
  CHECK(product_formula_check(6).is_zero());
  CHECK(product_formula_check(1).is_zero());
  CHECK(product_formula_check(Rational(-5, 3)).is_zero());
  Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    CHECK(product_formula_check(rng.nonzero_rational(1000000, 1000000)).is_zero());
  }
}

TEST_CASE("bounded height enumeration") {
  const auto one = points_of_bounded_height(1, 1);
  CHECK(one.size() == 4);
  CHECK(one == std::vector<Point>{{0, 1}, {1, -1}, {1, 0}, {1, 1}});
  CHECK(points_of_bounded_height(1, 2).size() == 8);
  CHECK(points_of_bounded_height(1, 0).empty());
  for (long b = 1; b <= 6; ++b) CHECK(points_of_bounded_height(1, b).size() == brute_force_p1(b));
}
