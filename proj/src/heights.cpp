#include "regdyn/heights.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "regdyn/error.hpp"

namespace regdyn {

Place Place::finite(const Integer& p) {
  if (!integers::is_prime(p)) {
    throw Error("heights", ErrorCode::InvalidInput, p.get_str() + " is not prime");
  }
  Place v;
  v.p_ = p;
  return v;
}

Place Place::parse(const std::string& literal) {
  if (literal == "inf") return infinity();
  if (literal.rfind("p:", 0) == 0) {
    const std::string digits = literal.substr(2);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      return finite(Integer(digits));
    }
  }
  throw Error("heights", ErrorCode::InvalidInput, "bad place literal '" + literal + "'");
}

std::string Place::to_string() const { return archimedean() ? "inf" : "p:" + p_.get_str(); }

std::vector<Place> parse_places(const std::string& comma_separated) {
  std::vector<Place> out;
  std::stringstream ss(comma_separated);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty()) out.push_back(Place::parse(item));
  }
  return out;
}

Rational abs_value(const Place& v, const Rational& x) {
  if (x == 0) return 0;
  if (v.archimedean()) return abs(x);
  const long k = integers::valuation(x, v.prime());
  Integer pk;
  mpz_pow_ui(pk.get_mpz_t(), v.prime().get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
  Rational r = k >= 0 ? Rational(1, pk) : Rational(pk);
  r.canonicalize();
  return r;
}

LogValue log_abs(const Place& v, const Rational& x) {
  if (x == 0) throw Error("heights", ErrorCode::DegenerateInput, "log of |0|");
  return LogValue::log_of(abs_value(v, x));
}

std::vector<Place> relevant_places(const std::vector<Rational>& values) {
  std::set<Integer> primes;
  for (const auto& x : values) {
    if (x == 0) continue;
    for (const Integer& part : {Integer(x.get_num()), Integer(x.get_den())}) {
      if (abs(part) <= 1) continue;
      for (const auto& [p, e] : integers::factor(part)) primes.insert(p);
    }
  }
  std::vector<Place> out{Place::infinity()};
  for (const auto& p : primes) out.push_back(Place::finite(p));
  return out;
}

LogValue naive_height(const Point& projective) {
  if (std::all_of(projective.begin(), projective.end(), [](const Rational& v) { return v == 0; })) {
    throw Error("heights", ErrorCode::DegenerateInput, "height of the zero vector");
  }
  LogValue h;
  for (const auto& v : relevant_places(projective)) {
    Rational best = 0;
    for (const auto& x : projective) best = std::max(best, abs_value(v, x));
    h += LogValue::log_of(best);
  }
  return h;
}

Integer height_bound_of(const Point& projective) {
  Integer best = 0;
  for (const auto& x : normalize_projective(projective)) best = std::max(best, Integer(abs(x.get_num())));
  return best;
}

LogValue product_formula_check(const Rational& x) {
  if (x == 0) throw Error("heights", ErrorCode::DegenerateInput, "product formula at zero");
  LogValue sum;
  for (const auto& v : relevant_places({x})) sum += log_abs(v, x);
  return sum;
}

std::vector<Point> points_of_bounded_height(int n, const Integer& bound) {
  if (n < 0) throw Error("heights", ErrorCode::DimensionError, "negative projective dimension");
  std::vector<Point> out;
  if (bound < 1) return out;
  const std::size_t len = static_cast<std::size_t>(n) + 1;
  Integer total = 1;
  for (std::size_t i = 0; i < len; ++i) total *= 2 * bound + 1;
  if (total > 20000000) throw Error("heights", ErrorCode::ResourceLimit, "enumeration too large");
  const long b = bound.get_si();
  std::vector<long> v(len, -b);
  while (true) {
    auto first = std::find_if(v.begin(), v.end(), [](long c) { return c != 0; });
    if (first != v.end() && *first > 0) {
      long g = 0;
      for (long c : v) g = std::gcd(g, c < 0 ? -c : c);
      if (g == 1) {
        Point p;
        for (long c : v) p.emplace_back(c);
        out.push_back(std::move(p));
      }
    }
    std::size_t i = len;
    while (i > 0) {
      --i;
      if (v[i] < b) {
        ++v[i];
        break;
      }
      v[i] = -b;
      if (i == 0) return out;
    }
  }
}

}  // namespace regdyn
