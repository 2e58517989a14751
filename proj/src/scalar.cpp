#include "regdyn/scalar.hpp"

#include <algorithm>
#include <cctype>

#include "regdyn/error.hpp"

namespace regdyn {

Field Field::prime(std::uint64_t p) {
  if (p < 2 || !integers::is_prime(Integer(std::to_string(p)))) {
    throw Error("core", ErrorCode::InvalidInput,
                "field modulus " + std::to_string(p) + " is not prime");
  }
  return Field(p);
}

Rational Field::reduce(const Rational& value) const {
  if (p_ == 0) {
    Rational q = value;
    q.canonicalize();
    return q;
  }
  Integer p(static_cast<unsigned long>(p_));
  Integer den = value.get_den();
  Integer den_mod = den % p;
  if (den_mod == 0) {
    throw Error("core", ErrorCode::InvalidCoefficient,
                "denominator divisible by the field characteristic");
  }
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den_mod.get_mpz_t(), p.get_mpz_t());
  Integer r = (Integer(value.get_num()) * inv) % p;
  if (r < 0) r += p;
  return Rational(r);
}

Rational Field::inverse(const Rational& value) const {
  if (value == 0) {
    throw Error("core", ErrorCode::DegenerateInput, "division by zero");
  }
  if (p_ == 0) return 1 / value;
  Integer p(static_cast<unsigned long>(p_));
  Integer v = value.get_num();
  Integer inv;
  mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return Rational(inv);
}

std::string Field::to_string() const {
  return p_ == 0 ? "Q" : "Fp:" + std::to_string(p_);
}

Scalar::Scalar(Rational value, Field field)
    : value_(field.reduce(value)), field_(field) {}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_)) {
    throw Error("core", ErrorCode::FieldMismatch,
                field_.to_string() + " vs " + o.field_.to_string());
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  return Scalar(value_ + o.value_, field_);
}
Scalar Scalar::operator-(const Scalar& o) const {
  check_same_field(o);
  return Scalar(value_ - o.value_, field_);
}
Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  return Scalar(value_ * o.value_, field_);
}
Scalar Scalar::operator/(const Scalar& o) const {
  check_same_field(o);
  return Scalar(value_ * field_.inverse(o.value_), field_);
}
Scalar Scalar::operator-() const { return Scalar(-value_, field_); }

std::string Scalar::to_string() const { return rational_to_string(value_); }

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw Error("core", ErrorCode::InvalidCoefficient, "malformed rational '" + text + "'");
  }
  Integer d(den);
  if (d == 0) {
    throw Error("core", ErrorCode::InvalidCoefficient, "zero denominator in '" + text + "'");
  }
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

namespace integers {

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto f = [&](const Integer& v) -> Integer { return (v * v + c) % n; };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer diff = abs(x - y);
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factor(const Integer& n) {
  if (n == 0) throw Error("core", ErrorCode::DegenerateInput, "factor(0)");
  Integer m = abs(n);
  std::vector<Integer> primes;
  for (unsigned long p = 2; p < 1000 && m > 1; p += (p == 2 ? 1 : 2)) {
    while (m % p == 0) {
      primes.emplace_back(p);
      m /= p;
    }
  }
  factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, unsigned>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factor(n)) {
    std::size_t count = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

long valuation(const Rational& x, const Integer& p) {
  if (x == 0) throw Error("core", ErrorCode::DegenerateInput, "valuation of zero");
  long v = 0;
  Integer num = x.get_num();
  Integer den = x.get_den();
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

Integer lcm_of_denominators(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

Integer gcd_of_numerators(const std::vector<Rational>& values) {
  Integer g = 0;
  for (const auto& v : values) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  return g;
}

}  // namespace integers

}  // namespace regdyn
