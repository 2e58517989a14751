#include "regdyn/logvalue.hpp"

#include <mpfr.h>

#include <cstdlib>
#include <vector>

#include "regdyn/error.hpp"

namespace regdyn {

namespace {

class BigFloat {
 public:
  explicit BigFloat(long bits) { mpfr_init2(v_, bits); }
  ~BigFloat() { mpfr_clear(v_); }
  BigFloat(const BigFloat&) = delete;
  BigFloat& operator=(const BigFloat&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

void evaluate(const LogValue& v, BigFloat& out, long bits) {
  BigFloat term(bits);
  mpfr_set_q(out.get(), v.plain().get_mpq_t(), MPFR_RNDN);
  for (const auto& [base, c] : v.logs()) {
    mpfr_set_z(term.get(), base.get_mpz_t(), MPFR_RNDN);
    mpfr_log(term.get(), term.get(), MPFR_RNDN);
    mpfr_mul_q(term.get(), term.get(), c.get_mpq_t(), MPFR_RNDN);
    mpfr_add(out.get(), out.get(), term.get(), MPFR_RNDN);
  }
}

// Sign of v against zero using a guard band of 2^-guard_bits.
Ordering numeric_sign(const LogValue& v, long bits, long guard_bits) {
  BigFloat x(bits);
  evaluate(v, x, bits);
  if (mpfr_zero_p(x.get()) || mpfr_get_exp(x.get()) <= -guard_bits) return Ordering::Inconclusive;
  return mpfr_sgn(x.get()) > 0 ? Ordering::Greater : Ordering::Less;
}

// Exact sign of sum c_b log b via comparison of integer powers.
Ordering power_sign(const LogValue& v) {
  std::vector<Rational> coeffs;
  for (const auto& [b, c] : v.logs()) coeffs.push_back(c);
  const Integer l = integers::lcm_of_denominators(coeffs);
  Integer budget = 0;
  for (const auto& [b, c] : v.logs()) {
    budget += abs(Integer(c.get_num() * (l / c.get_den()))) * mpz_sizeinbase(b.get_mpz_t(), 2);
  }
  if (budget > (1 << 22)) return Ordering::Inconclusive;
  Integer pos = 1;
  Integer neg = 1;
  for (const auto& [b, c] : v.logs()) {
    Integer e = c.get_num() * (l / c.get_den());
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), b.get_mpz_t(), Integer(abs(e)).get_ui());
    (e > 0 ? pos : neg) *= pw;
  }
  if (pos == neg) return Ordering::Equal;
  return pos > neg ? Ordering::Greater : Ordering::Less;
}

}  // namespace

void LogValue::add_log(const Integer& base, const Rational& coeff) {
  std::vector<std::pair<Integer, Rational>> work{{base, coeff}};
  while (!work.empty()) {
    auto [n, c] = work.back();
    work.pop_back();
    if (n == 1 || c == 0) continue;
    // log(r^k) = k log(r) with the smallest root r, peeling prime exponents
    while (mpz_perfect_power_p(n.get_mpz_t())) {
      bool peeled = false;
      const unsigned long bits = mpz_sizeinbase(n.get_mpz_t(), 2);
      for (unsigned long q = 2; q <= bits && !peeled; ++q) {
        if (!mpz_probab_prime_p(Integer(q).get_mpz_t(), 25)) continue;
        Integer r;
        if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), q) != 0) {
          n = r;
          c *= q;
          peeled = true;
        }
      }
      if (!peeled) break;
    }
    bool split = false;
    for (auto it = logs_.begin(); it != logs_.end(); ++it) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), it->first.get_mpz_t());
      if (g == 1) continue;
      Integer b = it->first;
      Rational d = it->second;
      logs_.erase(it);
      work.emplace_back(n / g, c);
      work.emplace_back(b / g, d);
      work.emplace_back(g, c + d);
      split = true;
      break;
    }
    if (!split) logs_.emplace(n, c);
  }
}

LogValue LogValue::log_of(const Rational& x) {
  if (x <= 0) throw Error("heights", ErrorCode::InvalidInput, "log of a nonpositive number");
  LogValue v;
  v.add_log(x.get_num(), 1);
  v.add_log(x.get_den(), -1);
  return v;
}

LogValue LogValue::log_plus(const Rational& x) {
  if (x <= 0) throw Error("heights", ErrorCode::InvalidInput, "log of a nonpositive number");
  return x <= 1 ? LogValue() : log_of(x);
}

LogValue LogValue::constant(const Rational& c) {
  LogValue v;
  v.plain_ = c;
  return v;
}

LogValue LogValue::operator+(const LogValue& o) const {
  LogValue r = *this;
  for (const auto& [b, c] : o.logs_) r.add_log(b, c);
  r.plain_ += o.plain_;
  return r;
}

LogValue LogValue::operator-() const { return scaled(-1); }

LogValue LogValue::operator-(const LogValue& o) const { return *this + (-o); }

LogValue LogValue::scaled(const Rational& s) const {
  LogValue r;
  if (s == 0) return r;
  for (const auto& [b, c] : logs_) r.logs_.emplace(b, c * s);
  r.plain_ = plain_ * s;
  return r;
}

double LogValue::to_double() const {
  BigFloat x(precision_bits());
  evaluate(*this, x, precision_bits());
  return mpfr_get_d(x.get(), MPFR_RNDN);
}

std::string LogValue::approx(int digits) const {
  BigFloat x(precision_bits());
  evaluate(*this, x, precision_bits());
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, x.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string LogValue::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  auto emit = [&out](const Rational& c, const std::string& body) {
    const bool neg = c < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const Rational mag = abs(c);
    if (body.empty()) {
      out += rational_to_string(mag);
    } else {
      if (mag != 1) out += rational_to_string(mag) + "*";
      out += body;
    }
  };
  for (const auto& [b, c] : logs_) emit(c, "log(" + b.get_str() + ")");
  if (plain_ != 0) emit(plain_, "");
  return out;
}

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
    case Ordering::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

long precision_bits() {
  static const long bits = [] {
    const char* env = std::getenv("REGDYN_PRECISION_BITS");
    long b = env ? std::strtol(env, nullptr, 10) : 128;
    return b < 128 ? 128L : b;
  }();
  return bits;
}

Ordering compare(const LogValue& a, const LogValue& b) {
  const LogValue d = a - b;
  if (d.is_zero()) return Ordering::Equal;
  if (d.logs().empty()) return d.plain() > 0 ? Ordering::Greater : Ordering::Less;
  const long bits = precision_bits();
  Ordering s = numeric_sign(d, bits, 80);
  if (s != Ordering::Inconclusive) return s;
  if (d.plain() == 0) {
    s = power_sign(d);
    if (s != Ordering::Inconclusive) return s;
  }
  const long wide = 4 * bits;
  return numeric_sign(d, wide, wide - 48);
}

LogValue max(const LogValue& a, const LogValue& b) {
  return compare(a, b) == Ordering::Less ? b : a;
}

}  // namespace regdyn
