#include "regdyn/unipoly.hpp"

#include <algorithm>

#include "regdyn/error.hpp"

namespace regdyn {

UniPoly::UniPoly(std::vector<Rational> coeffs, Field field) : c_(std::move(coeffs)), field_(field) {
  for (auto& c : c_) c = field_.reduce(c);
  trim();
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::monomial(int degree, const Rational& c, Field field) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return UniPoly(std::move(v), field);
}

UniPoly UniPoly::from_multi(const MultiPoly& p, std::size_t var) {
  std::vector<Rational> v;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != var && e[i] != 0) {
        throw Error("core", ErrorCode::DimensionError, "polynomial is not univariate");
      }
    }
    if (v.size() <= e[var]) v.resize(e[var] + 1, Rational(0));
    v[e[var]] = c;
  }
  return UniPoly(std::move(v), p.field());
}

MultiPoly UniPoly::to_multi(std::size_t nvars, std::size_t var) const {
  MultiPoly r(nvars, field_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Exponents e(nvars, 0);
    e[var] = static_cast<std::uint32_t>(i);
    r.add_term(e, c_[i]);
  }
  return r;
}

Rational UniPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<std::size_t>(i)];
}

const Rational& UniPoly::leading() const {
  if (c_.empty()) throw Error("core", ErrorCode::DegenerateInput, "zero polynomial has no leading coefficient");
  return c_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return UniPoly(std::move(v), field_);
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o.scaled(-1); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly({}, field_);
  std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return UniPoly(std::move(v), field_);
}

UniPoly UniPoly::scaled(const Rational& s) const {
  std::vector<Rational> v = c_;
  for (auto& c : v) c *= s;
  return UniPoly(std::move(v), field_);
}

Rational UniPoly::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return field_.reduce(acc);
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly({}, field_);
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
  return UniPoly(std::move(v), field_);
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inverse(leading()));
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw Error("core", ErrorCode::DegenerateInput, "division by the zero polynomial");
  const Field& f = a.field();
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UniPoly({}, f), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational inv = f.inverse(b.leading());
  for (int i = a.degree(); i >= db; --i) {
    Rational c = f.reduce(r[static_cast<std::size_t>(i)] * inv);
    q[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - db + j)];
      slot = f.reduce(slot - c * b.coeffs()[static_cast<std::size_t>(j)]);
    }
  }
  return {UniPoly(std::move(q), f), UniPoly(std::move(r), f)};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a;
  UniPoly y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<std::pair<UniPoly, int>> squarefree_decompose(const UniPoly& p) {
  if (p.is_zero()) throw Error("core", ErrorCode::DegenerateInput, "squarefree decomposition of zero");
  if (!p.field().is_rational()) {
    throw Error("core", ErrorCode::UnsupportedField, "squarefree decomposition over a prime field");
  }
  std::vector<std::pair<UniPoly, int>> out;
  if (p.degree() == 0) return out;
  UniPoly a = p.monic();
  UniPoly a1 = a.derivative();
  UniPoly g = gcd(a, a1);
  UniPoly b = divmod(a, g).first;
  UniPoly c = divmod(a1, g).first;
  UniPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    UniPoly h = gcd(b, d);
    if (h.degree() > 0) out.emplace_back(h, i);
    b = divmod(b, h).first;
    c = divmod(d, h).first;
    d = c - b.derivative();
  }
  return out;
}

std::vector<Rational> rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw Error("core", ErrorCode::DegenerateInput, "roots of the zero polynomial");
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  // Integer primitive form, zero roots split off first.
  std::vector<Rational> c = p.coeffs();
  std::size_t shift = 0;
  while (c[shift] == 0) ++shift;
  if (shift > 0) roots.emplace_back(0);
  std::vector<Rational> rest(c.begin() + static_cast<long>(shift), c.end());
  if (rest.size() > 1) {
    Integer l = integers::lcm_of_denominators(rest);
    std::vector<Integer> ic;
    for (const auto& v : rest) ic.push_back(Rational(v * l).get_num());
    UniPoly q(rest, p.field());
    const auto nums = integers::divisors(ic.front());
    const auto dens = integers::divisors(ic.back());
    for (const auto& a : nums) {
      for (const auto& b : dens) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (g != 1) continue;
        for (int sign : {1, -1}) {
          Rational r(a * sign, b);
          r.canonicalize();
          if (q.evaluate(r) == 0) roots.push_back(r);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

int root_multiplicity(const UniPoly& p, const Rational& r) {
  if (p.is_zero()) throw Error("core", ErrorCode::DegenerateInput, "root multiplicity in the zero polynomial");
  const UniPoly lin({-r, Rational(1)}, p.field());
  UniPoly q = p;
  int m = 0;
  while (q.degree() > 0) {
    auto [quo, rem] = divmod(q, lin);
    if (!rem.is_zero()) break;
    q = std::move(quo);
    ++m;
  }
  return m;
}

}  // namespace regdyn
