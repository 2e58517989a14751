#include "regdyn/poly.hpp"

#include <algorithm>
#include <numeric>

#include "regdyn/error.hpp"

namespace regdyn {

namespace {

std::uint32_t total(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

void check_ring(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) {
    throw Error("core", ErrorCode::DimensionError,
                "polynomials over " + std::to_string(a.nvars()) + " and " +
                    std::to_string(b.nvars()) + " variables");
  }
  if (!(a.field() == b.field())) {
    throw Error("core", ErrorCode::FieldMismatch,
                a.field().to_string() + " vs " + b.field().to_string());
  }
}

bool exps_divide(const Exponents& d, const Exponents& e) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > e[i]) return false;
  }
  return true;
}

}  // namespace

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  auto ta = total(a);
  auto tb = total(b);
  if (ta != tb) return ta > tb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly::MultiPoly(std::size_t nvars, Field field) : nvars_(nvars), field_(field) {}

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c, Field field) {
  MultiPoly p(nvars, field);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index, Field field) {
  Exponents e(nvars, 0);
  e.at(index) = 1;
  return monomial(std::move(e), 1, field);
}

MultiPoly MultiPoly::monomial(Exponents exps, const Rational& c, Field field) {
  MultiPoly p(exps.size(), field);
  p.add_term(exps, c);
  return p;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  Rational v = field_.reduce(c);
  if (v == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, v);
  if (!inserted) {
    it->second = field_.reduce(it->second + v);
    if (it->second == 0) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

std::optional<int> MultiPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return static_cast<int>(total(terms_.begin()->first));
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  auto d = total(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return total(t.first) == d; });
}

Rational MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

const Exponents& MultiPoly::leading_exponents() const {
  if (terms_.empty()) throw Error("core", ErrorCode::DegenerateInput, "zero polynomial has no leading term");
  return terms_.begin()->first;
}

const Rational& MultiPoly::leading_coefficient() const {
  if (terms_.empty()) throw Error("core", ErrorCode::DegenerateInput, "zero polynomial has no leading term");
  return terms_.begin()->second;
}

Rational MultiPoly::constant_term() const { return coefficient(Exponents(nvars_, 0)); }

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_ring(*this, o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  check_ring(*this, o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(nvars_, field_);
  for (const auto& [e, c] : terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_ring(*this, o);
  MultiPoly r(nvars_, field_);
  if (terms_.size() * o.terms_.size() > kTermLimit * 8) {
    throw Error("core", ErrorCode::ResourceLimit, "product exceeds the term budget");
  }
  Exponents e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  if (r.terms_.size() > kTermLimit) {
    throw Error("core", ErrorCode::ResourceLimit, "product exceeds the term budget");
  }
  return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  MultiPoly r(nvars_, field_);
  for (const auto& [e, v] : terms_) r.add_term(e, v * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result = constant(nvars_, 1, field_);
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::homogeneous_part(int degree) const {
  MultiPoly r(nvars_, field_);
  for (const auto& [e, c] : terms_) {
    if (static_cast<int>(total(e)) == degree) r.terms_.emplace(e, c);
  }
  return r;
}

MultiPoly MultiPoly::top_form() const {
  if (is_zero()) throw Error("core", ErrorCode::DegenerateInput, "top form of the zero polynomial");
  return homogeneous_part(*degree());
}

MultiPoly MultiPoly::homogenize(int target_degree) const {
  auto d = degree();
  if (target_degree < 0 || (d && *d > target_degree)) {
    throw Error("core", ErrorCode::InvalidDegree,
                "target degree " + std::to_string(target_degree) + " below polynomial degree");
  }
  MultiPoly r(nvars_ + 1, field_);
  for (const auto& [e, c] : terms_) {
    Exponents h(nvars_ + 1);
    h[0] = static_cast<std::uint32_t>(target_degree) - total(e);
    std::copy(e.begin(), e.end(), h.begin() + 1);
    r.terms_.emplace(std::move(h), c);
  }
  return r;
}

MultiPoly MultiPoly::dehomogenize() const {
  if (nvars_ < 2) throw Error("core", ErrorCode::DimensionError, "dehomogenize needs x0 plus another variable");
  MultiPoly r(nvars_ - 1, field_);
  for (const auto& [e, c] : terms_) r.add_term(Exponents(e.begin() + 1, e.end()), c);
  return r;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  MultiPoly r(nvars_, field_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    r.add_term(d, c * e[var]);
  }
  return r;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) {
    throw Error("core", ErrorCode::DimensionError, "evaluation point has wrong length");
  }
  std::vector<Rational> reduced(point.begin(), point.end());
  for (auto& v : reduced) v = field_.reduce(v);
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), reduced[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), reduced[i].get_den_mpz_t(), e[i]);
      t *= pw;
    }
    sum += t;
    if (!field_.is_rational()) sum = field_.reduce(sum);
  }
  return field_.reduce(sum);
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& subs) const {
  if (subs.size() != nvars_) {
    throw Error("core", ErrorCode::DimensionError, "compose needs one substitution per variable");
  }
  if (subs.empty()) return *this;
  const std::size_t target_vars = subs[0].nvars();
  for (const auto& s : subs) check_ring(s, subs[0]);
  if (!(subs[0].field() == field_)) {
    throw Error("core", ErrorCode::FieldMismatch, "compose across coefficient domains");
  }
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  auto power = [&](std::size_t i, std::uint32_t k) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(target_vars, 1, field_));
    while (cache.size() <= k) cache.push_back(cache.back() * subs[i]);
    return cache[k];
  };
  MultiPoly result(target_vars, field_);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = constant(target_vars, c, field_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] > 0) t = t * power(i, e[i]);
    }
    result = result + t;
    if (result.term_count() > kTermLimit) {
      throw Error("core", ErrorCode::ResourceLimit, "composition exceeds the term budget");
    }
  }
  return result;
}

MultiPoly MultiPoly::coefficient_in(std::size_t var, unsigned k) const {
  MultiPoly r(nvars_, field_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != k) continue;
    Exponents d = e;
    d[var] = 0;
    r.terms_.emplace(std::move(d), c);
  }
  return r;
}

MultiPoly MultiPoly::substitute(std::size_t var, const Rational& value) const {
  Rational v = field_.reduce(value);
  MultiPoly r(nvars_, field_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    d[var] = 0;
    Rational pw;
    mpz_pow_ui(pw.get_num_mpz_t(), v.get_num_mpz_t(), e[var]);
    mpz_pow_ui(pw.get_den_mpz_t(), v.get_den_mpz_t(), e[var]);
    r.add_term(d, c * pw);
  }
  return r;
}

MultiPoly MultiPoly::remap(std::size_t new_nvars, const std::vector<std::size_t>& var_map) const {
  if (var_map.size() != nvars_) {
    throw Error("core", ErrorCode::DimensionError, "remap needs one target per variable");
  }
  MultiPoly r(new_nvars, field_);
  for (const auto& [e, c] : terms_) {
    Exponents d(new_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (var_map[i] >= new_nvars) {
        throw Error("core", ErrorCode::DimensionError, "remap target out of range");
      }
      d[var_map[i]] += e[i];
    }
    r.add_term(d, c);
  }
  return r;
}

MultiPoly MultiPoly::with_field(Field field) const {
  MultiPoly r(nvars_, field);
  for (const auto& [e, c] : terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inverse(leading_coefficient()));
}

MultiPoly MultiPoly::primitive() const {
  if (!field_.is_rational()) {
    throw Error("core", ErrorCode::UnsupportedField, "primitive part over a prime field");
  }
  if (is_zero()) return *this;
  std::vector<Rational> coeffs;
  for (const auto& [e, c] : terms_) coeffs.push_back(c);
  Integer l = integers::lcm_of_denominators(coeffs);
  Integer g = integers::gcd_of_numerators(coeffs);
  Rational s(l, g);
  s.canonicalize();
  if (leading_coefficient() < 0) s = -s;
  return scaled(s);
}

std::vector<std::string> default_variable_names(std::size_t nvars) {
  if (nvars <= 3) {
    static const char* short_names[] = {"x", "y", "z"};
    return std::vector<std::string>(short_names, short_names + nvars);
  }
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names_in) const {
  if (terms_.empty()) return "0";
  const auto names = names_in.empty() ? default_variable_names(nvars_) : names_in;
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    Rational mag = abs(c);
    bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mono.empty()) {
      out += rational_to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += rational_to_string(mag) + "*" + mono;
    }
    first = false;
  }
  return out;
}

std::pair<MultiPoly, MultiPoly> divide(const MultiPoly& a, const MultiPoly& b) {
  check_ring(a, b);
  if (b.is_zero()) throw Error("core", ErrorCode::DegenerateInput, "division by the zero polynomial");
  const Field& f = a.field();
  const Exponents& lb = b.leading_exponents();
  const Rational lb_inv = f.inverse(b.leading_coefficient());
  MultiPoly q(a.nvars(), f);
  MultiPoly r(a.nvars(), f);
  MultiPoly p = a;
  while (!p.is_zero()) {
    Exponents le = p.leading_exponents();
    Rational lc = p.leading_coefficient();
    if (exps_divide(lb, le)) {
      Exponents t(le.size());
      for (std::size_t i = 0; i < le.size(); ++i) t[i] = le[i] - lb[i];
      Rational tc = lc * lb_inv;
      q.add_term(t, tc);
      Exponents e(le.size());
      for (const auto& [be, bc] : b.terms()) {
        for (std::size_t i = 0; i < le.size(); ++i) e[i] = be[i] + t[i];
        p.add_term(e, -tc * bc);
      }
    } else {
      r.add_term(le, lc);
      p.add_term(le, -lc);
    }
  }
  return {q, r};
}

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  auto [q, r] = divide(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

bool divides(const MultiPoly& b, const MultiPoly& a) {
  if (b.is_zero()) return a.is_zero();
  return divide(a, b).second.is_zero();
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  check_ring(a, b);
  if (b.is_zero()) throw Error("core", ErrorCode::DegenerateInput, "pseudo-division by zero");
  const int n = b.degree_in(var);
  if (n == 0) return MultiPoly(a.nvars(), a.field());
  const MultiPoly lc = b.coefficient_in(var, static_cast<unsigned>(n));
  MultiPoly r = a;
  while (!r.is_zero() && r.degree_in(var) >= n) {
    const int m = r.degree_in(var);
    Exponents shift(a.nvars(), 0);
    shift[var] = static_cast<std::uint32_t>(m - n);
    MultiPoly lead = r.coefficient_in(var, static_cast<unsigned>(m));
    r = lc * r - lead * MultiPoly::monomial(shift, 1, a.field()) * b;
  }
  return r;
}

namespace {

int main_variable(const MultiPoly& a, const MultiPoly& b) {
  int v = -1;
  for (const auto* p : {&a, &b}) {
    for (const auto& [e, c] : p->terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > 0) v = std::max(v, static_cast<int>(i));
      }
    }
  }
  return v;
}

MultiPoly normalize_unit(const MultiPoly& p) {
  return p.field().is_rational() ? p.primitive() : p.monic();
}

MultiPoly content_in(const MultiPoly& a, std::size_t var) {
  MultiPoly g(a.nvars(), a.field());
  const int d = a.degree_in(var);
  for (int k = 0; k <= d; ++k) {
    MultiPoly c = a.coefficient_in(var, static_cast<unsigned>(k));
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  check_ring(a, b);
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(a.nvars(), 1, a.field());
  const auto var = static_cast<std::size_t>(main_variable(a, b));
  MultiPoly ca = content_in(a, var);
  MultiPoly cb = content_in(b, var);
  MultiPoly gc = gcd(ca, cb);
  MultiPoly pa = *divide_exact(a, ca);
  MultiPoly pb = *divide_exact(b, cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  while (!pb.is_zero() && pb.degree_in(var) > 0) {
    MultiPoly r = pseudo_remainder(pa, pb, var);
    pa = pb;
    if (r.is_zero()) {
      pb = r;
    } else {
      pb = normalize_unit(*divide_exact(r, content_in(r, var)));
    }
  }
  MultiPoly g = pb.is_zero() ? pa : MultiPoly::constant(a.nvars(), 1, a.field());
  if (g.degree_in(var) > 0) g = *divide_exact(g, content_in(g, var));
  return (gc * g).monic();
}

MultiPoly squarefree_part(const MultiPoly& a) {
  if (!a.field().is_rational()) {
    throw Error("core", ErrorCode::UnsupportedField, "squarefree part over a prime field");
  }
  if (a.is_zero()) throw Error("core", ErrorCode::DegenerateInput, "squarefree part of zero");
  MultiPoly g = a;
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    if (a.degree_in(i) > 0) g = gcd(g, a.derivative(i));
  }
  return *divide_exact(a, g);
}

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var,
                    std::optional<int> formal_p, std::optional<int> formal_q) {
  check_ring(p, q);
  const int m = formal_p.value_or(p.degree_in(var));
  const int n = formal_q.value_or(q.degree_in(var));
  if (m <= 0 || n <= 0 || m < p.degree_in(var) || n < q.degree_in(var)) {
    throw Error("core", ErrorCode::InvalidDegree,
                "resultant needs positive degree in the eliminated variable");
  }
  const std::size_t size = static_cast<std::size_t>(m + n);
  const MultiPoly zero(p.nvars(), p.field());
  std::vector<std::vector<MultiPoly>> mat(size, std::vector<MultiPoly>(size, zero));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= m; ++k) {
      mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] =
          p.coefficient_in(var, static_cast<unsigned>(m - k));
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k <= n; ++k) {
      mat[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + k)] =
          q.coefficient_in(var, static_cast<unsigned>(n - k));
    }
  }
  // Bareiss fraction-free elimination.
  bool negate = false;
  MultiPoly prev = MultiPoly::constant(p.nvars(), 1, p.field());
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < size && mat[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == size) return zero;
      std::swap(mat[k], mat[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        MultiPoly num = mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j];
        mat[i][j] = *divide_exact(num, prev);
      }
      mat[i][k] = zero;
    }
    prev = mat[k][k];
  }
  MultiPoly det = mat[size - 1][size - 1];
  return negate ? -det : det;
}

}  // namespace regdyn
