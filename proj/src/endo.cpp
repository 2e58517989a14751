#include "regdyn/endo.hpp"

#include <algorithm>
#include <map>

namespace regdyn {

const char* to_string(Certification c) { return c == Certification::Certified ? "certified" : "attested"; }

NotRegularError::NotRegularError(const std::string& detail, std::optional<Point> witness, Certification how)
    : Error("endo", ErrorCode::NotRegular, detail), witness_(std::move(witness)), how_(how) {}

namespace {

constexpr std::uint64_t kPrimes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL, 2147483579ULL};
constexpr std::size_t kExactColumnLimit = 1500;

void monomials_of_degree(std::size_t nvars, int degree, std::vector<Exponents>& out) {
  Exponents e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == nvars) {
      e[i] = static_cast<std::uint32_t>(left);
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = static_cast<std::uint32_t>(k);
      self(self, i + 1, left - k);
    }
  };
  if (nvars == 0) return;
  rec(rec, 0, degree);
}

// Rank of the degree-D Macaulay matrix over `field`; nullopt when some
// coefficient has a denominator divisible by the characteristic.
std::optional<std::size_t> macaulay_rank(const std::vector<MultiPoly>& forms, int d, int big_d, Field field,
                                         const std::map<Exponents, std::size_t>& cols) {
  std::vector<Exponents> mults;
  monomials_of_degree(forms.front().nvars(), big_d - d, mults);
  std::vector<std::vector<std::pair<Exponents, Rational>>> reduced;
  try {
    for (const auto& f : forms) {
      std::vector<std::pair<Exponents, Rational>> terms;
      for (const auto& [e, c] : f.terms()) {
        Rational r = field.reduce(c);
        if (r != 0) terms.emplace_back(e, r);
      }
      reduced.push_back(std::move(terms));
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  SparseEchelon ech(field);
  for (const auto& a : mults) {
    for (const auto& terms : reduced) {
      SparseEchelon::Row row;
      for (const auto& [e, c] : terms) {
        Exponents s = e;
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += a[i];
        row[cols.at(s)] = c;
      }
      ech.insert(std::move(row));
      if (ech.rank() == cols.size()) return ech.rank();
    }
  }
  return ech.rank();
}

std::optional<Point> find_witness(const std::vector<MultiPoly>& forms) {
  const std::size_t m = forms.front().nvars();
  const Field field = forms.front().field();
  auto is_zero_at = [&](const Point& p) {
    return std::all_of(forms.begin(), forms.end(), [&](const MultiPoly& f) { return f.evaluate(p) == 0; });
  };
  if (m == 2 && field.is_rational()) {
    MultiPoly g = forms.front();
    for (const auto& f : forms) g = gcd(g, f);
    if (g.is_zero()) return Point{1, 0};
    if (!g.is_constant()) {
      for (const auto& b : split_binary_form(g)) {
        if (b.point) return b.point;
      }
    }
  }
  if (m == 2 && !field.is_rational() && field.modulus() <= 100000) {
    if (is_zero_at({1, 0})) return Point{1, 0};
    for (std::uint64_t t = 0; t < field.modulus(); ++t) {
      Point p{Rational(static_cast<unsigned long>(t)), 1};
      if (is_zero_at(p)) return p;
    }
    return std::nullopt;
  }
  if (m > 6) return std::nullopt;
  // small search box {-2..2}^m
  std::vector<long> v(m, -2);
  while (true) {
    if (std::any_of(v.begin(), v.end(), [](long c) { return c != 0; })) {
      Point p(v.begin(), v.end());
      if (is_zero_at(p)) return normalize_projective(p, field);
    }
    std::size_t i = 0;
    while (i < m && v[i] == 2) v[i++] = -2;
    if (i == m) return std::nullopt;
    ++v[i];
  }
}

void normalize_forms(std::vector<MultiPoly>& forms) {
  const Field field = forms.front().field();
  const MultiPoly* first = nullptr;
  for (const auto& f : forms) {
    if (!f.is_zero()) {
      first = &f;
      break;
    }
  }
  if (!first) return;
  Rational s;
  if (field.is_rational()) {
    std::vector<Rational> all;
    for (const auto& f : forms) {
      for (const auto& [e, c] : f.terms()) all.push_back(c);
    }
    s = Rational(integers::lcm_of_denominators(all), integers::gcd_of_numerators(all));
    s.canonicalize();
    if (first->leading_coefficient() < 0) s = -s;
  } else {
    s = field.inverse(first->leading_coefficient());
  }
  for (auto& f : forms) f = f.scaled(s);
}

std::string join_forms(const std::vector<MultiPoly>& forms, const std::vector<std::string>& names,
                       const char* open, const char* sep, const char* close) {
  std::string out = open;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (i) out += sep;
    out += forms[i].to_string(names);
  }
  return out + close;
}

}  // namespace

RegularityReport check_base_point_free(const std::vector<MultiPoly>& forms) {
  if (forms.empty()) throw Error("endo", ErrorCode::DegenerateInput, "no forms");
  const std::size_t m = forms.front().nvars();
  const Field field = forms.front().field();
  if (forms.size() != m) throw Error("endo", ErrorCode::DimensionError, "need as many forms as variables");
  int d = -1;
  for (const auto& f : forms) {
    if (f.nvars() != m || !(f.field() == field)) throw Error("endo", ErrorCode::DimensionError, "forms in different rings");
    if (!f.is_homogeneous()) throw Error("endo", ErrorCode::InvalidDegree, "form is not homogeneous");
    if (!f.is_zero()) {
      if (d >= 0 && *f.degree() != d) throw Error("endo", ErrorCode::InvalidDegree, "forms of different degrees");
      d = *f.degree();
    }
  }
  RegularityReport rep;
  const bool has_zero = std::any_of(forms.begin(), forms.end(), [](const MultiPoly& f) { return f.is_zero(); });
  if (d < 0 || has_zero) {
    rep.regular = false;
    rep.witness = find_witness(forms);
    return rep;
  }
  if (m == 1) {
    rep.regular = true;
    return rep;
  }
  const int big_d = static_cast<int>(m) * (d - 1) + 1;
  rep.macaulay_degree = big_d;
  std::vector<Exponents> monos;
  monomials_of_degree(m, big_d, monos);
  std::map<Exponents, std::size_t> cols;
  for (std::size_t i = 0; i < monos.size(); ++i) cols.emplace(monos[i], i);
  rep.columns = cols.size();

  auto finish = [&](std::size_t r, Certification how) {
    rep.rank = r;
    rep.regular = r == rep.columns;
    rep.certification = how;
    if (!rep.regular) rep.witness = find_witness(forms);
    return rep;
  };
  if (!field.is_rational()) return finish(*macaulay_rank(forms, d, big_d, field, cols), Certification::Certified);

  int deficient = 0;
  std::size_t last = 0;
  for (std::uint64_t p : kPrimes) {
    auto r = macaulay_rank(forms, d, big_d, Field::prime(p), cols);
    if (!r) continue;
    if (*r == rep.columns) return finish(*r, Certification::Certified);
    last = *r;
    if (rep.columns <= kExactColumnLimit) {
      return finish(*macaulay_rank(forms, d, big_d, field, cols), Certification::Certified);
    }
    if (++deficient == 3) break;
  }
  return finish(last, Certification::Attested);
}

std::vector<std::string> projective_variable_names(std::size_t count) {
  if (count == 2) return {"X", "Y"};
  if (count == 3) return {"X", "Y", "Z"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back("X" + std::to_string(i));
  return out;
}

ProjEndo ProjEndo::make_unchecked(std::vector<MultiPoly> forms, Certification how) {
  if (forms.size() < 2) throw Error("endo", ErrorCode::DimensionError, "a self-map of P^m needs m+1 >= 2 forms");
  const std::size_t nv = forms.size();
  int d = -1;
  for (const auto& f : forms) {
    if (f.nvars() != nv || !(f.field() == forms.front().field())) {
      throw Error("endo", ErrorCode::DimensionError, "forms must live in " + std::to_string(nv) + " variables");
    }
    if (!f.is_homogeneous()) throw Error("endo", ErrorCode::InvalidDegree, "form is not homogeneous");
    if (!f.is_zero()) {
      if (d >= 0 && *f.degree() != d) throw Error("endo", ErrorCode::InvalidDegree, "forms of different degrees");
      d = *f.degree();
    }
  }
  if (d < 1) throw Error("endo", ErrorCode::DegenerateInput, "forms must share a degree >= 1");
  normalize_forms(forms);
  ProjEndo g;
  g.forms_ = std::move(forms);
  g.degree_ = d;
  g.how_ = how;
  return g;
}

ProjEndo ProjEndo::make(std::vector<MultiPoly> forms) {
  ProjEndo g = make_unchecked(std::move(forms));
  const auto rep = check_base_point_free(g.forms_);
  if (!rep.regular) {
    std::string detail = "forms have a common nonzero zero";
    if (rep.witness) detail += " at " + projective_to_string(*rep.witness);
    throw NotRegularError(detail, rep.witness, rep.certification);
  }
  g.how_ = rep.certification;
  return g;
}

Point ProjEndo::apply(const Point& x) const {
  if (x.size() != forms_.size()) throw Error("endo", ErrorCode::DimensionError, "point has the wrong length");
  Point y;
  for (const auto& f : forms_) y.push_back(f.evaluate(x));
  if (std::all_of(y.begin(), y.end(), [](const Rational& v) { return v == 0; })) {
    throw Error("endo", ErrorCode::DegenerateInput, "map undefined at " + projective_to_string(x));
  }
  return normalize_projective(y, field());
}

ProjEndo ProjEndo::compose(const ProjEndo& inner) const {
  if (inner.forms_.size() != forms_.size()) throw Error("endo", ErrorCode::DimensionError, "dimension mismatch");
  std::vector<MultiPoly> out;
  try {
    for (const auto& f : forms_) out.push_back(f.compose(inner.forms_));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ResourceLimit) throw Error("endo", ErrorCode::ResourceLimit, e.detail());
    throw;
  }
  const Certification how =
      how_ == Certification::Certified && inner.how_ == Certification::Certified ? Certification::Certified
                                                                                 : Certification::Attested;
  return make_unchecked(std::move(out), how);
}

ProjEndo ProjEndo::iterate(int n) const {
  if (n < 1) throw Error("endo", ErrorCode::InvalidInput, "iterate count must be >= 1");
  ProjEndo g = *this;
  for (int i = 1; i < n; ++i) g = compose(g);
  return g;
}

std::string ProjEndo::to_string(const std::vector<std::string>& names) const {
  return join_forms(forms_, names.empty() ? projective_variable_names(forms_.size()) : names, "[", " : ", "]");
}

RegularEndo RegularEndo::assemble(std::vector<MultiPoly> components, Certification how) {
  RegularEndo f;
  int d = -1;
  for (const auto& c : components) {
    if (!c.is_zero()) d = std::max(d, *c.degree());
  }
  f.d_ = d;
  int tail_deg = -1;
  for (const auto& c : components) {
    MultiPoly top = c.homogeneous_part(d);
    MultiPoly tail = c - top;
    if (!tail.is_zero()) tail_deg = std::max(tail_deg, *tail.degree());
    f.top_.push_back(std::move(top));
    f.tails_.push_back(std::move(tail));
  }
  f.k_ = tail_deg < 0 ? d : d - tail_deg;
  f.components_ = std::move(components);
  f.how_ = how;
  return f;
}

RegularEndo RegularEndo::make(std::vector<MultiPoly> components) {
  if (components.empty()) throw Error("endo", ErrorCode::DegenerateInput, "empty component list");
  const std::size_t n = components.size();
  for (const auto& c : components) {
    if (c.nvars() != n) {
      throw Error("endo", ErrorCode::DimensionError,
                  "component in " + std::to_string(c.nvars()) + " variables for N = " + std::to_string(n));
    }
    if (!(c.field() == components.front().field())) throw Error("endo", ErrorCode::FieldMismatch, "mixed fields");
  }
  RegularEndo f = assemble(std::move(components), Certification::Certified);
  if (f.d_ < 1) throw Error("endo", ErrorCode::DegenerateInput, "constant map");
  const auto rep = check_base_point_free(f.top_);
  if (!rep.regular) {
    std::string detail = "top forms have a common nonzero zero";
    if (rep.witness) detail += " at " + affine_to_string(*rep.witness);
    throw NotRegularError(detail, rep.witness, rep.certification);
  }
  f.how_ = rep.certification;
  return f;
}

ProjEndo RegularEndo::lift() const {
  std::vector<MultiPoly> forms;
  Exponents e(n() + 1, 0);
  e[0] = static_cast<std::uint32_t>(d_);
  forms.push_back(MultiPoly::monomial(e, 1, field()));
  for (const auto& c : components_) forms.push_back(c.homogenize(d_));
  return ProjEndo::make_unchecked(std::move(forms), how_);
}

Point RegularEndo::apply(const Point& x) const {
  if (x.size() != n()) throw Error("endo", ErrorCode::DimensionError, "point has the wrong length");
  Point y;
  for (const auto& c : components_) y.push_back(c.evaluate(x));
  return y;
}

std::string RegularEndo::to_string() const {
  return join_forms(components_, default_variable_names(n()), "(", ", ", ")");
}

int degree_gap(const RegularEndo& f) { return f.k(); }

ProjEndo restrict_infinity(const RegularEndo& f) {
  if (f.n() == 1) {
    throw Error("endo", ErrorCode::DimensionError, "H_inf of A^1 is a point");
  }
  return ProjEndo::make_unchecked(f.top_forms(), f.certification());
}

RegularEndo iterate(const RegularEndo& f, int n) {
  if (n < 1) throw Error("endo", ErrorCode::InvalidInput, "iterate count must be >= 1");
  std::vector<MultiPoly> cur = f.components();
  try {
    for (int i = 1; i < n; ++i) {
      std::vector<MultiPoly> next;
      for (const auto& c : f.components()) next.push_back(c.compose(cur));
      cur = std::move(next);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ResourceLimit) throw Error("endo", ErrorCode::ResourceLimit, e.detail());
    throw;
  }
  return RegularEndo::assemble(std::move(cur), f.certification());
}

RegularEndo conjugate_linear(const RegularEndo& f, const Matrix& a) {
  const std::size_t n = f.n();
  if (a.rows() != n || a.cols() != n) throw Error("endo", ErrorCode::DimensionError, "matrix size differs from N");
  Matrix inv;
  try {
    inv = inverse(a);
  } catch (const Error& e) {
    throw Error("endo", ErrorCode::SingularMatrix, e.detail());
  }
  const Field field = f.field();
  auto linear = [&](const Matrix& m, std::size_t row) {
    MultiPoly p(n, field);
    for (std::size_t k = 0; k < n; ++k) {
      p = p + MultiPoly::variable(n, k, field).scaled(m.at(row, k));
    }
    return p;
  };
  std::vector<MultiPoly> subs;
  for (std::size_t j = 0; j < n; ++j) subs.push_back(linear(inv, j));
  std::vector<MultiPoly> inner;
  for (const auto& c : f.components()) inner.push_back(c.compose(subs));
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly p(n, field);
    for (std::size_t j = 0; j < n; ++j) p = p + inner[j].scaled(a.at(i, j));
    out.push_back(std::move(p));
  }
  return RegularEndo::assemble(std::move(out), f.certification());
}

ProjEndo symmetric_square(const ProjEndo& g) {
  if (g.dim() != 1) throw Error("endo", ErrorCode::DimensionError, "symmetric square needs a map of P^1");
  const Field field = g.field();
  const int d = g.degree();
  // ring r1, s1, r2, s2; the quadratic (s1 X - r1 Y)(s2 X - r2 Y) has roots [r1:s1], [r2:s2]
  auto v = [&](std::size_t i) { return MultiPoly::variable(4, i, field); };
  const MultiPoly r1 = v(0), s1 = v(1), r2 = v(2), s2 = v(3);
  const auto& G = g.components();
  const MultiPoly g0p1 = G[0].compose({r1, s1}), g1p1 = G[1].compose({r1, s1});
  const MultiPoly g0p2 = G[0].compose({r2, s2}), g1p2 = G[1].compose({r2, s2});
  const std::vector<MultiPoly> targets{g1p1 * g1p2, -(g1p1 * g0p2 + g0p1 * g1p2), g0p1 * g0p2};
  const MultiPoly a = s1 * s2, b = -(s1 * r2 + r1 * s2), c = r1 * r2;

  std::vector<Exponents> monos;
  monomials_of_degree(3, d, monos);
  std::vector<MultiPoly> images;
  for (const auto& e : monos) images.push_back(a.pow(e[0]) * b.pow(e[1]) * c.pow(e[2]));
  std::map<Exponents, std::size_t> rows;
  for (const auto& img : images) {
    for (const auto& [e, coef] : img.terms()) rows.emplace(e, rows.size());
  }
  for (const auto& t : targets) {
    for (const auto& [e, coef] : t.terms()) {
      if (!rows.count(e)) throw Error("endo", ErrorCode::Degenerate, "target outside the symmetric span");
    }
  }
  Matrix m(rows.size(), monos.size(), field);
  for (std::size_t j = 0; j < images.size(); ++j) {
    for (const auto& [e, coef] : images[j].terms()) m.at(rows.at(e), j) = coef;
  }
  std::vector<MultiPoly> forms;
  for (const auto& t : targets) {
    std::vector<Rational> rhs(rows.size(), Rational(0));
    for (const auto& [e, coef] : t.terms()) rhs[rows.at(e)] = coef;
    const auto sol = solve(m, rhs);
    if (!sol) throw Error("endo", ErrorCode::Degenerate, "induced form not symmetric");
    MultiPoly f(3, field);
    for (std::size_t j = 0; j < monos.size(); ++j) {
      if ((*sol)[j] != 0) f = f + MultiPoly::monomial(monos[j], (*sol)[j], field);
    }
    forms.push_back(std::move(f));
  }
  return ProjEndo::make_unchecked(std::move(forms), g.certification());
}

}  // namespace regdyn
