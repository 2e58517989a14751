#include "regdyn/weil.hpp"

#include <algorithm>
#include <set>

#include "regdyn/localalg.hpp"

namespace regdyn {

namespace {

LogValue lplus(const Rational& x) { return x > 0 ? LogValue::log_plus(x) : LogValue(); }

Rational absv(const Place& v, const Rational& x) { return abs_value(v, x); }

bool is_zero_point(const Point& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& c) { return c == 0; });
}

void require(bool ok, const std::string& detail) {
  if (!ok) throw Error("weil", ErrorCode::InstanceError, detail);
}

// l_v(f) + log^+ N(f); zero for the zero polynomial
LogValue size_term(const MultiPoly& f, const Place& v) {
  if (f.is_zero()) return LogValue();
  const auto s = poly_place_stats(f, v);
  return s.log_sum + lplus(Rational(static_cast<unsigned long>(s.terms)));
}

// N(f) H_v(f); zero for the zero polynomial
Rational bound_term(const MultiPoly& f, const Place& v) {
  if (f.is_zero()) return 0;
  const auto s = poly_place_stats(f, v);
  return Rational(static_cast<unsigned long>(s.terms)) * s.height;
}

std::size_t first_nonzero(const Point& p, std::size_t from = 0) {
  for (std::size_t i = from; i < p.size(); ++i) {
    if (p[i] != 0) return i;
  }
  throw Error("weil", ErrorCode::DegenerateInput, "zero point");
}

Point projective_of(const Point& affine) {
  Point p{1};
  p.insert(p.end(), affine.begin(), affine.end());
  return p;
}

Point at_infinity_of(const Point& affine) {
  Point p{0};
  p.insert(p.end(), affine.begin(), affine.end());
  return p;
}

WeilValue scale(const WeilValue& w, const Rational& s) {
  if (w.infinite) return s == 0 ? WeilValue() : w;
  return WeilValue::of(w.value.scaled(s));
}

WeilValue add(const WeilValue& a, const WeilValue& b) {
  if (a.infinite || b.infinite) return WeilValue::plus_infinity();
  return WeilValue::of(a.value + b.value);
}

SConstant chart_change_constant(const Point& p, std::size_t i, std::size_t j) {
  require(i < p.size() && j < p.size() && i != j, "charts must be two distinct coordinates");
  if (p[i] == 0 || p[j] == 0) throw Error("weil", ErrorCode::InvalidChart, "P has a zero coordinate in the chart");
  Point a(p.size());
  for (std::size_t l = 0; l < p.size(); ++l) a[l] = p[l] / p[i];
  return SConstant("chart-change", [a, i, j](const Place& v) {
    LogValue c = LogValue::log_of(4);
    for (std::size_t l = 0; l < a.size(); ++l) {
      if (l != i) c += lplus(absv(v, a[l]));
    }
    return c + lplus(absv(v, 1 / a[j])).scaled(2);
  });
}

SConstant linear_change_constant(const Matrix& m, const Point& p, std::size_t i, std::size_t j) {
  require(m.rows() == p.size() && m.cols() == p.size(), "matrix size does not match the point");
  if (p[i] == 0) throw Error("weil", ErrorCode::InvalidChart, "P has a zero coordinate in the chart");
  Point a(p.size());
  for (std::size_t l = 0; l < p.size(); ++l) a[l] = p[l] / p[i];
  const Point ap = m.apply(a);
  if (j >= ap.size() || ap[j] == 0) throw Error("weil", ErrorCode::InvalidChart, "A(P) has a zero coordinate in the chart");
  const Rational n = static_cast<unsigned long>(p.size() - 1);
  return SConstant("linear-change", [m, ap, j, n](const Place& v) {
    LogValue c = LogValue::log_of(4 * n + 4);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t s = 0; s < m.cols(); ++s) c += lplus(absv(v, m.at(r, s)));
    }
    for (const auto& x : ap) c += lplus(absv(v, x));
    return c + lplus(absv(v, 1 / ap[j])).scaled(2);
  });
}

// P must be the coordinate point e_i.
void require_coordinate_point(const Point& p, std::size_t i) {
  for (std::size_t l = 0; l < p.size(); ++l) {
    require((l == i) == (p[l] != 0), "P must be the coordinate point of its chart; conjugate it there first");
  }
}

// x_i^d + rest after scaling so the coefficient of x_i^d is 1
MultiPoly tail_after(const MultiPoly& g, std::size_t i, int d, const Rational& scale_by) {
  Exponents e(g.nvars(), 0);
  e[i] = static_cast<std::uint32_t>(d);
  MultiPoly t = g.scaled(scale_by);
  t.add_term(e, -t.coefficient(e));
  return t;
}

SConstant functoriality_constant(const ProjEndo& g, const Point& p, std::size_t i) {
  require(p.size() == g.dim() + 1, "P has the wrong length");
  require_coordinate_point(p, i);
  require(projectively_equal(g.apply(p), p), "P must be fixed by g; conjugate so that g(P) = P");
  const auto& forms = g.components();
  Exponents e(forms.size(), 0);
  e[i] = static_cast<std::uint32_t>(g.degree());
  const Rational lead = forms[i].coefficient(e);
  std::vector<MultiPoly> parts;
  for (std::size_t l = 0; l < forms.size(); ++l) {
    parts.push_back(l == i ? tail_after(forms[l], i, g.degree(), 1 / lead) : forms[l].scaled(1 / lead));
  }
  return SConstant("functoriality", [parts](const Place& v) {
    LogValue c = LogValue::log_of(2);
    for (const auto& f : parts) c += size_term(f, v);
    return c;
  });
}

SConstant separation_constant(const Point& p, std::size_t i, const std::vector<MultiPoly>& ideal) {
  require(!ideal.empty(), "separation needs the equations of V");
  require_coordinate_point(p, i);
  for (const auto& g : ideal) {
    require(g.nvars() == p.size() && g.is_homogeneous() && !g.is_zero(), "equations of V must be nonzero forms");
    const Rational at = g.evaluate(p);
    if (at == 0) continue;
    const int d = *g.degree();
    Exponents e(g.nvars(), 0);
    e[i] = static_cast<std::uint32_t>(d);
    const MultiPoly g0 = tail_after(g, i, d, 1 / g.coefficient(e));
    return SConstant("separation", [g0](const Place& v) { return size_term(g0, v) + LogValue::log_of(2); });
  }
  throw Error("weil", ErrorCode::InstanceError, "P lies on V");
}

// x_j^D = sum_l a_jl F_l for the lowest D that works
std::vector<std::vector<MultiPoly>> top_form_certificate(const std::vector<MultiPoly>& forms, int d) {
  const std::size_t n = forms.size();
  auto monomials = [n](int deg) {
    std::vector<Exponents> out;
    Exponents e(n, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
      if (i + 1 == n) {
        e[i] = static_cast<std::uint32_t>(left);
        out.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[i] = static_cast<std::uint32_t>(k);
        self(self, i + 1, left - k);
      }
    };
    rec(rec, 0, deg);
    return out;
  };
  const int top = static_cast<int>(n) * (d - 1) + 1;
  for (int deg = d; deg <= top; ++deg) {
    const auto mult = monomials(deg - d);
    const auto targets = monomials(deg);
    std::map<Exponents, std::size_t> row_of;
    for (std::size_t r = 0; r < targets.size(); ++r) row_of.emplace(targets[r], r);
    Matrix m(targets.size(), n * mult.size());
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t a = 0; a < mult.size(); ++a) {
        for (const auto& [e, c] : forms[l].terms()) {
          Exponents s = e;
          for (std::size_t t = 0; t < n; ++t) s[t] += mult[a][t];
          m.at(row_of.at(s), l * mult.size() + a) += c;
        }
      }
    }
    std::vector<std::vector<MultiPoly>> cert;
    for (std::size_t j = 0; j < n; ++j) {
      Exponents xj(n, 0);
      xj[j] = static_cast<std::uint32_t>(deg);
      std::vector<Rational> b(targets.size(), 0);
      b[row_of.at(xj)] = 1;
      const auto sol = solve(m, b);
      if (!sol) break;
      std::vector<MultiPoly> row;
      for (std::size_t l = 0; l < n; ++l) {
        MultiPoly a(n);
        for (std::size_t k = 0; k < mult.size(); ++k) a.add_term(mult[k], (*sol)[l * mult.size() + k]);
        row.push_back(a);
      }
      cert.push_back(row);
    }
    if (cert.size() == n) return cert;
  }
  throw Error("weil", ErrorCode::CertificateUnavailable, "top forms have a common zero");
}

SConstant degree_scaling_constant(const RegularEndo& f) {
  require(f.field().is_rational(), "places are defined over Q only");
  const auto cert = top_form_certificate(f.top_forms(), f.d());
  const auto comps = f.components();
  const auto tails = f.tails();
  const int d = f.d();
  return SConstant("degree-scaling", [cert, comps, tails, d](const Place& v) {
    Rational upper = 0, a = 0, t = 0;
    for (const auto& c : comps) upper = std::max(upper, bound_term(c, v));
    for (const auto& row : cert) {
      Rational s = 0;
      for (const auto& p : row) s += bound_term(p, v);
      a = std::max(a, s);
    }
    for (const auto& g : tails) t = std::max(t, bound_term(g, v));
    const LogValue lower = lplus(2 * a) + lplus(2 * a * t).scaled(d);
    return max(lplus(upper), lower);
  });
}

struct CurveChart {
  bool available = false;
  MultiPoly h;
  std::vector<Point> points;  // rational infinity points
  Rational m = 1;             // largest intersection number
};

CurveChart curve_chart(const PlaneCurve& c, std::size_t k) {
  CurveChart out;
  const auto inf = infinity_points(c);
  for (const auto& p : inf) {
    if (!p.point) return out;
    if ((*p.point)[k] == 0) return out;
    out.points.push_back(*p.point);
    out.m = std::max(out.m, Rational(p.intersection));
  }
  Exponents e(2, 0);
  e[k == 1 ? 1 : 0] = static_cast<std::uint32_t>(c.degree());
  const Rational lead = c.top_form().coefficient(e);
  const MultiPoly g = c.poly().scaled(1 / lead);
  out.h = g - g.top_form();
  out.available = true;
  return out;
}

SConstant curve_bound_constant(const CurveChart& ch) {
  const MultiPoly h = ch.h;
  return SConstant("curve-bound", [h](const Place& v) { return size_term(h, v); });
}

const SConstant& input(const Instance& inst, const std::string& name) {
  auto it = inst.inputs.find(name);
  if (it == inst.inputs.end()) {
    throw Error("weil", ErrorCode::CertificateUnavailable, "propagation input " + name + " is not supplied");
  }
  return it->second;
}

// One inequality left <= right + c at a (sample, place).
struct Check {
  WeilValue left;
  WeilValue right;
  LogValue c;
  bool strict = false;  // violation already when left >= right + c
};

struct Evaluator {
  std::function<std::vector<Check>(const Point&, const Place&)> eval;
  std::size_t sample_size = 0;
};

void check_size(const Point& x, std::size_t n) {
  if (x.size() != n) throw Error("weil", ErrorCode::InstanceError, "sample has the wrong length");
}

// nearest infinity point filter for the curve statements
bool nearest_to(const PlaneCurve& c, const Point& p, std::size_t chart, const Place& v, const Point& x) {
  const WeilValue mine = weil_point(v, p, projective_of(x), chart);
  if (!mine.infinite && mine.value.is_zero()) return false;
  for (const auto& q : infinity_points(c)) {
    if (!q.point || projectively_equal(*q.point, p)) continue;
    const WeilValue other = weil_point(v, *q.point, projective_of(x), first_nonzero(*q.point, 1));
    if (other.infinite) return false;
    if (!mine.infinite && compare(other.value, mine.value) == Ordering::Greater) return false;
  }
  return true;
}

Evaluator make_evaluator(const Instance& inst, BoundMode mode) {
  const bool explicit_mode = mode == BoundMode::Explicit;
  auto constant_or_zero = [&]() { return explicit_mode ? s_constant_for(inst) : SConstant::zero(); };
  Evaluator ev;
  switch (inst.statement) {
    case Statement::ChartChange: {
      require(inst.p.has_value(), "chart-change needs P");
      const Point p = *inst.p;
      const std::size_t i = inst.chart, j = inst.other_chart;
      const SConstant cij = chart_change_constant(p, i, j);
      const SConstant cji = chart_change_constant(p, j, i);
      const bool ex = explicit_mode;
      ev.sample_size = p.size();
      ev.eval = [=](const Point& x, const Place& v) {
        const WeilValue li = weil_point(v, p, x, i), lj = weil_point(v, p, x, j);
        return std::vector<Check>{{li, lj, ex ? cij.at(v) : LogValue()}, {lj, li, ex ? cji.at(v) : LogValue()}};
      };
      break;
    }
    case Statement::LinearChange: {
      require(inst.p.has_value() && inst.a.has_value(), "linear-change needs P and A");
      const Point p = *inst.p;
      const Matrix a = *inst.a;
      const Matrix ainv = inverse(a);
      const Point ap = a.apply(p);
      const std::size_t i = inst.chart, j = inst.other_chart;
      const SConstant fwd = explicit_mode ? linear_change_constant(a, p, i, j) : SConstant::zero();
      const SConstant bwd = explicit_mode ? linear_change_constant(ainv, ap, j, i) : SConstant::zero();
      ev.sample_size = p.size();
      ev.eval = [=](const Point& x, const Place& v) {
        const WeilValue l = weil_point(v, p, x, i), r = weil_point(v, ap, a.apply(x), j);
        return std::vector<Check>{{l, r, fwd.at(v)}, {r, l, bwd.at(v)}};
      };
      break;
    }
    case Statement::Functoriality: {
      require(inst.p.has_value() && inst.g.has_value(), "functoriality needs P and g");
      const Point p = *inst.p;
      const ProjEndo g = *inst.g;
      const std::size_t i = inst.chart;
      const SConstant c = explicit_mode ? s_constant_for(inst) : SConstant::zero();
      ev.sample_size = p.size();
      ev.eval = [=](const Point& x, const Place& v) {
        return std::vector<Check>{{weil_point(v, p, x, i), weil_point(v, p, g.apply(x), i), c.at(v)}};
      };
      break;
    }
    case Statement::GrowthCap: {
      require(inst.p.has_value() && inst.g.has_value(), "growth-cap needs P and g");
      if (explicit_mode) s_constant_for(inst);
      const Point p = normalize_projective(*inst.p);
      const ProjEndo g = *inst.g;
      const Point q = g.apply(p);
      const std::size_t i = inst.chart, j = first_nonzero(q);
      const Rational e = multiplicity_projective(g, p).value;
      ev.sample_size = p.size();
      ev.eval = [=](const Point& x, const Place& v) {
        const WeilValue lp = weil_point(v, p, x, i);
        if (lp.infinite || lp.value.is_zero()) return std::vector<Check>{};
        return std::vector<Check>{{weil_point(v, q, g.apply(x), j), scale(lp, e), LogValue()}};
      };
      break;
    }
    case Statement::DegreeScaling: {
      require(inst.f.has_value(), "degree-scaling needs f");
      const RegularEndo f = *inst.f;
      const SConstant c = constant_or_zero();
      const Rational d = f.d();
      ev.sample_size = f.n();
      ev.eval = [=](const Point& x, const Place& v) {
        const WeilValue a = weil_infinity(v, f.apply(x)), b = scale(weil_infinity(v, x), d);
        const LogValue cv = c.at(v);
        return std::vector<Check>{{a, b, cv}, {b, a, cv}};
      };
      break;
    }
    case Statement::Separation: {
      require(inst.p.has_value(), "separation needs P");
      const Point p = *inst.p;
      const std::size_t i = inst.chart;
      const SConstant c = constant_or_zero();
      const auto ideal = inst.ideal;
      ev.sample_size = p.size();
      ev.eval = [=](const Point& x, const Place& v) {
        for (const auto& g : ideal) require(g.evaluate(x) == 0, "sample " + projective_to_string(x) + " is not on V");
        Check ch{weil_point(v, p, x, i), WeilValue(), c.at(v), true};
        return std::vector<Check>{ch};
      };
      break;
    }
    case Statement::CurveBound: {
      require(inst.curve.has_value(), "curve-bound needs the curve");
      const PlaneCurve curve = *inst.curve;
      require(curve.field().is_rational(), "places are defined over Q only");
      const CurveChart c1 = curve_chart(curve, 1), c2 = curve_chart(curve, 2);
      if (!c1.available && !c2.available) {
        throw Error("weil", ErrorCode::CertificateUnavailable, "the curve has non-rational points at infinity");
      }
      const SConstant k1 = c1.available ? curve_bound_constant(c1) : SConstant::zero();
      const SConstant k2 = c2.available ? curve_bound_constant(c2) : SConstant::zero();
      const bool ex = explicit_mode;
      ev.sample_size = 2;
      ev.eval = [=](const Point& x, const Place& v) {
        require(curve.contains(x), "sample " + affine_to_string(x) + " is not on the curve");
        const bool first = absv(v, x[0]) >= absv(v, x[1]);
        const CurveChart& ch = first ? c1 : c2;
        if (!ch.available) return std::vector<Check>{};
        const std::size_t k = first ? 1 : 2;
        WeilValue sum;
        for (const auto& p : ch.points) sum = add(sum, weil_point(v, p, projective_of(x), k));
        const LogValue cv = ex ? (first ? k1 : k2).at(v) : LogValue();
        return std::vector<Check>{{weil_infinity(v, x), scale(sum, ch.m), cv}};
      };
      break;
    }
    case Statement::Projection: {
      require(inst.p.has_value(), "projection needs P");
      const Point p = *inst.p;
      require(p[0] == 0, "P must lie at infinity");
      const std::size_t i = inst.chart;
      if (i == 0 || i >= p.size() || p[i] == 0) throw Error("weil", ErrorCode::InvalidChart, "P has a zero coordinate in the chart");
      ev.sample_size = p.size() - 1;
      ev.eval = [=](const Point& x, const Place& v) {
        if (is_zero_point(x)) throw Error("weil", ErrorCode::ProjectionUndefined, "the origin has no projection");
        return std::vector<Check>{{weil_point(v, p, projective_of(x), i), weil_point(v, p, at_infinity_of(x), i), LogValue()}};
      };
      break;
    }
    case Statement::CurveLocal:
    case Statement::Verticality: {
      require(inst.p.has_value() && inst.curve.has_value(), "the curve statements need P and the curve");
      if (explicit_mode) s_constant_for(inst);
      const Point p = normalize_projective(*inst.p);
      const PlaneCurve curve = *inst.curve;
      require(p.size() == 3 && p[0] == 0, "P must be a point at infinity of the plane");
      const std::size_t i = inst.chart;
      if (i == 0 || i >= 3 || p[i] == 0) throw Error("weil", ErrorCode::InvalidChart, "P has a zero coordinate in the chart");
      const bool local = inst.statement == Statement::CurveLocal;
      const Rational weight = local ? Rational(intersection_number_at_infinity(curve.poly(), p)) : inst.r;
      require(local || weight > 0, "verticality needs r > 0");
      ev.sample_size = 2;
      ev.eval = [=](const Point& x, const Place& v) {
        require(curve.contains(x), "sample " + affine_to_string(x) + " is not on the curve");
        if (!nearest_to(curve, p, i, v, x)) return std::vector<Check>{};
        if (local) {
          return std::vector<Check>{{weil_infinity(v, x), scale(weil_point(v, p, projective_of(x), i), weight), LogValue()}};
        }
        if (is_zero_point(x)) return std::vector<Check>{};
        return std::vector<Check>{{scale(weil_infinity(v, x), weight), weil_point(v, p, at_infinity_of(x), i), LogValue()}};
      };
      break;
    }
    case Statement::ConstantPropagation: {
      const Propagation prop = propagate_constants(inst);
      const Point p = normalize_projective(*inst.p);
      const std::size_t i = inst.chart;
      const bool ex = explicit_mode;
      ev.sample_size = p.size() - 1;
      ev.eval = [=](const Point& x, const Place& v) {
        const WeilValue near = weil_point(v, p, projective_of(x), i);
        if (!near.infinite && compare(near.value, prop.c3.at(v)) == Ordering::Less) return std::vector<Check>{};
        require(!is_zero_point(x), "the origin satisfies the hypothesis");
        return std::vector<Check>{{scale(weil_infinity(v, x), prop.r_next), weil_point(v, p, at_infinity_of(x), i),
                                   ex ? prop.c4.at(v) : LogValue()}};
      };
      break;
    }
  }
  return ev;
}

std::vector<Point> growth_sequence(const Point& p, std::size_t chart, const Place& v, std::size_t count) {
  std::vector<Point> out;
  const Point pn = normalize_projective(p);
  Rational t = 1;
  const Rational step = v.archimedean() ? Rational(1, 2) : Rational(v.prime());
  for (std::size_t m = 1; m <= count; ++m) {
    t *= step;
    Point x = pn;
    for (std::size_t l = 0; l < x.size(); ++l) {
      if (l != chart) x[l] += t * pn[chart];
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace

std::string WeilValue::to_string() const { return infinite ? "inf" : value.to_string(); }

WeilValue weil_point(const Place& v, const Point& p, const Point& x, std::size_t chart) {
  if (p.size() != x.size()) throw Error("weil", ErrorCode::DimensionError, "P and x have different lengths");
  if (chart >= p.size() || p[chart] == 0) {
    throw Error("weil", ErrorCode::InvalidChart, "coordinate " + std::to_string(chart) + " of P is zero");
  }
  if (is_zero_point(x)) throw Error("weil", ErrorCode::DegenerateInput, "x has all coordinates zero");
  if (x[chart] == 0) return WeilValue();
  Rational delta = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j == chart) continue;
    delta = std::max(delta, absv(v, x[j] / x[chart] - p[j] / p[chart]));
  }
  if (delta == 0) return WeilValue::plus_infinity();
  return WeilValue::of(lplus(1 / delta));
}

WeilValue weil_infinity(const Place& v, const Point& x) {
  Rational m = 0;
  for (const auto& c : x) m = std::max(m, absv(v, c));
  return WeilValue::of(lplus(m));
}

PolyPlaceStats poly_place_stats(const MultiPoly& f, const Place& v) {
  if (f.is_zero()) throw Error("weil", ErrorCode::DegenerateInput, "statistics of the zero polynomial");
  if (!f.field().is_rational()) throw Error("weil", ErrorCode::UnsupportedField, "places are defined over Q only");
  PolyPlaceStats s;
  s.terms = f.term_count();
  s.height = 0;
  for (const auto& [e, c] : f.terms()) {
    const Rational a = absv(v, c);
    s.height = std::max(s.height, a);
    s.log_sum += lplus(a);
  }
  return s;
}

SConstant SConstant::zero(const std::string& label) {
  return SConstant(label, [](const Place&) { return LogValue(); });
}

SConstant SConstant::uniform(const LogValue& c, const std::string& label) {
  return SConstant(label, [c](const Place&) { return c; });
}

SConstant SConstant::scaled(const Rational& s) const {
  const SConstant self = *this;
  return SConstant(rational_to_string(s) + "*(" + label_ + ")", [self, s](const Place& v) { return self.at(v).scaled(s); });
}

SConstant operator+(const SConstant& a, const SConstant& b) {
  return SConstant(a.label_ + " + " + b.label_, [a, b](const Place& v) { return a.at(v) + b.at(v); });
}

SConstant max(const SConstant& a, const SConstant& b) {
  return SConstant("max(" + a.label_ + ", " + b.label_ + ")", [a, b](const Place& v) { return max(a.at(v), b.at(v)); });
}

namespace {

const std::vector<std::pair<Statement, const char*>>& statement_names() {
  static const std::vector<std::pair<Statement, const char*>> names{
      {Statement::ChartChange, "chart-change"},
      {Statement::LinearChange, "linear-change"},
      {Statement::Functoriality, "functoriality"},
      {Statement::GrowthCap, "growth-cap"},
      {Statement::DegreeScaling, "degree-scaling"},
      {Statement::Separation, "separation"},
      {Statement::CurveLocal, "curve-local"},
      {Statement::CurveBound, "curve-bound"},
      {Statement::Projection, "projection"},
      {Statement::ConstantPropagation, "constant-propagation"},
      {Statement::Verticality, "verticality"},
  };
  return names;
}

}  // namespace

const char* to_string(Statement s) {
  for (const auto& [st, name] : statement_names()) {
    if (st == s) return name;
  }
  return "?";
}

Statement parse_statement(const std::string& id) {
  for (const auto& [st, name] : statement_names()) {
    if (id == name) return st;
  }
  throw Error("weil", ErrorCode::InvalidInput, "unknown statement '" + id + "'");
}

std::vector<Statement> all_statements() {
  std::vector<Statement> out;
  for (const auto& [st, name] : statement_names()) out.push_back(st);
  return out;
}

bool has_explicit_constant(Statement s) {
  return s != Statement::GrowthCap && s != Statement::CurveLocal && s != Statement::Verticality;
}

const char* to_string(BoundMode m) { return m == BoundMode::Explicit ? "explicit" : "empirical"; }

SConstant s_constant_for(const Instance& inst) {
  switch (inst.statement) {
    case Statement::ChartChange:
      require(inst.p.has_value(), "chart-change needs P");
      return chart_change_constant(*inst.p, inst.chart, inst.other_chart);
    case Statement::LinearChange:
      require(inst.p.has_value() && inst.a.has_value(), "linear-change needs P and A");
      return linear_change_constant(*inst.a, *inst.p, inst.chart, inst.other_chart);
    case Statement::Functoriality:
      require(inst.p.has_value() && inst.g.has_value(), "functoriality needs P and g");
      return functoriality_constant(*inst.g, *inst.p, inst.chart);
    case Statement::DegreeScaling:
      require(inst.f.has_value(), "degree-scaling needs f");
      return degree_scaling_constant(*inst.f);
    case Statement::Separation:
      require(inst.p.has_value(), "separation needs P");
      return separation_constant(*inst.p, inst.chart, inst.ideal);
    case Statement::CurveBound: {
      require(inst.curve.has_value(), "curve-bound needs the curve");
      const std::size_t k = inst.chart == 0 ? 1 : inst.chart;
      if (k > 2) throw Error("weil", ErrorCode::InvalidChart, "curve-bound charts are 1 and 2");
      const CurveChart ch = curve_chart(*inst.curve, k);
      if (!ch.available) {
        throw Error("weil", ErrorCode::CertificateUnavailable, "infinity points not all rational in this chart");
      }
      return curve_bound_constant(ch);
    }
    case Statement::Projection:
      return SConstant::zero("projection");
    case Statement::ConstantPropagation:
      return (input(inst, "c1") + input(inst, "c5") + input(inst, "c8") +
              SConstant::uniform(LogValue::constant(1), "1"));
    case Statement::GrowthCap:
    case Statement::CurveLocal:
    case Statement::Verticality:
      break;
  }
  throw Error("weil", ErrorCode::CertificateUnavailable,
              std::string(to_string(inst.statement)) + " needs an ideal membership certificate; use empirical mode");
}

Propagation propagate_constants(const Instance& inst) {
  require(inst.f.has_value() && inst.p.has_value(), "propagation needs f and P");
  const RegularEndo& f = *inst.f;
  const Point p = normalize_projective(*inst.p);
  require(p.size() == f.n() + 1 && p[0] == 0, "P must be a point at infinity of A^N");
  require(inst.r > 0, "propagation needs r > 0");
  if (inst.chart == 0 || inst.chart >= p.size() || p[inst.chart] == 0) {
    throw Error("weil", ErrorCode::InvalidChart, "P has a zero coordinate in the chart");
  }
  const Point tail(p.begin() + 1, p.end());
  Propagation out;
  out.e = multiplicity_projective(restrict_infinity(f), tail).value;
  const Rational k = degree_gap(f), d = f.d();
  out.r_next = std::min(k, Rational(d * inst.r)) / out.e;
  const SConstant c7 = inst.inputs.count("c7") ? inst.inputs.at("c7") : degree_scaling_constant(f);
  const auto tails = f.tails();
  const SConstant c6("tails", [tails](const Place& v) {
    LogValue c;
    for (const auto& g : tails) c += size_term(g, v);
    return c;
  });
  out.c3 = s_constant_for(inst);
  out.c4 = (input(inst, "c2") + c6 + c7.scaled(1 + inst.r) + input(inst, "c9") +
            SConstant::uniform(LogValue::log_of(4), "2 log 2"))
               .scaled(Rational(1, out.e));
  return out;
}

LogValue height_growth_constant(const RegularEndo& f) {
  const auto lift = f.lift().components();
  std::vector<Rational> coeffs;
  for (const auto& g : lift) {
    for (const auto& [e, c] : g.terms()) coeffs.push_back(c);
  }
  LogValue total;
  for (const auto& v : relevant_places(coeffs)) {
    Rational best = 0;
    for (const auto& g : lift) {
      const auto s = poly_place_stats(g, v);
      const Rational n = v.archimedean() ? Rational(static_cast<unsigned long>(s.terms)) : Rational(1);
      best = std::max(best, Rational(n * s.height));
    }
    total += lplus(best);
  }
  return total;
}

HarnessReport check_inequality(const Instance& inst, BoundMode mode, const std::vector<Point>& samples,
                               const std::vector<Place>& places) {
  if (places.empty()) throw Error("weil", ErrorCode::InstanceError, "no places");
  const Evaluator ev = make_evaluator(inst, mode);
  HarnessReport rep;
  rep.statement = inst.statement;
  rep.mode = mode;
  rep.places = places;

  // per place sample lists; growth-cap builds sequences toward P when none are given
  std::vector<std::vector<Point>> per_place(places.size(), samples);
  if (inst.statement == Statement::GrowthCap && samples.empty()) {
    for (std::size_t k = 0; k < places.size(); ++k) per_place[k] = growth_sequence(*inst.p, inst.chart, places[k], 32);
  }
  std::size_t n = 0;
  for (const auto& s : per_place) n = std::max(n, s.size());
  rep.samples = n;

  std::vector<std::optional<LogValue>> sup_at(n);
  std::optional<LogValue> sup;
  for (std::size_t idx = 0; idx < n; ++idx) {
    for (std::size_t k = 0; k < places.size(); ++k) {
      if (idx >= per_place[k].size()) continue;
      const Point& x = per_place[k][idx];
      check_size(x, ev.sample_size);
      const auto checks = ev.eval(x, places[k]);
      if (checks.empty()) ++rep.skipped;
      for (const auto& ch : checks) {
        if (ch.left.infinite) {
          if (!ch.right.infinite) rep.violations.push_back({idx, places[k], "inf", ch.right.to_string()});
          continue;
        }
        if (ch.right.infinite) continue;
        const LogValue residual = ch.left.value - ch.right.value;
        if (!sup || compare(residual, *sup) == Ordering::Greater) sup = residual;
        if (mode != BoundMode::Explicit) continue;
        const Ordering o = compare(ch.left.value, ch.right.value + ch.c);
        if (o == Ordering::Inconclusive) {
          ++rep.inconclusive;
        } else if (o == Ordering::Greater || (ch.strict && o == Ordering::Equal)) {
          rep.violations.push_back({idx, places[k], ch.left.to_string(), (ch.right.value + ch.c).to_string()});
        }
      }
    }
    sup_at[idx] = sup;
  }
  rep.sup_residual = sup;
  if (mode == BoundMode::Empirical && n > 0) {
    for (std::size_t cut : {n / 8, n / 4, n / 2, n}) {
      if (cut == 0 || !sup_at[cut - 1]) continue;
      if (!rep.schedule.empty() && rep.schedule.back().first == cut) continue;
      rep.schedule.emplace_back(cut, *sup_at[cut - 1]);
    }
    const std::size_t half = n / 2;
    if (half > 0 && sup_at[half - 1] && sup) {
      mpz_class two_pow = 1;
      two_pow <<= static_cast<unsigned long>(half / 4);
      const LogValue growth = *sup - *sup_at[half - 1];
      rep.bounded = compare(growth, LogValue::constant(Rational(1, 1) / Rational(two_pow))) != Ordering::Greater;
    } else {
      rep.bounded = sup.has_value();
    }
  }
  return rep;
}

VerticalitySequence verticality_sequence(const Rational& r0, int k, int d, const std::vector<int>& cycle,
                                         std::size_t min_terms) {
  if (r0 <= 0) throw Error("weil", ErrorCode::InvalidInput, "r0 must be positive");
  if (k < 1 || k > d) throw Error("weil", ErrorCode::InvalidInput, "need 1 <= k <= d");
  if (cycle.empty() || std::any_of(cycle.begin(), cycle.end(), [](int e) { return e < 1; })) {
    throw Error("weil", ErrorCode::InvalidInput, "multiplicities must be at least 1");
  }
  VerticalitySequence s;
  s.r0 = r0;
  s.k = k;
  s.d = d;
  s.cycle = cycle;
  s.threshold = Rational(k, *std::max_element(cycle.begin(), cycle.end()));
  s.threshold.canonicalize();
  s.hypothesis_fails = s.threshold <= 2;
  s.values.push_back(r0);
  constexpr std::size_t kMaxTerms = 64;
  std::size_t stop = kMaxTerms;
  for (std::size_t n = 0;; ++n) {
    if (!s.first_index && s.values[n] >= s.threshold) {
      s.first_index = n;
      stop = std::min(kMaxTerms, std::max(min_terms, n + 1 + cycle.size()));
    }
    if (s.values.size() >= std::max(stop, min_terms) || s.values.size() >= kMaxTerms) break;
    const Rational e = cycle[n % cycle.size()];
    s.values.push_back(std::min(Rational(k), Rational(d * s.values[n])) / e);
  }
  return s;
}

}  // namespace regdyn
