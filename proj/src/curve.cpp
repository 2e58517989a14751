#include "regdyn/curve.hpp"

#include <algorithm>
#include <numeric>

#include "regdyn/unipoly.hpp"

namespace regdyn {

namespace {

constexpr std::uint64_t kMaxBruteForcePrime = 10007;

MultiPoly var(std::size_t i, const Field& f = Field()) { return MultiPoly::variable(2, i, f); }

bool squarefree_in_y(const UniPoly& u) { return u.degree() > 0 && gcd(u, u.derivative()).degree() == 0; }

// y - h(x) through (a, r), from the power-series branch of a simple root.
std::optional<MultiPoly> lift_branch(const MultiPoly& g, const Rational& a, const Rational& r) {
  const int bound = *g.degree();
  const MultiPoly shifted = g.compose({var(0) + MultiPoly::constant(2, a), var(1)});
  const Rational slope = shifted.derivative(1).evaluate(Point{0, r});
  if (slope == 0) return std::nullopt;
  MultiPoly series = MultiPoly::constant(2, r);
  for (int i = 1; i <= bound; ++i) {
    const MultiPoly val = shifted.compose({var(0), series});
    const Rational e = val.coefficient({static_cast<std::uint32_t>(i), 0});
    if (e != 0) series = series + MultiPoly::monomial({static_cast<std::uint32_t>(i), 0}, -e / slope);
  }
  const MultiPoly h = series.compose({var(0) - MultiPoly::constant(2, a), var(1)});
  const MultiPoly cand = var(1) - h;
  if (!divides(cand, g)) return std::nullopt;
  return cand;
}

std::vector<MultiPoly> linear_factors(MultiPoly& g) {
  std::vector<MultiPoly> out;
  const int dy = g.degree_in(1);
  const UniPoly lead = UniPoly::from_multi(g.coefficient_in(1, static_cast<unsigned>(dy)), 0);
  if (lead.degree() > 0) {
    for (const auto& c : rational_roots(lead)) {
      if (g.substitute(0, c).is_zero()) {
        const MultiPoly lin = var(0) - MultiPoly::constant(2, c);
        out.push_back(lin);
        g = *divide_exact(g, lin);
      }
    }
  }
  if (g.degree_in(1) == 0) return out;
  for (const auto& a : rationals_by_height(60)) {
    if (g.degree_in(1) == 0) break;
    const UniPoly slice = UniPoly::from_multi(g.substitute(0, a), 1);
    if (slice.degree() != g.degree_in(1) || !squarefree_in_y(slice)) continue;
    for (const auto& r : rational_roots(slice)) {
      if (auto lin = lift_branch(g, a, r)) {
        out.push_back(*lin);
        g = *divide_exact(g, *lin);
      }
    }
    break;
  }
  return out;
}

void require_plane(const RegularEndo& f, const PlaneCurve& c) {
  if (f.n() != 2) throw Error("curve", ErrorCode::DimensionError, "expected an endomorphism of A^2");
  if (!(f.field() == c.field())) throw Error("curve", ErrorCode::FieldMismatch, "curve and map fields differ");
}

}  // namespace

PlaneCurve PlaneCurve::make(MultiPoly g) {
  if (g.nvars() != 2) throw Error("curve", ErrorCode::DimensionError, "plane curves live in two variables");
  if (g.is_zero() || g.is_constant()) throw Error("curve", ErrorCode::DegenerateInput, "constant curve equation");
  PlaneCurve c;
  c.top_ = g.top_form();
  c.degree_ = *g.degree();
  c.g_ = std::move(g);
  return c;
}

bool PlaneCurve::contains(const Point& x) const { return g_.evaluate(x) == 0; }

std::string PlaneCurve::to_string() const { return g_.to_string(); }

ParamCurve ParamCurve::make(std::vector<std::pair<MultiPoly, MultiPoly>> coords) {
  if (coords.size() < 2) throw Error("curve", ErrorCode::DimensionError, "a parametrized curve needs two coordinates");
  ParamCurve c;
  for (auto& [num, den] : coords) {
    if (num.nvars() != 1 || den.nvars() != 1) {
      throw Error("curve", ErrorCode::DimensionError, "coordinates must be functions of one parameter");
    }
    if (!num.field().is_rational() || !den.field().is_rational()) {
      throw Error("curve", ErrorCode::UnsupportedField, "parametrized curves are over Q");
    }
    if (den.is_zero()) throw Error("curve", ErrorCode::DegenerateInput, "zero denominator");
    if (!den.is_constant()) {
      for (const auto& r : rational_roots(UniPoly::from_multi(den, 0))) c.excluded_.push_back(r);
    }
  }
  std::sort(c.excluded_.begin(), c.excluded_.end());
  c.excluded_.erase(std::unique(c.excluded_.begin(), c.excluded_.end()), c.excluded_.end());
  c.coords_ = std::move(coords);
  return c;
}

std::optional<Point> ParamCurve::at(const Rational& t) const {
  Point out;
  const Point tp{t};
  for (const auto& [num, den] : coords_) {
    const Rational q = den.evaluate(tp);
    if (q == 0) return std::nullopt;
    out.push_back(num.evaluate(tp) / q);
  }
  return out;
}

std::string ParamCurve::to_string() const {
  const std::vector<std::string> t{"t"};
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ", ";
    s += "(" + coords_[i].first.to_string(t) + ")";
    if (!(coords_[i].second.is_constant() && coords_[i].second.constant_term() == 1)) {
      s += "/(" + coords_[i].second.to_string(t) + ")";
    }
  }
  return s + ")";
}

std::vector<InfinityPoint> infinity_points(const PlaneCurve& c) {
  std::vector<InfinityPoint> out;
  const MultiPoly& top = c.top_form();
  const Field& f = c.field();
  if (f.is_rational()) {
    for (const auto& b : split_binary_form(top)) {
      std::optional<Point> pt;
      if (b.point) pt = Point{0, (*b.point)[0], (*b.point)[1]};
      out.push_back({pt, b.factor, b.degree, b.multiplicity});
    }
    return out;
  }
  if (f.modulus() > kMaxBruteForcePrime) {
    throw Error("curve", ErrorCode::UnsupportedField, "infinity analysis over " + f.to_string());
  }
  MultiPoly rest = top;
  auto take = [&](const Point& ab) {
    const int m = linear_factor_multiplicity(top, ab);
    if (m == 0) return;
    const MultiPoly lin = var(0, f).scaled(ab[1]) - var(1, f).scaled(ab[0]);
    out.push_back({normalize_projective({0, ab[0], ab[1]}, f), lin, 1, m});
    for (int i = 0; i < m; ++i) rest = *divide_exact(rest, lin);
  };
  take({1, 0});
  for (std::uint64_t a = 0; a < f.modulus(); ++a) take({Rational(static_cast<unsigned long>(a)), 1});
  if (!rest.is_constant()) {
    // possibly reducible over F_p; reported as one locus
    out.push_back({std::nullopt, rest.monic(), *rest.degree(), 1});
  }
  return out;
}

bool is_invariant(const PlaneCurve& c, const RegularEndo& f) {
  require_plane(f, c);
  return divides(c.poly(), c.poly().compose(f.components()));
}

Pullback pullback_curve(const PlaneCurve& c, const RegularEndo& f) {
  require_plane(f, c);
  if (!c.field().is_rational()) throw Error("curve", ErrorCode::UnsupportedField, "pullback over a prime field");
  Pullback pb;
  pb.composed = c.poly().compose(f.components());
  pb.squarefree = squarefree_part(pb.composed).primitive();
  MultiPoly rest = pb.squarefree;
  for (auto& lin : linear_factors(rest)) pb.linear_factors.push_back(lin.primitive());
  pb.residual = rest.primitive();
  return pb;
}

std::optional<Point> is_vertical_line(const PlaneCurve& c) {
  const MultiPoly& g = c.poly();
  if (c.degree() != 1 || g.constant_term() != 0) return std::nullopt;
  const Rational alpha = g.coefficient({1, 0});
  const Rational beta = g.coefficient({0, 1});
  return normalize_projective({0, -beta, alpha}, c.field());
}

Point central_project(const Point& x) {
  if (std::all_of(x.begin(), x.end(), [](const Rational& v) { return v == 0; })) {
    throw Error("curve", ErrorCode::ProjectionUndefined, "the origin has no central projection");
  }
  Point p{0};
  p.insert(p.end(), x.begin(), x.end());
  return normalize_projective(p);
}

std::vector<Rational> rationals_by_height(std::size_t count) {
  std::vector<Rational> out;
  if (count == 0) return out;
  out.emplace_back(0);
  for (long h = 1; out.size() < count; ++h) {
    std::vector<Rational> layer;
    for (long q = 1; q <= h; ++q) {
      for (long p = 0; p <= h; ++p) {
        if (std::max(p, q) != h || std::gcd(p, q) != 1 || p == 0) continue;
        Rational v(p, q);
        v.canonicalize();
        layer.push_back(v);
      }
    }
    std::sort(layer.begin(), layer.end(), [](const Rational& a, const Rational& b) { return a > b; });
    for (const auto& v : layer) {
      if (out.size() < count) out.push_back(v);
      if (out.size() < count) out.push_back(-v);
    }
  }
  return out;
}

std::vector<Point> sample_points(const PlaneCurve& c, std::size_t budget) {
  std::vector<Point> out;
  if (!c.field().is_rational()) throw Error("curve", ErrorCode::UnsupportedField, "sampling over a prime field");
  const MultiPoly& g = c.poly();
  const std::size_t slices = 50 * budget + 100;
  const auto xs = rationals_by_height(slices);
  if (g.degree_in(1) == 0) {
    // union of vertical lines x = root
    const auto roots = rational_roots(UniPoly::from_multi(g, 0));
    for (const auto& y : xs) {
      for (const auto& x : roots) {
        if (out.size() < budget) out.push_back({x, y});
      }
      if (out.size() >= budget || roots.empty()) break;
    }
    return out;
  }
  for (const auto& x : xs) {
    if (out.size() >= budget) break;
    const MultiPoly slice = g.substitute(0, x);
    if (slice.is_zero()) {
      out.push_back({x, 0});
      continue;
    }
    if (slice.is_constant()) continue;
    for (const auto& y : rational_roots(UniPoly::from_multi(slice, 1))) {
      if (out.size() < budget) out.push_back({x, y});
    }
  }
  return out;
}

std::vector<Point> sample_points(const ParamCurve& c, std::size_t budget) {
  std::vector<Point> out;
  std::size_t want = budget + c.excluded().size();
  for (const auto& t : rationals_by_height(want)) {
    if (out.size() >= budget) break;
    if (auto p = c.at(t)) out.push_back(*p);
  }
  return out;
}

std::vector<MultiPoly> components_through(const std::vector<MultiPoly>& factors, const std::vector<Point>& points) {
  std::vector<MultiPoly> out;
  for (const auto& g : factors) {
    if (std::all_of(points.begin(), points.end(), [&](const Point& p) { return g.evaluate(p) == 0; })) {
      out.push_back(g);
    }
  }
  return out;
}

}  // namespace regdyn
