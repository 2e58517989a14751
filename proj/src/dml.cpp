#include "regdyn/dml.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "regdyn/heights.hpp"
#include "regdyn/unipoly.hpp"

namespace regdyn {

namespace {

constexpr std::size_t kMaxBits = 1u << 15;
constexpr long kMaxFixedFormDegree = 4096;

std::size_t bits_of(const Point& x) {
  std::size_t b = 0;
  for (const auto& c : x) {
    b = std::max(b, mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2));
  }
  return b;
}

void require_p1(const ProjEndo& g) {
  if (g.dim() != 1) throw Error("dml", ErrorCode::DimensionError, "expected a map of P^1");
}

UniPoly reduce_mod(const UniPoly& a, const UniPoly& u) { return divmod(a, u).second; }

// G(A, B) mod u for a binary form G
UniPoly eval_form_mod(const MultiPoly& form, const UniPoly& a, const UniPoly& b, const UniPoly& u) {
  UniPoly out;
  std::map<std::uint32_t, UniPoly> pa, pb;
  auto power = [&u](std::map<std::uint32_t, UniPoly>& cache, const UniPoly& base, std::uint32_t n) -> UniPoly {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    UniPoly r(std::vector<Rational>{1});
    for (std::uint32_t i = 0; i < n; ++i) r = reduce_mod(r * base, u);
    cache.emplace(n, r);
    return r;
  };
  for (const auto& [e, c] : form.terms()) {
    out = out + reduce_mod(power(pa, a, e[0]) * power(pb, b, e[1]), u).scaled(c);
  }
  return reduce_mod(out, u);
}

std::vector<Progression> greedy_progressions(const std::vector<int>& hits, int window) {
  std::set<int> all(hits.begin(), hits.end()), left = all;
  std::vector<Progression> out;
  while (!left.empty()) {
    const int a = *left.begin();
    Progression best{a, 0};
    for (int m = 1; a + 2 * m <= window; ++m) {
      bool ok = true;
      for (int n = a; n <= window && ok; n += m) ok = all.count(n) > 0;
      if (ok) {
        best.m = m;
        break;
      }
    }
    out.push_back(best);
    if (best.m == 0) {
      left.erase(a);
    } else {
      for (int n = a; n <= window; n += best.m) left.erase(n);
    }
  }
  return out;
}

bool reproduces(const std::vector<Progression>& d, const std::vector<int>& hits, int window) {
  std::set<int> got;
  for (const auto& p : d) {
    if (p.m == 0) {
      got.insert(p.l);
    } else {
      for (int n = p.l; n <= window; n += p.m) got.insert(n);
    }
  }
  return got == std::set<int>(hits.begin(), hits.end());
}

}  // namespace

const char* to_string(Truncation t) {
  switch (t) {
    case Truncation::NMax: return "n_max";
    case Truncation::HeightCap: return "height_cap";
    case Truncation::ResourceCap: return "resource_cap";
  }
  return "?";
}

const char* to_string(PeriodStatus s) {
  switch (s) {
    case PeriodStatus::Periodic: return "periodic";
    case PeriodStatus::NotPeriodic: return "not_periodic";
    case PeriodStatus::Undecided: return "undecided";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::Fails: return "FAILS";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "?";
}

OrbitRecord orbit(const RegularEndo& f, const Point& x0, int n_max, const std::optional<LogValue>& height_cap) {
  if (n_max < 0) throw Error("dml", ErrorCode::InvalidInput, "n_max must be nonnegative");
  if (x0.size() != f.n()) throw Error("dml", ErrorCode::DimensionError, "seed has the wrong length");
  const bool rational = f.field().is_rational();
  auto height = [](const Point& x) {
    Point p{1};
    p.insert(p.end(), x.begin(), x.end());
    return LogValue::log_of(Rational(height_bound_of(p)));
  };
  OrbitRecord rec;
  rec.seed = x0;
  Point x = x0;
  for (auto& c : x) c = f.field().reduce(c);
  for (int n = 0;; ++n) {
    if (rational) {
      LogValue h = height(x);
      if (height_cap && compare(h, *height_cap) == Ordering::Greater) {
        rec.reason = Truncation::HeightCap;
        break;
      }
      rec.heights.push_back(std::move(h));
    }
    rec.points.push_back(x);
    if (n == n_max) {
      rec.reason = Truncation::NMax;
      break;
    }
    if (bits_of(x) * static_cast<std::size_t>(std::max(f.d(), 1)) > kMaxBits) {
      rec.reason = Truncation::ResourceCap;
      break;
    }
    x = f.apply(x);
  }
  return rec;
}

std::string describe(const std::vector<Progression>& d) {
  if (d.empty()) return "empty";
  std::string s;
  for (const auto& p : d) {
    if (!s.empty()) s += " | ";
    if (p.m == 0) {
      s += "n = " + std::to_string(p.l);
    } else if (p.m == 1) {
      s += "n >= " + std::to_string(p.l);
    } else {
      s += "n = " + std::to_string(p.l) + " mod " + std::to_string(p.m) + ", n >= " + std::to_string(p.l);
    }
  }
  return s;
}

ReturnSetReport return_set(const RegularEndo& f, const Point& x0, const PlaneCurve& c, int n_max,
                           const std::optional<LogValue>& height_cap) {
  if (f.n() != 2) throw Error("dml", ErrorCode::DimensionError, "the curve lives in A^2");
  if (!(f.field() == c.field())) throw Error("dml", ErrorCode::FieldMismatch, "curve and map fields differ");
  const OrbitRecord rec = orbit(f, x0, n_max, height_cap);
  ReturnSetReport rep;
  rep.window = static_cast<int>(rec.points.size()) - 1;
  rep.truncated = rec.reason != Truncation::NMax;
  for (std::size_t n = 0; n < rec.points.size(); ++n) {
    if (c.contains(rec.points[n])) rep.indices.push_back(static_cast<int>(n));
  }
  auto d = greedy_progressions(rep.indices, rep.window);
  if (reproduces(d, rep.indices, rep.window)) rep.decomposition = std::move(d);
  return rep;
}

PeriodicPoints periodic_points_p1(const ProjEndo& g, int period) {
  require_p1(g);
  if (period < 1) throw Error("dml", ErrorCode::InvalidInput, "period must be >= 1");
  if (g.degree() < 2) throw Error("dml", ErrorCode::UnsupportedDegree, "degree-1 maps can have infinitely many periodic points");
  long deg = 1;
  for (int i = 0; i < period; ++i) {
    deg *= g.degree();
    if (deg > kMaxFixedFormDegree) throw Error("dml", ErrorCode::ResourceLimit, "fixed form of degree above 4096");
  }
  const ProjEndo gp = g.iterate(period);
  const MultiPoly x = MultiPoly::variable(2, 0, g.field()), y = MultiPoly::variable(2, 1, g.field());
  PeriodicPoints out;
  out.period = period;
  out.fixed_form = y * gp.components()[0] - x * gp.components()[1];
  if (out.fixed_form.is_zero()) throw Error("dml", ErrorCode::Degenerate, "g^p is the identity");
  out.factors = split_binary_form(out.fixed_form);
  for (const auto& b : out.factors) {
    if (!b.point) continue;
    const auto [status, p] = rational_periodicity(g, *b.point, period);
    if (status == PeriodStatus::Periodic) out.points.emplace_back(*b.point, p);
  }
  return out;
}

std::vector<Point> backward_cycle_at_infinity(const ProjEndo& g, const Point& p0, int period, std::size_t count) {
  if (period < 1) throw Error("dml", ErrorCode::InvalidInput, "period must be >= 1");
  if (p0.size() != g.dim() + 1) throw Error("dml", ErrorCode::DimensionError, "point has the wrong length");
  std::vector<Point> cycle{normalize_projective(p0, g.field())};
  for (int i = 1; i <= period; ++i) cycle.push_back(g.apply(cycle.back()));
  if (!projectively_equal(cycle.back(), cycle.front(), g.field())) {
    throw Error("dml", ErrorCode::NotPeriodic,
                projective_to_string(p0) + " is not fixed by g^" + std::to_string(period));
  }
  std::vector<Point> out;
  for (std::size_t n = 0; n < count; ++n) {
    const int shift = static_cast<int>((period - static_cast<int>(n % period)) % period);
    out.push_back(cycle[shift]);
  }
  return out;
}

std::pair<PeriodStatus, int> rational_periodicity(const ProjEndo& g, const Point& p, int max_steps) {
  const Point start = normalize_projective(p, g.field());
  std::set<Point> seen{start};
  Point q = start;
  for (int n = 1; n <= max_steps; ++n) {
    q = g.apply(q);
    if (q == start) return {PeriodStatus::Periodic, n};
    if (!seen.insert(q).second) return {PeriodStatus::NotPeriodic, 0};
    if (bits_of(q) > kMaxBits) break;
  }
  return {PeriodStatus::Undecided, 0};
}

std::optional<int> factor_period(const ProjEndo& g, const MultiPoly& h, int p_max) {
  require_p1(g);
  const UniPoly u = UniPoly::from_multi(h.substitute(1, 1), 0);
  if (u.degree() < 1 || u.degree() != *h.degree()) {
    throw Error("dml", ErrorCode::InvalidInput, "factor must be a binary form prime to Y");
  }
  const UniPoly t(std::vector<Rational>{0, 1});
  UniPoly a = reduce_mod(t, u), b(std::vector<Rational>{1});
  for (int n = 1; n <= p_max; ++n) {
    UniPoly a2 = eval_form_mod(g.components()[0], a, b, u);
    UniPoly b2 = eval_form_mod(g.components()[1], a, b, u);
    a = std::move(a2);
    b = std::move(b2);
    if (reduce_mod(a - reduce_mod(t * b, u), u).is_zero()) return n;
    // keep coefficients small; any common constant factor is projective noise
    if (!b.is_zero()) {
      const Rational s = 1 / b.leading();
      a = a.scaled(s);
      b = b.scaled(s);
    }
  }
  return std::nullopt;
}

namespace {

ConditionKEntry entry_from(const ProjEndo& g, const RamificationEntry& r, int p_max) {
  ConditionKEntry e;
  e.point = r.point;
  e.factor = r.factor;
  e.residue_degree = r.residue_degree;
  e.e = r.index;
  if (r.point) {
    const auto [status, period] = rational_periodicity(g, *r.point, std::max(p_max, 64));
    e.status = status;
    e.period = period;
    if (status == PeriodStatus::Periodic) {
      e.evidence = period == 1 ? "fixed" : "returns after " + std::to_string(period) + " steps";
    } else if (status == PeriodStatus::NotPeriodic) {
      e.evidence = "forward orbit enters a cycle avoiding it";
    } else {
      e.evidence = "no return within the step bound";
    }
    return e;
  }
  if (auto p = factor_period(g, r.factor, p_max)) {
    e.status = PeriodStatus::Periodic;
    e.period = *p;
    e.evidence = "divides the period-" + std::to_string(*p) + " fixed form";
  } else {
    e.status = PeriodStatus::Undecided;
    e.evidence = "no period up to " + std::to_string(p_max);
  }
  return e;
}

// larger e, then rational points, then smaller height, then larger point
bool better_witness(const ConditionKEntry& a, const ConditionKEntry& b) {
  if (a.e != b.e) return a.e > b.e;
  if (a.point.has_value() != b.point.has_value()) return a.point.has_value();
  if (!a.point) return false;
  const Integer ha = height_bound_of(*a.point), hb = height_bound_of(*b.point);
  if (ha != hb) return ha < hb;
  return *a.point > *b.point;
}

}  // namespace

ConditionKVerdict condition_k(const RegularEndo& f, int p_max, const std::vector<Point>& candidates) {
  if (p_max < 1) throw Error("dml", ErrorCode::InvalidInput, "p_max must be >= 1");
  ConditionKVerdict out;
  out.k = degree_gap(f);
  out.p_max = p_max;
  const ProjEndo g = restrict_infinity(f);

  if (f.n() != 2) {
    if (candidates.empty()) {
      throw Error("dml", ErrorCode::UnsupportedDimension, "N >= 3 needs candidate periodic points");
    }
    for (const auto& c : candidates) {
      ConditionKEntry e;
      e.point = normalize_projective(c, f.field());
      e.e = multiplicity_projective(g, c).value;
      const auto [status, period] = rational_periodicity(g, c, std::max(p_max, 64));
      e.status = status;
      e.period = period;
      e.evidence = "candidate";
      out.certificate.push_back(e);
      if (status == PeriodStatus::Periodic && out.k <= 2 * e.e && !out.witness) out.witness = e;
    }
    out.verdict = out.witness ? Verdict::Fails : Verdict::Undecided;
    return out;
  }

  const auto profile = max_multiplicity_p1(g);
  out.wronskian = profile.wronskian;
  bool open = false;
  for (const auto& r : profile.entries) {
    ConditionKEntry e = entry_from(g, r, p_max);
    const bool matters = out.k <= 2 * e.e;
    if (matters && e.status == PeriodStatus::Periodic && (!out.witness || better_witness(e, *out.witness))) {
      out.witness = e;
    }
    if (matters && e.status == PeriodStatus::Undecided) open = true;
    out.certificate.push_back(std::move(e));
  }
  if (!out.witness && out.k <= 2) {
    // every fixed point has e >= 1
    const auto fixed = periodic_points_p1(g, 1);
    for (const auto& b : fixed.factors) {
      ConditionKEntry e;
      e.point = b.point;
      e.factor = b.factor;
      e.residue_degree = b.degree;
      e.e = b.point ? ramification_index_p1(g, *b.point) : 1;
      e.status = PeriodStatus::Periodic;
      e.period = 1;
      e.evidence = "fixed point";
      out.witness = e;
      break;
    }
  }
  if (out.witness) {
    out.verdict = Verdict::Fails;
  } else {
    out.verdict = open ? Verdict::Undecided : Verdict::Holds;
  }
  return out;
}

}  // namespace regdyn
