#include "regdyn/localalg.hpp"

#include <algorithm>

#include "regdyn/rng.hpp"
#include "regdyn/unipoly.hpp"

namespace regdyn {

namespace {

constexpr int kMaxTruncation = 64;

void monomials_below(std::size_t nvars, int bound, std::vector<Exponents>& out) {
  Exponents e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == nvars) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = static_cast<std::uint32_t>(k);
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  if (bound > 0) rec(rec, 0, bound - 1);
}

int total(const Exponents& e) {
  int s = 0;
  for (auto v : e) s += static_cast<int>(v);
  return s;
}

int order_of(const MultiPoly& f) {
  int ord = -1;
  for (const auto& [e, c] : f.terms()) {
    const int t = total(e);
    ord = ord < 0 ? t : std::min(ord, t);
  }
  return ord;
}

// dim k[x]/(F + m^M) for polynomials vanishing at the origin.
std::size_t truncated_colength(const std::vector<MultiPoly>& fs, std::size_t nvars, int m, Field field) {
  std::vector<Exponents> monos;
  monomials_below(nvars, m, monos);
  std::map<Exponents, std::size_t> cols;
  // low degrees first so pivots sit on the lowest-degree terms
  std::stable_sort(monos.begin(), monos.end(), [](const Exponents& a, const Exponents& b) { return total(a) < total(b); });
  for (std::size_t i = 0; i < monos.size(); ++i) cols.emplace(monos[i], i);
  SparseEchelon ech(field);
  for (const auto& f : fs) {
    const int ord = order_of(f);
    if (ord < 0 || ord >= m) continue;
    for (const auto& a : monos) {
      if (total(a) + ord >= m) continue;
      SparseEchelon::Row row;
      for (const auto& [e, c] : f.terms()) {
        Exponents s = e;
        for (std::size_t i = 0; i < nvars; ++i) s[i] += a[i];
        if (total(s) < m) row[cols.at(s)] = c;
      }
      ech.insert(std::move(row));
      if (ech.rank() == cols.size()) return 0;
    }
  }
  return cols.size() - ech.rank();
}

// Drop variable l after setting it to 1.
MultiPoly affine_chart(const MultiPoly& f, std::size_t l) {
  const std::size_t n = f.nvars();
  std::vector<std::size_t> to(n);
  for (std::size_t i = 0; i < n; ++i) to[i] = i < l ? i : (i == l ? 0 : i - 1);
  return f.substitute(l, 1).remap(n - 1, to);
}

void require_p1(const ProjEndo& g) {
  if (g.dim() != 1) throw Error("localalg", ErrorCode::DimensionError, "expected a map of P^1");
}

void require_rational(const ProjEndo& g) {
  if (!g.field().is_rational()) {
    throw Error("localalg", ErrorCode::UnsupportedField, "ramification over " + g.field().to_string());
  }
}

std::vector<RamificationEntry> entries_of(const MultiPoly& form, int shift) {
  std::vector<RamificationEntry> out;
  for (const auto& b : split_binary_form(form)) {
    out.push_back({b.point, b.factor, b.degree, b.multiplicity + shift});
  }
  return out;
}

}  // namespace

MultiplicityResult multiplicity_at(const std::vector<MultiPoly>& map, const Point& p, const std::optional<Point>& q) {
  if (map.empty()) throw Error("localalg", ErrorCode::DegenerateInput, "empty map");
  const std::size_t n = p.size();
  const Field field = map.front().field();
  for (const auto& f : map) {
    if (f.nvars() != n) throw Error("localalg", ErrorCode::DimensionError, "point and map dimensions differ");
  }
  Point image;
  for (const auto& f : map) image.push_back(f.evaluate(p));
  if (q) {
    if (q->size() != map.size()) throw Error("localalg", ErrorCode::DimensionError, "image point has the wrong length");
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (field.reduce((*q)[i]) != image[i]) {
        throw Error("localalg", ErrorCode::InvalidInput, "the map does not send P to Q");
      }
    }
  }
  std::vector<MultiPoly> shift;
  for (std::size_t i = 0; i < n; ++i) {
    shift.push_back(MultiPoly::variable(n, i, field) + MultiPoly::constant(n, p[i], field));
  }
  std::vector<MultiPoly> fs;
  for (std::size_t i = 0; i < map.size(); ++i) {
    fs.push_back(map[i].compose(shift) - MultiPoly::constant(n, image[i], field));
  }
  MultiplicityResult res;
  for (int m = 2; m <= kMaxTruncation; m *= 2) {
    const std::size_t dim = truncated_colength(fs, n, m, field);
    if (!res.trace.empty() && res.trace.back().second == dim) {
      res.trace.emplace_back(m, dim);
      res.value = static_cast<int>(dim);
      res.truncation = m;
      res.stabilized = true;
      return res;
    }
    res.trace.emplace_back(m, dim);
  }
  std::string dims;
  for (const auto& [m, dim] : res.trace) dims += (dims.empty() ? "" : ", ") + std::to_string(dim);
  throw Error("localalg", ErrorCode::NotIsolated,
              "fiber not isolated at " + affine_to_string(p) + " (dimensions " + dims + ")");
}

MultiplicityResult multiplicity_projective(const ProjEndo& g, const Point& p) {
  if (p.size() != g.dim() + 1) throw Error("localalg", ErrorCode::DimensionError, "point has the wrong length");
  const Point pn = normalize_projective(p, g.field());
  const Point q = g.apply(pn);
  std::size_t l = 0;
  while (pn[l] == 0) ++l;
  std::size_t j = 0;
  while (q[j] == 0) ++j;
  const auto& forms = g.components();
  std::vector<MultiPoly> hs;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (i == j) continue;
    hs.push_back(affine_chart(forms[i].scaled(q[j]) - forms[j].scaled(q[i]), l));
  }
  Point local;
  for (std::size_t i = 0; i < pn.size(); ++i) {
    if (i != l) local.push_back(pn[i] / pn[l]);
  }
  return multiplicity_at(hs, local);
}

int ramification_index_p1(const ProjEndo& g, const Point& p) {
  require_p1(g);
  require_rational(g);
  const Point q = g.apply(p);
  const auto& G = g.components();
  return linear_factor_multiplicity(G[0].scaled(q[1]) - G[1].scaled(q[0]), p);
}

RamificationProfile max_multiplicity_p1(const ProjEndo& g) {
  require_p1(g);
  require_rational(g);
  const auto& G = g.components();
  RamificationProfile prof;
  prof.wronskian = G[0].derivative(0) * G[1].derivative(1) - G[0].derivative(1) * G[1].derivative(0);
  if (prof.wronskian.is_zero()) {
    throw Error("localalg", ErrorCode::UnsupportedField, "identically zero Wronskian");
  }
  if (!prof.wronskian.is_constant()) prof.entries = entries_of(prof.wronskian, 1);
  for (const auto& e : prof.entries) prof.max_index = std::max(prof.max_index, e.index);
  return prof;
}

std::vector<RamificationEntry> fiber_p1(const ProjEndo& g, const Point& q) {
  require_p1(g);
  require_rational(g);
  if (q.size() != 2) throw Error("localalg", ErrorCode::DimensionError, "expected a point of P^1");
  const auto& G = g.components();
  return entries_of(G[0].scaled(q[1]) - G[1].scaled(q[0]), 0);
}

int intersection_number_at_infinity(const MultiPoly& curve, const Point& p) {
  if (curve.nvars() != 2 || p.size() != 3) {
    throw Error("localalg", ErrorCode::DimensionError, "expected a plane curve and a point [0:a:b]");
  }
  if (curve.is_zero() || curve.is_constant()) throw Error("localalg", ErrorCode::DegenerateInput, "constant curve");
  const MultiPoly top = curve.top_form();
  const Point ab{p[1], p[2]};
  if (p[0] != 0 || (ab[0] == 0 && ab[1] == 0) || top.evaluate(ab) != 0) {
    throw Error("localalg", ErrorCode::NotOnCurve, projective_to_string(p) + " is not on the closure at infinity");
  }
  return linear_factor_multiplicity(top, ab);
}

std::vector<Point> rational_common_zeros(const MultiPoly& a, const MultiPoly& b) {
  std::vector<Point> out;
  if (a.is_zero() || b.is_zero() || a.nvars() != 2 || b.nvars() != 2) return out;
  if (a.is_constant() || b.is_constant()) return out;
  MultiPoly elim;
  if (a.degree_in(1) > 0 && b.degree_in(1) > 0) {
    elim = resultant(a, b, 1);
  } else {
    elim = a.degree_in(1) == 0 ? a : b;
  }
  if (elim.is_zero()) return out;
  if (elim.is_constant()) return out;
  for (const Rational& x : rational_roots(UniPoly::from_multi(elim, 0))) {
    const UniPoly ua = UniPoly::from_multi(a.substitute(0, x), 1);
    const UniPoly ub = UniPoly::from_multi(b.substitute(0, x), 1);
    if (ua.is_zero() && ub.is_zero()) continue;
    const UniPoly h = ua.is_zero() ? ub : (ub.is_zero() ? ua : gcd(ua, ub));
    if (h.degree() <= 0) continue;
    for (const Rational& y : rational_roots(h)) out.push_back({x, y});
  }
  std::sort(out.begin(), out.end());
  return out;
}

int survey_multiplicity_a2(const RegularEndo& f) {
  if (f.n() != 2) throw Error("localalg", ErrorCode::DimensionError, "expected a map of A^2");
  const auto& c = f.components();
  const MultiPoly jac = c[0].derivative(0) * c[1].derivative(1) - c[0].derivative(1) * c[1].derivative(0);
  if (jac.is_constant()) return 1;
  int best = 2;
  // derivative of J along the kernel direction (-f1_y, f1_x) of the differential
  const MultiPoly kdir = jac.derivative(0) * (-c[0].derivative(1)) + jac.derivative(1) * c[0].derivative(0);
  const MultiPoly kdir2 = jac.derivative(0) * (-c[1].derivative(1)) + jac.derivative(1) * c[1].derivative(0);
  std::vector<Point> candidates = rational_common_zeros(jac, kdir);
  for (const auto& p : rational_common_zeros(jac, kdir2)) candidates.push_back(p);
  // singular points of J = 0, where both slices above can share a component
  for (const auto& p : rational_common_zeros(jac.derivative(0), jac.derivative(1))) {
    if (jac.evaluate(p) == 0) candidates.push_back(p);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& p : candidates) {
    try {
      best = std::max(best, multiplicity_at(c, p).value);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotIsolated) throw;
    }
  }
  return best;
}

SurveyResult survey_max_multiplicity(int dim, int degree, std::size_t samples, long coeff_height,
                                     std::uint64_t seed, const std::vector<ProjEndo>& injected_p1,
                                     const std::vector<RegularEndo>& injected_a2) {
  if (dim != 1 && dim != 2) throw Error("localalg", ErrorCode::UnsupportedDimension, "survey supports dim 1 and 2");
  if (samples < 1 || degree < 1 || coeff_height < 1) {
    throw Error("localalg", ErrorCode::InvalidInput, "samples, degree and coefficient height must be positive");
  }
  SurveyResult res;
  res.dim = dim;
  res.degree = degree;
  res.coeff_height = coeff_height;
  res.seed = seed;
  auto record = [&](int e) {
    res.values.push_back(e);
    ++res.histogram[e];
    ++res.samples;
  };
  for (const auto& g : injected_p1) record(max_multiplicity_p1(g).max_index);
  for (const auto& f : injected_a2) record(survey_multiplicity_a2(f));

  Rng rng(seed);
  const std::size_t budget = 1000 * samples;
  std::size_t draws = 0;
  std::size_t found = 0;
  auto random_coeff = [&] { return Rational(rng.uniform_int(-coeff_height, coeff_height)); };
  while (found < samples) {
    if (draws == budget) {
      throw Error("localalg", ErrorCode::SamplingExhausted,
                  "no regular map in " + std::to_string(budget) + " draws");
    }
    ++draws;
    try {
      if (dim == 1) {
        std::vector<MultiPoly> forms;
        for (int i = 0; i < 2; ++i) {
          MultiPoly f(2);
          for (int a = 0; a <= degree; ++a) {
            f = f + MultiPoly::monomial({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(degree - a)},
                                        random_coeff());
          }
          forms.push_back(std::move(f));
        }
        const ProjEndo g = ProjEndo::make(std::move(forms));
        record(max_multiplicity_p1(g).max_index);
      } else {
        std::vector<MultiPoly> comps;
        for (int i = 0; i < 2; ++i) {
          MultiPoly f(2);
          for (int t = 0; t <= degree; ++t) {
            for (int a = 0; a <= t; ++a) {
              f = f + MultiPoly::monomial({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(t - a)},
                                          random_coeff());
            }
          }
          comps.push_back(std::move(f));
        }
        const RegularEndo f = RegularEndo::make(std::move(comps));
        if (f.d() != degree) throw Error("endo", ErrorCode::NotRegular, "degree dropped");
        record(survey_multiplicity_a2(f));
      }
      ++found;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotRegular && e.code() != ErrorCode::DegenerateInput) throw;
      ++res.skipped_nonregular;
    }
  }
  return res;
}

}  // namespace regdyn
