#include "regdyn/fixtures.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

#include "regdyn/dml.hpp"
#include "regdyn/heights.hpp"
#include "regdyn/localalg.hpp"
#include "regdyn/parser.hpp"
#include "regdyn/rng.hpp"
#include "regdyn/weil.hpp"

namespace regdyn {

namespace {

using Outcome = std::pair<bool, std::string>;

MultiPoly P(const std::string& s, Field f = Field()) { return parse_poly(s, default_variable_names(2), f); }

RegularEndo E(const std::string& a, const std::string& b, Field f = Field()) {
  return RegularEndo::make({P(a, f), P(b, f)});
}

ProjEndo G(const std::string& a, const std::string& b) {
  const std::vector<std::string> xy{"X", "Y"};
  return ProjEndo::make({parse_poly(a, xy), parse_poly(b, xy)});
}

const PlaneCurve& hyperbola() {
  static const PlaneCurve c = PlaneCurve::make(P("x^2 - y^2 - 4"));
  return c;
}

std::string yes(bool b) { return b ? "yes" : "NO"; }

MultiPoly random_binary_form(Rng& rng, int d, long h) {
  MultiPoly f(2);
  for (int i = 0; i <= d; ++i) {
    f = f + MultiPoly::monomial({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(d - i)},
                                Rational(rng.uniform_int(-h, h)));
  }
  return f;
}

Outcome example_one() {
  const auto f = E("x^3 - 3*x", "y^3 + 3*y");
  const bool inv = is_invariant(hyperbola(), f);
  const int gap = degree_gap(f);
  const auto inf = infinity_points(hyperbola());
  bool points = inf.size() == 2;
  for (const auto& p : inf) {
    points = points && p.point && p.intersection == 1 &&
             (*p.point == Point{0, 1, 1} || *p.point == Point{0, 1, -1});
  }
  const ProjEndo g = restrict_infinity(f);
  const bool cube = g == G("X^3", "Y^3");
  const int e1 = ramification_index_p1(g, {1, 1}), e2 = ramification_index_p1(g, {1, -1});
  return {inv && gap == 2 && points && cube && e1 == 1 && e2 == 1,
          "invariant " + yes(inv) + ", gap " + std::to_string(gap) + ", points at infinity [0:1:1] [0:1:-1] with i = 1 " +
              yes(points) + ", e = " + std::to_string(e1) + ", " + std::to_string(e2)};
}

Outcome example_two() {
  const auto f = E("(x^4 + y^4)/2 - 6", "x*y*(x^2 + y^2)/2");
  const bool inv = is_invariant(hyperbola(), f);
  const int gap = degree_gap(f);
  const auto prof = max_multiplicity_p1(G("X^4 + Y^4", "X*Y*(X^2 + Y^2)"));
  const auto ck = condition_k(f);
  const bool witness = ck.witness && ck.witness->point && *ck.witness->point == Point{1, 1} && ck.witness->e == 2;
  return {inv && gap == 4 && prof.max_index == 2 && ck.verdict == Verdict::Fails && witness,
          "invariant " + yes(inv) + ", gap " + std::to_string(gap) + ", max e " + std::to_string(prof.max_index) +
              ", condition-k " + to_string(ck.verdict) + ", witness t = 1 with e = 2 " + yes(witness)};
}

Outcome lattes() {
  const ProjEndo l = G("(X^2 + Y^2)^2", "4*X*Y*(X^2 - Y^2)");
  const auto prof = max_multiplicity_p1(l);
  return {l.degree() == 4 && prof.max_index == 2,
          "degree " + std::to_string(l.degree()) + ", max e " + std::to_string(prof.max_index)};
}

Outcome survey() {
  const auto s = survey_max_multiplicity(1, 3, 100, 10, 20240601);
  std::size_t twos = 0;
  bool capped = true;
  for (int e : s.values) {
    twos += e == 2;
    capped = capped && e <= 3;
  }
  const std::size_t n = s.values.size();
  return {n >= 95 && capped && twos * 10 >= n * 9,
          std::to_string(n) + " regular samples, all e <= 3 " + yes(capped) + ", e = 2 in " + std::to_string(twos)};
}

Outcome symmetric_square_fixture() {
  const std::vector<std::string> abc{"A", "B", "C"};
  const ProjEndo s = symmetric_square(G("X^2", "Y^2"));
  const bool form = s.components()[0] == parse_poly("A^2", abc) &&
                    s.components()[1] == parse_poly("2*A*C - B^2", abc) && s.components()[2] == parse_poly("C^2", abc);
  const int e = multiplicity_at({P("2*y - x^2"), P("y^2")}, {0, 0}).value;
  return {form && e == 4 && e <= 8, "form " + yes(form) + ", e = " + std::to_string(e) + " <= 8"};
}

Outcome weil_harness() {
  const std::vector<Place> s{Place::infinity(), Place::finite(2), Place::finite(3), Place::finite(5)};
  Rng rng(77);
  std::string detail;
  bool ok = true;
  auto note = [&](const std::string& name, const HarnessReport& r) {
    ok = ok && r.violations.empty() && r.inconclusive == 0;
    detail += name + " " + std::to_string(r.violations.size()) + "/" + std::to_string(r.samples) + "; ";
  };

  Instance cc;
  cc.statement = Statement::ChartChange;
  cc.p = Point{1, 2};
  std::vector<Point> p1;
  while (p1.size() < 200) {
    Point x{rng.rational(1000, 1000), rng.rational(1000, 1000)};
    if (x[0] != 0 || x[1] != 0) p1.push_back(x);
  }
  note("chart-change", check_inequality(cc, BoundMode::Explicit, p1, s));

  Instance ds;
  ds.statement = Statement::DegreeScaling;
  ds.f = E("x^2", "y^2");
  std::vector<Point> a2;
  for (int i = 0; i < 100; ++i) a2.push_back({rng.rational(1000, 1000), rng.rational(1000, 1000)});
  const auto dr = check_inequality(ds, BoundMode::Explicit, a2, s);
  note("degree-scaling", dr);
  const bool zero = dr.sup_residual && dr.sup_residual->is_zero();
  ok = ok && zero;
  detail += "residual " + (dr.sup_residual ? dr.sup_residual->to_string() : std::string("none")) + "; ";

  Instance sp;
  sp.statement = Statement::Separation;
  sp.p = Point{0, 1, 0};
  sp.chart = 1;
  sp.ideal = {parse_poly("y - x - z", default_variable_names(3))};
  std::vector<Point> on;
  while (on.size() < 100) {
    const Rational u = rng.rational(1000, 1000), v = rng.rational(1000, 1000);
    if (u + v != 0) on.push_back({u, u + v, v});
  }
  note("separation", check_inequality(sp, BoundMode::Explicit, on, s));

  Instance pr;
  pr.statement = Statement::Projection;
  pr.p = Point{0, 1, -1};
  pr.chart = 1;
  note("projection", check_inequality(pr, BoundMode::Explicit, a2, s));

  Instance cb;
  cb.statement = Statement::CurveBound;
  cb.curve = hyperbola();
  const auto hp =
      ParamCurve::make({parse_rational_function("t^2 + 1/(t)"), parse_rational_function("t^2 - 1/(t)")});
  note("curve-bound", check_inequality(cb, BoundMode::Explicit, sample_points(hp, 100), s));
  return {ok, "violations per statement: " + detail.substr(0, detail.size() - 2)};
}

Outcome product_formula() {
  Rng rng(500);
  std::size_t bad = 0;
  for (int i = 0; i < 500; ++i) {
    if (!product_formula_check(rng.nonzero_rational(1000000, 1000000)).is_zero()) ++bad;
  }
  return {bad == 0, std::to_string(500 - bad) + "/500 exact zero residuals"};
}

Outcome oracle() {
  Rng rng(8);
  int checked = 0, agree = 0, total = 0;
  while (checked < 50) {
    const int d = static_cast<int>(rng.uniform_int(2, 4));
    MultiPoly g0 = random_binary_form(rng, d, 4);
    const MultiPoly g1 = random_binary_form(rng, d, 4);
    if (checked % 2 == 0) {
      const int e = static_cast<int>(rng.uniform_int(2, d));
      g0 = P("x^" + std::to_string(e)) * random_binary_form(rng, d - e, 4);
    }
    ProjEndo g;
    try {
      g = ProjEndo::make({g0, g1});
    } catch (const Error&) {
      continue;
    }
    for (const Point& p : {Point{0, 1}, Point{1, 0}, Point{1, 1}, Point{rng.rational(3, 2), Rational(1)}}) {
      ++total;
      agree += multiplicity_projective(g, p).value == ramification_index_p1(g, p);
    }
    ++checked;
  }
  const int e1 = multiplicity_at({P("x"), P("y")}, {0, 0}).value;
  const int e2 = multiplicity_at({P("x^2"), P("y^2")}, {0, 0}).value;
  const int e3 = multiplicity_at({P("2*y - x^2"), P("y^2")}, {0, 0}).value;
  return {agree == total && e1 == 1 && e2 == 4 && e3 == 4,
          std::to_string(agree) + "/" + std::to_string(total) + " points agree on 50 maps; fixed cases " +
              std::to_string(e1) + ", " + std::to_string(e2) + ", " + std::to_string(e3)};
}

Outcome verticality() {
  const auto s = verticality_sequence(Rational(1, 2), 3, 3, {1});
  const bool seq = s.values.size() >= 3 && s.values[0] == Rational(1, 2) && s.values[1] == Rational(3, 2) &&
                   s.values[2] == 3;
  const bool idx = s.first_index && *s.first_index == 2 && s.values[2] > 2 && !s.hypothesis_fails;
  const auto t = verticality_sequence(Rational(1, 2), 2, 3, {1});
  return {seq && idx && t.hypothesis_fails,
          "sequence " + yes(seq) + ", threshold index 2 with r = 3 " + yes(idx) + ", k = 2 flagged " +
              yes(t.hypothesis_fails)};
}

Outcome return_sets() {
  const auto a = return_set(E("x^3 - 3*x", "y^3 + 3*y"), {2, 0}, hyperbola(), 50);
  const bool all = a.indices.size() == 51 && a.decomposition && *a.decomposition == std::vector<Progression>{{0, 1}};
  const auto sq = E("x^2", "y^2");
  const auto b = return_set(sq, {2, 3}, PlaneCurve::make(P("x - 2")), 50);
  const auto c = return_set(sq, {2, 3}, PlaneCurve::make(P("x - y")), 50);
  const bool single = b.indices == std::vector<int>{0};
  const bool none = c.indices.empty();
  return {all && single && none, "{0..50} as " + (a.decomposition ? describe(*a.decomposition) : std::string("?")) +
                                     " " + yes(all) + "; {0} " + yes(single) + " (window " +
                                     std::to_string(b.window) + "); empty " + yes(none) + " (window " +
                                     std::to_string(c.window) + ")"};
}

Outcome prime_field() {
  const Field f5 = Field::prime(5);
  const auto c = PlaneCurve::make(P("x^2 - y^2 - 1", f5));
  const auto f = E("x^5 + (x^2 - y^2 - 1)*y^3", "y^5", f5);
  const bool inv = is_invariant(c, f);
  return {inv && degree_gap(f) == 2, "invariant over F5 " + yes(inv) + ", gap " + std::to_string(degree_gap(f))};
}

std::size_t brute_force_p1(long bound) {
  std::set<Point> seen;
  for (long a = -bound; a <= bound; ++a) {
    for (long b = -bound; b <= bound; ++b) {
      if (a == 0 && b == 0) continue;
      seen.insert(normalize_projective({Rational(a), Rational(b)}));
    }
  }
  return seen.size();
}

Outcome bounded_height() {
  const std::size_t one = points_of_bounded_height(1, 1).size(), two = points_of_bounded_height(1, 2).size();
  const std::size_t b1 = brute_force_p1(1), b2 = brute_force_p1(2);
  return {one == 4 && two == 8 && one == b1 && two == b2,
          "B = 1: " + std::to_string(one) + " (brute force " + std::to_string(b1) + "), B = 2: " + std::to_string(two) +
              " (brute force " + std::to_string(b2) + ")"};
}

Outcome condition_holds() {
  const auto ck = condition_k(E("x^5 + y^5", "x^4*y"));
  bool pre = false, rest = true;
  for (const auto& e : ck.certificate) {
    if (e.point && *e.point == Point{0, 1}) {
      pre = e.e == 4 && e.status == PeriodStatus::NotPeriodic;
    } else {
      rest = rest && e.e == 2;
    }
  }
  const bool w = ck.wronskian.top_form() == ck.wronskian &&
                 divides(parse_poly("X^3*(X^5 - 4*Y^5)", {"X", "Y"}), ck.wronskian) &&
                 *ck.wronskian.degree() == 8;
  return {ck.verdict == Verdict::Holds && pre && rest && w && ck.k == 5,
          std::string(to_string(ck.verdict)) + ", Wronskian ~ X^3(X^5 - 4Y^5) " + yes(w) +
              ", [0:1] e = 4 not periodic " + yes(pre) + ", other e = 2 " + yes(rest)};
}

struct Spec {
  int id;
  const char* name;
  double limit_ms;
  std::function<Outcome()> run;
};

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  const std::vector<Spec> specs{
      {1, "gap-2 example on x^2 - y^2 = 4", 1000, example_one},
      {2, "gap-4 example on x^2 - y^2 = 4", 1000, example_two},
      {3, "Lattes doubling map", 1000, lattes},
      {4, "multiplicity survey, N = 1, d = 3", 10000, survey},
      {5, "symmetric square", 1000, symmetric_square_fixture},
      {6, "Weil harness, explicit constants", 30000, weil_harness},
      {7, "product formula", 5000, product_formula},
      {8, "Macaulay vs order of vanishing", 20000, oracle},
      {9, "verticality recursion", 1000, verticality},
      {10, "return sets", 1000, return_sets},
      {11, "invariance over F5", 1000, prime_field},
      {12, "bounded height on P^1", 1000, bounded_height},
      {13, "condition-k holds", 1000, condition_holds},
  };
  std::vector<CriterionResult> out;
  for (const auto& s : specs) {
    CriterionResult r;
    r.id = s.id;
    r.name = s.name;
    r.limit_ms = s.limit_ms;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto [ok, detail] = s.run();
      r.correct = ok;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.correct = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "[%s] %2d  %-36s (%.1f ms / %.0f ms)  ", r.passed() ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.elapsed_ms, r.limit_ms);
  std::string s = head + r.detail;
  if (r.correct && !r.passed()) s += "  [over time limit]";
  return s;
}

}  // namespace regdyn
