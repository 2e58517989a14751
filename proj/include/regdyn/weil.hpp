#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regdyn/curve.hpp"
#include "regdyn/endo.hpp"
#include "regdyn/heights.hpp"
#include "regdyn/linalg.hpp"

namespace regdyn {

/// A nonnegative exact log value or +infinity.
struct WeilValue {
  bool infinite = false;
  LogValue value;

  static WeilValue of(LogValue v) { return {false, std::move(v)}; }
  static WeilValue plus_infinity() { return {true, LogValue()}; }
  std::string to_string() const;
  friend bool operator==(const WeilValue& a, const WeilValue& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

/// lambda_P^i(v, x) = -log^- max_{j != i} |x_j/x_i - a_j/a_i|_v, 0 when
/// x_i = 0, +infinity iff x = P. weil.InvalidChart when a_i = 0.
WeilValue weil_point(const Place& v, const Point& p, const Point& x, std::size_t chart);
/// log^+ max_i |x_i|_v for an affine point.
WeilValue weil_infinity(const Place& v, const Point& x);

struct PolyPlaceStats {
  std::size_t terms = 0;  // N(f)
  Rational height;        // H_v(f), the largest |coefficient|_v
  LogValue log_sum;       // l_v(f), the sum of log^+ |coefficient|_v
};

/// weil.DegenerateInput for the zero polynomial.
PolyPlaceStats poly_place_stats(const MultiPoly& f, const Place& v);

/// A per-place nonnegative bound with a label saying where it came from.
class SConstant {
 public:
  using Rule = std::function<LogValue(const Place&)>;
  SConstant() = default;
  SConstant(std::string label, Rule rule) : label_(std::move(label)), rule_(std::move(rule)) {}
  static SConstant zero(const std::string& label = "0");
  static SConstant uniform(const LogValue& c, const std::string& label);

  LogValue at(const Place& v) const { return rule_ ? rule_(v) : LogValue(); }
  const std::string& label() const noexcept { return label_; }

  SConstant scaled(const Rational& s) const;
  friend SConstant operator+(const SConstant& a, const SConstant& b);
  friend SConstant max(const SConstant& a, const SConstant& b);

 private:
  std::string label_ = "0";
  Rule rule_;
};

enum class Statement {
  ChartChange,          // lambda_P^i and lambda_P^j bound each other
  LinearChange,         // lambda_P(x) <= lambda_{A(P)}(A x) + c
  Functoriality,        // lambda_P(x) <= lambda_{g(P)}(g(x)) + c
  GrowthCap,            // lambda_{g(P)}(g(x)) <= e lambda_P(x) + c near P
  DegreeScaling,        // lambda_inf(f(x)) and d lambda_inf(x) bound each other
  Separation,           // x in V forces lambda_P(x) < c
  CurveLocal,           // lambda_inf(x) <= i(P) lambda_P(x) + c on C near P
  CurveBound,           // lambda_inf(x) <= sum i(P_j) lambda_{P_j}(x) + c on C
  Projection,           // lambda_P(x) <= lambda_P(pi(x)) + c, P at infinity
  ConstantPropagation,  // r' lambda_inf(x) <= lambda_P(pi(x)) + c4 near P
  Verticality,          // r_n lambda_inf(x) <= lambda_P(pi(x)) + c on C near P
};

const char* to_string(Statement s);
/// weil.InvalidInput for an unknown id.
Statement parse_statement(const std::string& id);
std::vector<Statement> all_statements();
bool has_explicit_constant(Statement s);

enum class BoundMode { Explicit, Empirical };
const char* to_string(BoundMode m);

/// Data for one statement; which fields matter depends on the statement.
struct Instance {
  Statement statement = Statement::ChartChange;
  std::optional<Point> p;               // target point (projective)
  std::size_t chart = 0;                // chart i of P
  std::size_t other_chart = 1;          // chart j (second chart or chart of the image)
  std::optional<Matrix> a;              // linear-change
  std::optional<ProjEndo> g;            // functoriality, growth-cap
  std::optional<RegularEndo> f;         // degree-scaling, constant-propagation
  std::vector<MultiPoly> ideal;         // separation: homogeneous equations of V
  std::optional<PlaneCurve> curve;      // curve-local, curve-bound, verticality
  Rational r = 0;                       // verticality r_n; propagation r
  std::map<std::string, SConstant> inputs;  // propagation: c1 c2 c5 c7 c8 c9
};

/// The explicit per-place constant of the statement. For two-sided
/// statements this is the constant of the direction chart -> other_chart.
/// weil.CertificateUnavailable for growth-cap, curve-local and verticality,
/// and for propagation inputs that are missing. weil.InstanceError when the
/// instance is not in the normalized shape the formula needs.
SConstant s_constant_for(const Instance& inst);

/// The constants c3 and c4 of the propagation step.
struct Propagation {
  SConstant c3;
  SConstant c4;
  Rational r_next;  // min(k, d r) / e
  int e = 1;
};
Propagation propagate_constants(const Instance& inst);

/// Sum over places of max_i log^+(N_v H_v) over the components of the
/// projective lift, N_v = N(f_i) at infinity and 1 at primes, so that
/// h(F(x)) <= d h(x) + C_f.
LogValue height_growth_constant(const RegularEndo& f);

struct Violation {
  std::size_t sample = 0;
  Place place;
  std::string left;
  std::string right;
};

struct HarnessReport {
  Statement statement = Statement::ChartChange;
  BoundMode mode = BoundMode::Explicit;
  std::size_t samples = 0;
  std::vector<Place> places;
  std::vector<Violation> violations;
  std::size_t inconclusive = 0;
  std::size_t skipped = 0;        // pairs outside the statement's hypotheses
  std::optional<LogValue> sup_residual;  // largest left - right before the constant
  std::vector<std::pair<std::size_t, LogValue>> schedule;  // empirical running sup
  bool bounded = true;            // empirical verdict
};

/// Explicit mode: checks the inequality with s_constant_for at every
/// (sample, place). Empirical mode: running sup of left - right over the
/// prefixes n/8, n/4, n/2, n; bounded when the sup grows by at most
/// 2^(-n/8) over the final half. Growth-cap generates its own sequences
/// x_m -> P when no samples are given.
HarnessReport check_inequality(const Instance& inst, BoundMode mode, const std::vector<Point>& samples,
                               const std::vector<Place>& places);

struct VerticalitySequence {
  Rational r0;
  int k = 0;
  int d = 0;
  std::vector<int> cycle;          // e_1, e_2, ... repeated
  std::vector<Rational> values;    // r_0, r_1, ...
  Rational threshold;              // min over the cycle of k / e
  std::optional<std::size_t> first_index;  // least n with r_n >= threshold
  bool hypothesis_fails = false;   // threshold <= 2
};

/// r_n = min(k, d r_{n-1}) / e_n with e_n = cycle[(n - 1) mod len]; computed
/// until the threshold is reached plus one cycle (at most 64 terms, at least
/// min_terms). weil.InvalidInput for r0 <= 0, k outside [1, d] or e < 1.
VerticalitySequence verticality_sequence(const Rational& r0, int k, int d, const std::vector<int>& cycle,
                                         std::size_t min_terms = 3);

}  // namespace regdyn
