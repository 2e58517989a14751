#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regdyn/curve.hpp"
#include "regdyn/endo.hpp"
#include "regdyn/localalg.hpp"
#include "regdyn/logvalue.hpp"

namespace regdyn {

enum class Truncation { NMax, HeightCap, ResourceCap };
const char* to_string(Truncation t);

struct OrbitRecord {
  Point seed;
  std::vector<Point> points;     // f^0(x), ..., f^n(x)
  std::vector<LogValue> heights; // naive heights of [1:x]; empty over F_p
  Truncation reason = Truncation::NMax;
};

/// Stops after n_max steps, before the first point whose height exceeds
/// height_cap, or when a coordinate needs more than 2^15 bits.
OrbitRecord orbit(const RegularEndo& f, const Point& x0, int n_max,
                  const std::optional<LogValue>& height_cap = std::nullopt);

/// {l + m j : j >= 0}; m = 0 is the single index l.
struct Progression {
  int l = 0;
  int m = 0;
  friend bool operator==(const Progression& a, const Progression& b) { return a.l == b.l && a.m == b.m; }
};

struct ReturnSetReport {
  std::vector<int> indices;
  /// Window-based guess, smallest modulus first; absent when it does not
  /// reproduce the indices exactly.
  std::optional<std::vector<Progression>> decomposition;
  bool truncated = false;  // orbit ended before n_max
  int window = 0;          // last index examined
};

/// dml.DimensionError when f and C live in different dimensions.
ReturnSetReport return_set(const RegularEndo& f, const Point& x0, const PlaneCurve& c, int n_max,
                           const std::optional<LogValue>& height_cap = std::nullopt);
std::string describe(const std::vector<Progression>& d);

struct PeriodicPoints {
  int period = 1;
  MultiPoly fixed_form;               // Y G0^(p) - X G1^(p)
  std::vector<BinaryFactor> factors;  // of the fixed form
  std::vector<std::pair<Point, int>> points;  // rational points with exact period
};

/// dml.UnsupportedDegree for degree 1, dml.Degenerate when the fixed form
/// vanishes, dml.ResourceLimit when d^p exceeds 4096.
PeriodicPoints periodic_points_p1(const ProjEndo& g, int period);

/// P_{-n} = g^((p - n mod p) mod p)(P0) for n < count; dml.NotPeriodic
/// unless g^p(P0) = P0.
std::vector<Point> backward_cycle_at_infinity(const ProjEndo& g, const Point& p0, int period, std::size_t count);

enum class PeriodStatus { Periodic, NotPeriodic, Undecided };
const char* to_string(PeriodStatus s);

/// Forward orbit test for a rational point: Periodic with the period,
/// NotPeriodic when the orbit falls into a cycle avoiding P, Undecided
/// after max_steps or when the coordinates grow past 2^15 bits.
std::pair<PeriodStatus, int> rational_periodicity(const ProjEndo& g, const Point& p, int max_steps = 64);

/// Exact period p <= p_max of the roots of a binary form without rational
/// roots, by iterating g in Q[t]/(h(t, 1)); nullopt when none divides.
std::optional<int> factor_period(const ProjEndo& g, const MultiPoly& h, int p_max);

enum class Verdict { Holds, Fails, Undecided };
const char* to_string(Verdict v);

struct ConditionKEntry {
  std::optional<Point> point;
  MultiPoly factor;
  int residue_degree = 1;
  int e = 1;
  PeriodStatus status = PeriodStatus::Undecided;
  int period = 0;
  std::string evidence;
};

struct ConditionKVerdict {
  Verdict verdict = Verdict::Undecided;
  int k = 0;
  int p_max = 6;
  MultiPoly wronskian;
  std::vector<ConditionKEntry> certificate;
  std::optional<ConditionKEntry> witness;  // set when FAILS
};

/// k > 2 e at every periodic point of f_inf, on the Wronskian profile for
/// N = 2. For N >= 3 only the supplied candidates are checked: Fails on a
/// periodic candidate with k <= 2e, else Undecided; without candidates
/// dml.UnsupportedDimension.
ConditionKVerdict condition_k(const RegularEndo& f, int p_max = 6, const std::vector<Point>& candidates = {});

}  // namespace regdyn
