// regdyn: command-line front end.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "regdyn/dml.hpp"
#include "regdyn/fixtures.hpp"
#include "regdyn/heights.hpp"
#include "regdyn/localalg.hpp"
#include "regdyn/parser.hpp"
#include "regdyn/rng.hpp"
#include "regdyn/weil.hpp"

using nlohmann::ordered_json;
using namespace regdyn;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string job, f, map, curve, param, at, start, point, places, statement, mode = "explicit", field, matrix, ideal, r;
  int n_max = -1, p_max = -1, samples = -1, dim = -1, degree = -1, chart = -1, other_chart = -1;
  std::string height_cap, coeff_height, bound;
  std::int64_t seed = -1;
  bool json = false;
};

// splits at commas outside parentheses
std::vector<std::string> split_top(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& item : out) {
    const auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    item = a == std::string::npos ? "" : item.substr(a, b - a + 1);
  }
  return out;
}

std::string q(const Rational& x) { return rational_to_string(x); }

ordered_json coords(const Point& p) {
  ordered_json a = ordered_json::array();
  for (const auto& c : p) a.push_back(q(c));
  return a;
}

ordered_json log_json(const LogValue& v) { return {{"exact", v.to_string()}, {"approx", v.approx(12)}}; }

// inline flags become a job document so both inputs share one validator
std::string document_from(const std::string& kind, const Options& o) {
  ordered_json d;
  d["kind"] = kind;
  if (!o.f.empty()) {
    ordered_json comps = split_top(o.f);
    if (!o.field.empty()) {
      d["f"] = {{"field", o.field}, {"components", comps}};
    } else {
      d["f"] = comps;
    }
  }
  if (!o.map.empty()) d["map"] = split_top(o.map);
  if (!o.curve.empty()) d["curve"] = o.curve;
  if (!o.at.empty()) d["at"] = o.at;
  if (!o.start.empty()) d["start"] = o.start;
  if (!o.point.empty()) d["point"] = o.point;
  if (o.n_max >= 0) d["n_max"] = o.n_max;
  if (!o.height_cap.empty()) d["height_cap"] = o.height_cap;
  if (!o.places.empty()) {
    ordered_json pl = ordered_json::array();
    for (auto p : split_top(o.places)) {
      if (!p.empty() && std::isdigit(static_cast<unsigned char>(p[0]))) p = "p:" + p;
      pl.push_back(p);
    }
    d["places"] = pl;
  }
  if (o.seed >= 0) d["seed"] = static_cast<std::uint64_t>(o.seed);
  if (o.p_max >= 0) d["p_max"] = o.p_max;
  if (!o.statement.empty()) d["statement"] = o.statement;
  if (o.samples >= 0) d["samples"] = o.samples;
  if (o.dim >= 0) d["dim"] = o.dim;
  if (o.degree >= 0) d["degree"] = o.degree;
  if (!o.coeff_height.empty()) d["coeff_height"] = std::stol(o.coeff_height);
  return d.dump();
}

RegularEndo endo_of(const JobSpec& job) { return RegularEndo::make(job.f); }

PlaneCurve plane_of(const JobSpec& job) {
  if (!job.curve || job.curve->parametric) throw UsageError("this command needs a plane curve (--curve)");
  return PlaneCurve::make(job.curve->poly.with_field(job.field));
}

std::optional<LogValue> cap_of(const JobSpec& job) {
  if (!job.height_cap) return std::nullopt;
  return LogValue::log_of(*job.height_cap);
}

ordered_json run_orbit(const JobSpec& job) {
  const auto rec = orbit(endo_of(job), *job.start, job.n_max, cap_of(job));
  ordered_json pts = ordered_json::array(), hs = ordered_json::array();
  for (const auto& p : rec.points) pts.push_back(coords(p));
  for (const auto& h : rec.heights) hs.push_back(h.to_string());
  return {{"seed_point", coords(rec.seed)}, {"points", pts}, {"heights", hs}, {"truncation", to_string(rec.reason)}};
}

ordered_json run_return_set(const JobSpec& job) {
  const auto rep = return_set(endo_of(job), *job.start, plane_of(job), job.n_max, cap_of(job));
  ordered_json dec = nullptr;
  if (rep.decomposition) {
    dec = ordered_json::array();
    for (const auto& p : *rep.decomposition) dec.push_back({{"l", p.l}, {"m", p.m}});
  }
  return {{"return_set", rep.indices},
          {"decomposition", dec},
          {"decomposition_heuristic", true},
          {"truncated", rep.truncated},
          {"window", rep.window}};
}

ordered_json run_invariant(const JobSpec& job) {
  const auto f = endo_of(job);
  return {{"invariant", is_invariant(plane_of(job), f)}, {"gap", degree_gap(f)}};
}

ordered_json run_mult(const JobSpec& job) {
  std::vector<MultiPoly> m;
  for (const auto& c : job.map) m.push_back(c.with_field(job.field));
  return {{"e", multiplicity_at(m, *job.at).value}};
}

ordered_json run_infinity(const JobSpec& job) {
  const auto c = plane_of(job);
  ordered_json pts = ordered_json::array();
  for (const auto& p : infinity_points(c)) {
    ordered_json e;
    e["point"] = p.point ? ordered_json(projective_to_string(*p.point)) : ordered_json(nullptr);
    e["factor"] = p.factor.to_string({"x", "y"});
    e["residue_degree"] = p.residue_degree;
    e["intersection"] = p.intersection;
    pts.push_back(e);
  }
  return {{"curve", c.to_string()}, {"degree", c.degree()}, {"points_at_infinity", pts}};
}

ordered_json entry_json(const ConditionKEntry& e) {
  ordered_json j;
  j["point"] = e.point ? ordered_json(projective_to_string(*e.point)) : ordered_json(nullptr);
  j["factor"] = e.factor.to_string({"X", "Y"});
  j["residue_degree"] = e.residue_degree;
  j["e"] = e.e;
  j["status"] = to_string(e.status);
  if (e.period) j["period"] = e.period;
  j["evidence"] = e.evidence;
  return j;
}

ordered_json run_condition_k(const JobSpec& job) {
  std::vector<Point> cands;
  if (job.point) cands.push_back(*job.point);
  const auto v = condition_k(endo_of(job), job.p_max, cands);
  ordered_json cert = ordered_json::array();
  for (const auto& e : v.certificate) cert.push_back(entry_json(e));
  return {{"verdict", to_string(v.verdict)},
          {"k", v.k},
          {"p_max", v.p_max},
          {"wronskian", v.wronskian.is_zero() ? std::string() : v.wronskian.to_string({"X", "Y"})},
          {"certificate", cert},
          {"witness", v.witness ? entry_json(*v.witness) : ordered_json(nullptr)}};
}

ordered_json run_survey(const JobSpec& job) {
  const auto s = survey_max_multiplicity(job.dim, job.degree, static_cast<std::size_t>(job.samples),
                                         job.coeff_height.get_si(), job.seed);
  ordered_json hist = ordered_json::object();
  for (const auto& [e, n] : s.histogram) hist[std::to_string(e)] = n;
  int mx = 0;
  for (int e : s.values) mx = std::max(mx, e);
  return {{"dim", s.dim},         {"degree", s.degree},
          {"coeff_height", s.coeff_height}, {"seed", s.seed},
          {"samples", s.samples}, {"skipped_nonregular", s.skipped_nonregular},
          {"histogram", hist},    {"max", mx}};
}

ordered_json run_height(const JobSpec& job, const Options& o) {
  ordered_json out;
  if (!o.bound.empty()) {
    const Integer b(o.bound);
    const int n = job.dim;
    const auto pts = points_of_bounded_height(n, b);
    ordered_json arr = ordered_json::array();
    for (const auto& p : pts) arr.push_back(projective_to_string(p));
    out["dim"] = n;
    out["bound"] = b.get_str();
    out["count"] = pts.size();
    out["points"] = arr;
    if (!job.point) return out;
  }
  const Point& p = *job.point;
  out["point"] = projective_to_string(p);
  out["height"] = log_json(naive_height(p));
  ordered_json per = ordered_json::array();
  std::vector<Rational> coords_v(p.begin(), p.end());
  for (const auto& v : relevant_places(coords_v)) {
    Rational m = 0;
    for (const auto& c : p) m = std::max(m, abs_value(v, c));
    per.push_back({{"place", v.to_string()}, {"log_max", log_json(LogValue::log_of(m))}});
  }
  out["local"] = per;
  return out;
}

Matrix matrix_of(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : split_top(text, ';')) {
    std::vector<Rational> r;
    for (const auto& c : split_top(row)) r.push_back(parse_rational(c));
    rows.push_back(r);
  }
  return Matrix::from_rows(rows);
}

std::size_t first_nonzero(const Point& p, std::size_t from) {
  for (std::size_t i = from; i < p.size(); ++i) {
    if (p[i] != 0) return i;
  }
  throw UsageError("the point has no nonzero coordinate to use as a chart");
}

std::vector<Point> random_points(Rng& rng, std::size_t n, std::size_t count) {
  std::vector<Point> out;
  while (out.size() < count) {
    Point x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(rng.rational(1000, 1000));
    if (std::any_of(x.begin(), x.end(), [](const Rational& c) { return c != 0; })) out.push_back(x);
  }
  return out;
}

// hyperplane sum a_i x_i = 0: solve for the last coordinate with a_i != 0
std::vector<Point> points_on_hyperplane(Rng& rng, const MultiPoly& h, std::size_t count) {
  if (!h.is_homogeneous() || *h.degree() != 1) {
    throw UsageError("separation from the command line needs a hyperplane --ideal; use samples from a job");
  }
  const std::size_t n = h.nvars();
  std::vector<Rational> a(n, 0);
  for (const auto& [e, c] : h.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i]) a[i] = c;
    }
  }
  std::size_t solve_for = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != 0) solve_for = i;
  }
  std::vector<Point> out;
  while (out.size() < count) {
    Point x(n);
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == solve_for) continue;
      x[i] = rng.rational(1000, 1000);
      s += a[i] * x[i];
    }
    x[solve_for] = -s / a[solve_for];
    if (std::any_of(x.begin(), x.end(), [](const Rational& c) { return c != 0; })) out.push_back(x);
  }
  return out;
}

ordered_json run_weil(const JobSpec& job, const Options& o) {
  Instance inst;
  inst.statement = parse_statement(job.statement);
  BoundMode mode;
  if (o.mode == "explicit") {
    mode = BoundMode::Explicit;
  } else if (o.mode == "empirical") {
    mode = BoundMode::Empirical;
  } else {
    throw UsageError("--mode must be explicit or empirical");
  }
  if (job.point) {
    inst.p = *job.point;
    inst.chart = o.chart >= 0 ? static_cast<std::size_t>(o.chart)
                              : first_nonzero(*job.point, (*job.point)[0] == 0 ? 1 : 0);
  }
  if (o.other_chart >= 0) inst.other_chart = static_cast<std::size_t>(o.other_chart);
  if (!job.f.empty()) inst.f = endo_of(job);
  if (!job.map.empty()) inst.g = ProjEndo::make(job.map);
  if (!o.matrix.empty()) inst.a = matrix_of(o.matrix);
  if (!o.r.empty()) inst.r = parse_rational(o.r);
  if (job.curve && !job.curve->parametric) inst.curve = PlaneCurve::make(job.curve->poly);
  if (!o.ideal.empty()) {
    const std::size_t n = inst.p ? inst.p->size() : 3;
    inst.ideal = parse_poly_list(split_top(o.ideal), default_variable_names(n));
  }
  if (inst.statement == Statement::ConstantPropagation) {
    // inputs default to zero from the command line
    for (const char* c : {"c1", "c2", "c5", "c8", "c9"}) inst.inputs.emplace(c, SConstant::zero());
  }
  std::vector<Place> places = job.places;
  if (places.empty()) places = {Place::infinity(), Place::finite(2), Place::finite(3), Place::finite(5)};

  Rng rng(job.seed);
  const auto count = static_cast<std::size_t>(job.samples);
  std::vector<Point> samples;
  switch (inst.statement) {
    case Statement::ChartChange:
    case Statement::LinearChange:
    case Statement::Functoriality:
      if (!inst.p) throw UsageError("--point is required");
      samples = random_points(rng, inst.p->size(), count);
      break;
    case Statement::Separation:
      if (inst.ideal.empty()) throw UsageError("--ideal is required");
      samples = points_on_hyperplane(rng, inst.ideal.front(), count);
      break;
    case Statement::DegreeScaling:
    case Statement::ConstantPropagation:
      if (!inst.f) throw UsageError("--f is required");
      samples = random_points(rng, inst.f->n(), count);
      break;
    case Statement::Projection:
      if (!inst.p) throw UsageError("--point is required");
      samples = random_points(rng, inst.p->size() - 1, count);
      break;
    case Statement::CurveBound:
    case Statement::CurveLocal:
    case Statement::Verticality:
      if (!inst.curve) throw UsageError("--curve is required");
      if (!o.param.empty()) {
        std::vector<std::pair<MultiPoly, MultiPoly>> cs;
        for (const auto& c : split_top(o.param)) cs.push_back(parse_rational_function(c));
        samples = sample_points(ParamCurve::make(cs), count);
      } else {
        samples = sample_points(*inst.curve, count);
      }
      break;
    case Statement::GrowthCap:
      break;
  }
  const auto rep = check_inequality(inst, mode, samples, places);
  ordered_json pl = ordered_json::array(), viol = ordered_json::array(), sched = ordered_json::array();
  for (const auto& v : rep.places) pl.push_back(v.to_string());
  for (const auto& v : rep.violations) {
    viol.push_back({{"sample", v.sample}, {"place", v.place.to_string()}, {"left", v.left}, {"right", v.right}});
  }
  for (const auto& [n, s] : rep.schedule) sched.push_back({{"prefix", n}, {"sup", s.to_string()}});
  ordered_json out = {{"statement", to_string(rep.statement)},
                      {"mode", to_string(rep.mode)},
                      {"samples", rep.samples},
                      {"places", pl},
                      {"violations", viol},
                      {"sup_residual", rep.sup_residual ? rep.sup_residual->to_string() : std::string()}};
  if (rep.sup_residual) out["sup_residual_approx"] = rep.sup_residual->approx(12);
  out["inconclusive"] = rep.inconclusive;
  out["skipped"] = rep.skipped;
  out["seed"] = job.seed;
  if (mode == BoundMode::Empirical) {
    out["schedule"] = sched;
    out["bounded"] = rep.bounded;
    out["evidence"] = "empirical";
  }
  if (mode == BoundMode::Explicit && has_explicit_constant(inst.statement)) {
    out["constant_at_inf"] = s_constant_for(inst).at(Place::infinity()).to_string();
  }
  return out;
}

ordered_json run(const std::string& kind, const JobSpec& job, const Options& o) {
  if (kind == "orbit") return run_orbit(job);
  if (kind == "return-set") return run_return_set(job);
  if (kind == "invariant") return run_invariant(job);
  if (kind == "mult") return run_mult(job);
  if (kind == "infinity") return run_infinity(job);
  if (kind == "condition-k") return run_condition_k(job);
  if (kind == "survey") return run_survey(job);
  if (kind == "height") return run_height(job, o);
  return run_weil(job, o);
}

void print_human(const ordered_json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object() && v.contains("exact") && v.contains("approx")) {
      std::cout << pad << it.key() << ": " << v["exact"].get<std::string>() << "   ~ "
                << v["approx"].get<std::string>() << "\n";
    } else if (v.is_object() || (v.is_array() && !v.empty() && v.front().is_object())) {
      std::cout << pad << it.key() << ":\n";
      if (v.is_object()) {
        print_human(v, indent + 2);
      } else {
        for (const auto& e : v) {
          std::cout << pad << "  -\n";
          print_human(e, indent + 4);
        }
      }
    } else {
      std::cout << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

int run_fixtures(bool as_json) {
  const auto results = run_acceptance();
  int failed = 0;
  ordered_json arr = ordered_json::array();
  for (const auto& r : results) {
    failed += !r.passed();
    if (as_json) {
      arr.push_back({{"id", r.id},
                     {"name", r.name},
                     {"pass", r.passed()},
                     {"elapsed_ms", r.elapsed_ms},
                     {"limit_ms", r.limit_ms},
                     {"detail", r.detail}});
    } else {
      std::cout << format_result(r) << "\n";
    }
  }
  if (as_json) {
    std::cout << ordered_json{{"criteria", arr}, {"failed", failed}}.dump(2) << "\n";
  } else {
    std::cout << failed << " of " << results.size() << " criteria failed\n";
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regdyn: exact arithmetic dynamics of regular polynomial endomorphisms"};
  app.require_subcommand(1, 1);
  Options o;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"orbit", "exact orbit prefix"},
      {"return-set", "indices n with f^n(x) on a curve"},
      {"invariant", "is the curve f-invariant, and the degree gap"},
      {"mult", "local multiplicity of a map at a point"},
      {"infinity", "points at infinity of a plane curve"},
      {"weil-check", "check a local height inequality on samples"},
      {"condition-k", "degree gap against ramification at periodic points"},
      {"survey", "seeded survey of maximal multiplicities"},
      {"height", "naive height of a point, or points of bounded height"},
      {"fixtures", "run the acceptance checks"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, desc] : commands) {
    auto* sc = app.add_subcommand(name, desc);
    subs[name] = sc;
    sc->add_flag("--json", o.json, "JSON output");
    if (name == "fixtures") continue;
    auto* job = sc->add_option("--job", o.job, "job file (JSON)");
    std::vector<CLI::Option*> inline_opts;
    auto opt = [&](const std::string& flag, auto& target, const std::string& help) {
      inline_opts.push_back(sc->add_option(flag, target, help));
    };
    opt("--f", o.f, "components of f, comma separated");
    opt("--field", o.field, "Q or Fp:<p>");
    opt("--map", o.map, "map components (mult) or projective forms (weil-check)");
    opt("--curve", o.curve, "plane curve g(x, y)");
    opt("--at", o.at, "point for mult");
    opt("--start", o.start, "orbit seed");
    opt("--point", o.point, "projective point");
    opt("--n-max", o.n_max, "orbit length");
    opt("--height-cap", o.height_cap, "stop above this bound on exp(height)");
    opt("--places", o.places, "places, e.g. inf,2,3");
    opt("--seed", o.seed, "random seed");
    opt("--p-max", o.p_max, "largest period tried");
    opt("--statement", o.statement, "weil-check statement id");
    opt("--samples", o.samples, "sample count");
    opt("--dim", o.dim, "dimension");
    opt("--degree", o.degree, "degree");
    opt("--coeff-height", o.coeff_height, "coefficient bound");
    sc->add_option("--mode", o.mode, "explicit or empirical")->check(CLI::IsMember({"explicit", "empirical"}));
    sc->add_option("--chart", o.chart, "chart of the point");
    sc->add_option("--other-chart", o.other_chart, "second chart");
    sc->add_option("--matrix", o.matrix, "matrix rows separated by ';'");
    sc->add_option("--ideal", o.ideal, "equations of V");
    sc->add_option("--r", o.r, "rational r");
    sc->add_option("--param", o.param, "parametrization in t used for sampling");
    sc->add_option("--bound", o.bound, "enumerate points of height at most this bound");
    for (auto* io : inline_opts) job->excludes(io);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string kind;
  for (const auto& [name, sc] : subs) {
    if (sc->parsed()) kind = name;
  }
  if (kind == "fixtures") return run_fixtures(o.json);

  try {
    std::string doc;
    if (!o.job.empty()) {
      std::ifstream in(o.job);
      if (!in) throw UsageError("cannot read " + o.job);
      std::stringstream ss;
      ss << in.rdbuf();
      doc = ss.str();
      const auto parsed = nlohmann::json::parse(doc, nullptr, false);
      if (parsed.is_object() && parsed.contains("kind") && parsed["kind"] != kind) {
        throw UsageError("job kind does not match the subcommand");
      }
    } else {
      doc = document_from(kind, o);
    }
    JobSpec job;
    if (kind == "height" && o.point.empty() && !o.bound.empty()) {
      // enumeration only; no point to validate
      job.kind = kind;
      if (o.dim >= 0) job.dim = o.dim;
    } else {
      job = parse_job(doc);
    }
    const ordered_json out = run(kind, job, o);
    if (o.json) {
      std::cout << out.dump() << "\n";
    } else {
      print_human(out);
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.qualified_code() << ": " << e.detail() << "\n";
    if (o.json) std::cout << ordered_json{{"error", {{"code", e.qualified_code()}, {"detail", e.detail()}}}}.dump() << "\n";
    return e.code() == ErrorCode::SchemaError ? 2 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: malformed number (" << e.what() << ")\n";
    return 2;
  }
}
