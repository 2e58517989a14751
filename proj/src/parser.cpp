#include "regdyn/parser.hpp"

#include <cctype>

#include "json.hpp"
#include "regdyn/error.hpp"

namespace regdyn {

namespace {

constexpr unsigned kMaxExponent = 4096;

class PolyParser {
 public:
  PolyParser(const std::string& text, const std::vector<std::string>& vars, Field field)
      : s_(text), vars_(vars), field_(field), aliases_(vars.size() <= 3 && vars == default_variable_names(vars.size())) {}

  MultiPoly parse() {
    skip_ws();
    if (pos_ == s_.size()) throw SyntaxError(pos_, "empty polynomial");
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  MultiPoly constant(const Rational& c) const { return MultiPoly::constant(vars_.size(), c, field_); }

  MultiPoly expr() {
    bool negate = false;
    if (peek('+') || peek('-')) {
      negate = s_[pos_] == '-';
      ++pos_;
    }
    MultiPoly acc = term();
    if (negate) acc = -acc;
    while (peek('+') || peek('-')) {
      const bool minus = s_[pos_] == '-';
      ++pos_;
      MultiPoly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      const char c = s_[pos_];
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (c == '/') {
        ++pos_;
        acc = acc.scaled(Rational(1) / positive_integer());
        skip_ws();
        if (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '/')) {
          throw SyntaxError(pos_, "division must end the term");
        }
        break;
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(') {
        throw SyntaxError(pos_, "implicit multiplication is not allowed; use '*'");
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly factor() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "expected a coefficient, variable or '('");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = integer();
      skip_ws();
      if (pos_ + 1 < s_.size() && s_[pos_] == '/' && !lookahead_paren()) {
        // A coefficient fraction binds tighter than the term-level divisor.
        const std::size_t save = pos_;
        ++pos_;
        skip_ws();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          Integer den = integer();
          if (den == 0) throw Error("parser", ErrorCode::InvalidCoefficient, "zero denominator at offset " + std::to_string(save));
          return constant(Rational(num, den));
        }
        pos_ = save;
      }
      return constant(Rational(num));
    }
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!peek(')')) throw SyntaxError(pos_, "expected ')'");
      ++pos_;
      return power_of(inner);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      return power_of(MultiPoly::variable(vars_.size(), lookup(name, start), field_));
    }
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  bool lookahead_paren() const {
    std::size_t p = pos_ + 1;
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    return p < s_.size() && s_[p] == '(';
  }

  MultiPoly power_of(const MultiPoly& base) {
    if (!peek('^')) return base;
    ++pos_;
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      throw SyntaxError(pos_, "expected a nonnegative exponent");
    }
    const std::size_t at = pos_;
    Integer e = integer();
    if (e > kMaxExponent) throw SyntaxError(at, "exponent too large");
    return base.pow(static_cast<unsigned>(e.get_ui()));
  }

  Integer integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Integer(s_.substr(start, pos_ - start));
  }

  Integer positive_integer() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      throw SyntaxError(pos_, "expected a positive integer divisor");
    }
    const std::size_t at = pos_;
    Integer d = integer();
    if (d == 0) throw Error("parser", ErrorCode::InvalidCoefficient, "zero denominator at offset " + std::to_string(at));
    return d;
  }

  std::size_t lookup(const std::string& name, std::size_t at) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return i;
    }
    if (aliases_ && name.size() >= 2 && name[0] == 'x') {
      const std::string digits = name.substr(1);
      if (std::all_of(digits.begin(), digits.end(), ::isdigit) && digits.size() < 3) {
        const int k = std::stoi(digits);
        if (k >= 1 && static_cast<std::size_t>(k) <= vars_.size()) return static_cast<std::size_t>(k - 1);
      }
    }
    throw Error("parser", ErrorCode::UnknownVariable, "'" + name + "' at offset " + std::to_string(at));
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  Field field_;
  bool aliases_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(const PolySource& src) { return parse_poly(src.text, src.variables, src.field); }

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& variables, Field field) {
  if (variables.empty()) throw Error("parser", ErrorCode::DimensionError, "empty variable environment");
  for (std::size_t i = 0; i < variables.size(); ++i) {
    for (std::size_t j = i + 1; j < variables.size(); ++j) {
      if (variables[i] == variables[j]) {
        throw Error("parser", ErrorCode::SchemaError, "duplicate variable '" + variables[i] + "'");
      }
    }
  }
  try {
    return PolyParser(text, variables, field).parse();
  } catch (const Error& e) {
    if (e.module() == "core" && e.code() == ErrorCode::InvalidCoefficient) {
      throw Error("parser", ErrorCode::InvalidCoefficient, e.detail());
    }
    throw;
  }
}

std::string render(const MultiPoly& p, const std::vector<std::string>& variables) {
  return p.to_string(variables);
}

std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<MultiPoly> parse_poly_list(const std::vector<std::string>& items,
                                       const std::vector<std::string>& variables, Field field) {
  std::vector<MultiPoly> out;
  for (const auto& item : items) out.push_back(parse_poly(item, variables, field));
  return out;
}

Point parse_point(const std::string& text) {
  std::string t = text;
  if (!t.empty() && (t.front() == '(' || t.front() == '[')) t = t.substr(1);
  if (!t.empty() && (t.back() == ')' || t.back() == ']')) t.pop_back();
  const char sep = t.find(':') != std::string::npos ? ':' : ',';
  Point p;
  for (const auto& part : split_top_level(t, sep)) {
    try {
      p.push_back(parse_rational(part));
    } catch (const Error& e) {
      throw Error("parser", ErrorCode::InvalidCoefficient, e.detail());
    }
  }
  return p;
}

Field parse_field(const std::string& text) {
  if (text == "Q") return Field::rationals();
  if (text.rfind("Fp:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (!digits.empty() && digits.size() < 19 && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      return Field::prime(std::stoull(digits));
    }
  }
  throw Error("parser", ErrorCode::SchemaError, "field must be \"Q\" or \"Fp:<p>\", got '" + text + "'");
}

std::pair<MultiPoly, MultiPoly> parse_rational_function(const std::string& text) {
  static const std::vector<std::string> t_env{"t"};
  int depth = 0;
  std::size_t split = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '/' && depth == 0) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '(') split = i;
    }
  }
  if (split == std::string::npos) {
    return {parse_poly(text, t_env), MultiPoly::constant(1, 1)};
  }
  MultiPoly den = parse_poly(text.substr(split + 1), t_env);
  if (den.is_zero()) throw Error("parser", ErrorCode::InvalidCoefficient, "zero denominator in '" + text + "'");
  return {parse_poly(text.substr(0, split), t_env), den};
}

const char* const kJobKinds[] = {"orbit",       "return-set", "invariant", "mult",   "infinity",
                                 "weil-check",  "condition-k", "survey",   "height", nullptr};

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error("parser", ErrorCode::SchemaError, path + ": " + what);
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

long get_int(const json& j, const std::string& path, long lo, long hi) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  const long v = j.get<long>();
  if (v < lo || v > hi) schema(path, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

Rational get_rational(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const Error&) {
    schema(path, "malformed rational");
  }
  schema(path, "expected an integer or a rational string");
}

Point get_point(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_point(j.get<std::string>());
    } catch (const Error&) {
      schema(path, "malformed point");
    }
  }
  if (!j.is_array() || j.empty()) schema(path, "expected a nonempty array of coordinates");
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(get_rational(j[i], path + "[" + std::to_string(i) + "]"));
  return p;
}

std::vector<MultiPoly> get_components(const json& j, const std::string& path, Field field) {
  if (!j.is_array() || j.empty()) schema(path, "expected a nonempty array of polynomials");
  std::vector<std::string> items;
  for (std::size_t i = 0; i < j.size(); ++i) items.push_back(get_string(j[i], path + "[" + std::to_string(i) + "]"));
  return parse_poly_list(items, default_variable_names(items.size()), field);
}

CurveSpec get_curve(const json& j, const std::string& path) {
  CurveSpec c;
  if (j.is_string()) {
    c.poly = parse_poly(j.get<std::string>(), default_variable_names(2));
    return c;
  }
  if (!j.is_object()) schema(path, "expected a string or a curve object");
  if (!j.contains("kind")) schema(path + ".kind", "missing");
  const std::string kind = get_string(j["kind"], path + ".kind");
  if (kind == "plane") {
    if (!j.contains("poly")) schema(path + ".poly", "missing");
    c.poly = parse_poly(get_string(j["poly"], path + ".poly"), default_variable_names(2));
  } else if (kind == "param") {
    if (!j.contains("coords") || !j["coords"].is_array() || j["coords"].empty()) {
      schema(path + ".coords", "expected a nonempty array");
    }
    c.parametric = true;
    for (std::size_t i = 0; i < j["coords"].size(); ++i) {
      c.coords.push_back(parse_rational_function(get_string(j["coords"][i], path + ".coords[" + std::to_string(i) + "]")));
    }
  } else {
    schema(path + ".kind", "expected \"plane\" or \"param\"");
  }
  return c;
}

}  // namespace

JobSpec parse_job(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error("parser", ErrorCode::SchemaError, std::string("$: malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) schema("$", "expected an object");
  if (!doc.contains("kind")) schema("$.kind", "missing");
  JobSpec job;
  job.kind = get_string(doc["kind"], "$.kind");
  bool known = false;
  for (const char* const* k = kJobKinds; *k; ++k) known = known || job.kind == *k;
  if (!known) schema("$.kind", "unknown job kind '" + job.kind + "'");

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    static const std::vector<std::string> allowed{
        "kind",  "f",      "map",       "curve",   "start",   "at",     "point", "n_max", "height_cap",
        "places", "seed",  "p_max",     "statement", "samples", "dim", "degree", "coeff_height"};
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      schema("$." + it.key(), "unknown field");
    }
  }

  if (doc.contains("f")) {
    const json& f = doc["f"];
    if (f.is_object()) {
      if (f.contains("field")) job.field = parse_field(get_string(f["field"], "$.f.field"));
      if (!f.contains("components")) schema("$.f.components", "missing");
      job.f = get_components(f["components"], "$.f.components", job.field);
      job.n = job.f.size();
      if (f.contains("n") && get_int(f["n"], "$.f.n", 1, 64) != static_cast<long>(job.n)) {
        throw Error("parser", ErrorCode::DimensionError, "$.f.n disagrees with the number of components");
      }
    } else {
      job.f = get_components(f, "$.f", job.field);
      job.n = job.f.size();
    }
  }
  if (doc.contains("map")) job.map = get_components(doc["map"], "$.map", job.field);
  if (doc.contains("curve")) job.curve = get_curve(doc["curve"], "$.curve");
  if (doc.contains("start")) job.start = get_point(doc["start"], "$.start");
  if (doc.contains("at")) job.at = get_point(doc["at"], "$.at");
  if (doc.contains("point")) job.point = get_point(doc["point"], "$.point");
  if (doc.contains("n_max")) job.n_max = static_cast<int>(get_int(doc["n_max"], "$.n_max", 0, 100000));
  if (doc.contains("height_cap")) {
    job.height_cap = get_rational(doc["height_cap"], "$.height_cap");
    if (*job.height_cap < 1) schema("$.height_cap", "bound must be at least 1");
  }
  if (doc.contains("places")) {
    const json& p = doc["places"];
    if (!p.is_array()) schema("$.places", "expected an array of place literals");
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string path = "$.places[" + std::to_string(i) + "]";
      try {
        job.places.push_back(Place::parse(get_string(p[i], path)));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError) throw;
        schema(path, e.detail());
      }
    }
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) schema("$.seed", "expected a nonnegative integer");
    job.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("p_max")) job.p_max = static_cast<int>(get_int(doc["p_max"], "$.p_max", 1, 64));
  if (doc.contains("statement")) job.statement = get_string(doc["statement"], "$.statement");
  if (doc.contains("samples")) job.samples = static_cast<int>(get_int(doc["samples"], "$.samples", 1, 1000000));
  if (doc.contains("dim")) job.dim = static_cast<int>(get_int(doc["dim"], "$.dim", 1, 2));
  if (doc.contains("degree")) job.degree = static_cast<int>(get_int(doc["degree"], "$.degree", 1, 64));
  if (doc.contains("coeff_height")) job.coeff_height = get_int(doc["coeff_height"], "$.coeff_height", 1, 1L << 40);

  auto require = [&](bool present, const char* field) {
    if (!present) schema(std::string("$.") + field, "required for kind '" + job.kind + "'");
  };
  const std::string& k = job.kind;
  if (k == "orbit" || k == "return-set" || k == "invariant" || k == "condition-k") require(!job.f.empty(), "f");
  if (k == "orbit" || k == "return-set") require(job.start.has_value(), "start");
  if (k == "return-set" || k == "invariant" || k == "infinity") require(job.curve.has_value(), "curve");
  if (k == "mult") {
    require(!job.map.empty(), "map");
    require(job.at.has_value(), "at");
  }
  if (k == "height") require(job.point.has_value(), "point");
  if (k == "weil-check") require(!job.statement.empty(), "statement");

  if (job.start && !job.f.empty() && job.start->size() != job.n) {
    throw Error("parser", ErrorCode::DimensionError,
                "$.start has " + std::to_string(job.start->size()) + " coordinates but f has dimension " +
                    std::to_string(job.n));
  }
  if (job.at && !job.map.empty() && job.at->size() != job.map.size()) {
    throw Error("parser", ErrorCode::DimensionError, "$.at length differs from the number of map components");
  }
  if (job.curve && !job.curve->parametric && !job.f.empty() && job.n != 2 &&
      (k == "return-set" || k == "invariant")) {
    throw Error("parser", ErrorCode::DimensionError, "plane curves need a two-dimensional f");
  }
  return job;
}

}  // namespace regdyn
