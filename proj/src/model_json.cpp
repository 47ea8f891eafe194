#include "msmono/model_json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace msmono {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void expect_keys(const json& doc, std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : doc.items())
    if (!ok.count(key)) throw SchemaError(key, "unknown field");
}

double number(const json& doc, const char* key, std::optional<double> fallback = std::nullopt) {
  if (!doc.contains(key)) {
    if (fallback) return *fallback;
    throw SchemaError(key, "missing required number");
  }
  const json& v = doc.at(key);
  if (!v.is_number()) throw SchemaError(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(key, "must be finite");
  return x;
}

std::vector<double> numbers(const json& v, const std::string& key) {
  if (!v.is_array()) throw SchemaError(key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw SchemaError(key + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

Point2 point(const json& doc, const char* key, bool required) {
  if (!doc.contains(key)) {
    if (required) throw SchemaError(key, "missing required [x, y] pair");
    return Point2::Zero();
  }
  const auto v = numbers(doc.at(key), key);
  if (v.size() != 2) throw SchemaError(key, "expected exactly two numbers");
  const Point2 p(v[0], v[1]);
  if (!p.allFinite()) throw SchemaError(key, "must be finite");
  return p;
}

json pair(const Vector2& v) { return json::array({v.x(), v.y()}); }

std::vector<double> coefficient_list(const json& doc, const char* key, bool required) {
  if (!doc.contains(key)) {
    if (required) throw SchemaError(key, "missing required array");
    return {};
  }
  return numbers(doc.at(key), key);
}

}  // namespace

FieldModel model_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("", "model must be a JSON object");
  if (!doc.contains("kind") || !doc.at("kind").is_string()) throw SchemaError("kind", "missing or not a string");
  const std::string kind = doc.at("kind").get<std::string>();
  FieldModel model;
  if (kind == "crack_tip") {
    expect_keys(doc, {"kind", "tip", "axis_angle"});
    model = CrackTip{point(doc, "tip", false), number(doc, "axis_angle", 0.0)};
  } else if (kind == "planar_interface") {
    expect_keys(doc, {"kind", "point", "normal", "alpha", "beta"});
    const Point2 n = point(doc, "normal", true);
    if (n.norm() == 0.0) throw SchemaError("normal", "must be nonzero");
    const double alpha = number(doc, "alpha"), beta = number(doc, "beta");
    if (alpha == beta) throw SchemaError("beta", "must differ from alpha");
    model = PlanarInterface{point(doc, "point", true), UnitVector(n), alpha, beta};
  } else if (kind == "propeller") {
    expect_keys(doc, {"kind", "center", "axis_angle", "values"});
    if (!doc.contains("values")) throw SchemaError("values", "missing required array");
    const auto v = numbers(doc.at("values"), "values");
    if (v.size() != 3) throw SchemaError("values", "expected exactly three numbers");
    if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]) throw SchemaError("values", "must be pairwise distinct");
    model = Propeller{point(doc, "center", false), number(doc, "axis_angle", 0.0), {v[0], v[1], v[2]}};
  } else if (kind == "smooth_harmonic") {
    expect_keys(doc, {"kind", "center", "coefficients"});
    if (!doc.contains("coefficients") || !doc.at("coefficients").is_array())
      throw SchemaError("coefficients", "missing or not an array");
    SmoothHarmonic h{point(doc, "center", false), {}};
    const json& cs = doc.at("coefficients");
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const std::string key = "coefficients[" + std::to_string(k) + "]";
      const auto ab = numbers(cs[k], key);
      if (ab.size() != 2) throw SchemaError(key, "expected an [a_k, b_k] pair");
      h.coefficients.emplace_back(ab[0], ab[1]);
    }
    model = std::move(h);
  } else {
    throw SchemaError("kind", "unknown model kind '" + kind + "'");
  }
  try {
    validate(model);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("", e.what());
  }
  return model;
}

json model_to_json(const FieldModel& model) {
  return std::visit(Overloaded{
                        [](const CrackTip& m) {
                          return json{{"kind", "crack_tip"}, {"tip", pair(m.tip)}, {"axis_angle", m.axis_angle}};
                        },
                        [](const PlanarInterface& m) {
                          return json{{"kind", "planar_interface"},
                                      {"point", pair(m.point)},
                                      {"normal", pair(m.normal.vec())},
                                      {"alpha", m.alpha},
                                      {"beta", m.beta}};
                        },
                        [](const Propeller& m) {
                          return json{{"kind", "propeller"},
                                      {"center", pair(m.center)},
                                      {"axis_angle", m.axis_angle},
                                      {"values", m.values}};
                        },
                        [](const SmoothHarmonic& m) {
                          json cs = json::array();
                          for (const auto& [a, b] : m.coefficients) cs.push_back({a, b});
                          return json{{"kind", "smooth_harmonic"}, {"center", pair(m.center)}, {"coefficients", cs}};
                        },
                    },
                    model);
}

FieldModel load_model(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  std::string text;
  if (first != std::string::npos && source[first] == '{') {
    text = source;
  } else {
    std::ifstream in(source);
    if (!in) throw SchemaError("model", "cannot open '" + source + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line/column diagnostic.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SchemaError("model", "JSON parse error at line " + std::to_string(line) + ", column " +
                                   std::to_string(col));
  }
  return model_from_json(doc);
}

FourierTrace fourier_trace_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("", "trace must be a JSON object");
  expect_keys(doc, {"r", "a", "b"});
  FourierTrace t;
  t.r = number(doc, "r");
  if (!(t.r > 0)) throw SchemaError("r", "must be positive");
  t.a = coefficient_list(doc, "a", true);
  t.b = coefficient_list(doc, "b", false);
  if (t.a.empty()) throw SchemaError("a", "needs at least the k = 0 coefficient");
  return t;
}

json to_json(const FourierTrace& trace) { return json{{"r", trace.r}, {"a", trace.a}, {"b", trace.b}}; }

SectorTrace sector_trace_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("", "trace must be a JSON object");
  expect_keys(doc, {"r", "theta", "a"});
  SectorTrace t;
  t.r = number(doc, "r");
  if (!(t.r > 0)) throw SchemaError("r", "must be positive");
  t.theta = number(doc, "theta");
  if (!(t.theta > 0 && t.theta <= kTwoPi)) throw SchemaError("theta", "must lie in (0, 2pi]");
  t.a = coefficient_list(doc, "a", true);
  return t;
}

json to_json(const SectorTrace& trace) {
  return json{{"r", trace.r}, {"theta", trace.theta}, {"a", trace.a}};
}

}  // namespace msmono
