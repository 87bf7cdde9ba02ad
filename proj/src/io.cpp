#include "sumtrans/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sumtrans::io {

namespace {

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "." + key, "missing");
  return *it;
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

double get_extended(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "-inf") return kNegInf;
  return get_number(j, path);
}

double number_or(const json& j, const char* key, double fallback, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  return get_number(*it, path + "." + key);
}

std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::pair<double, double>> pair_list(const json& j, const std::string& path, bool extended) {
  if (!j.is_array()) throw ParseError(path, "expected an array of pairs");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) throw ParseError(p, "expected [t, value]");
    const double a = get_number(j[i][0], p + "[0]");
    const double b = extended ? get_extended(j[i][1], p + "[1]") : get_number(j[i][1], p + "[1]");
    out.emplace_back(a, b);
  }
  return out;
}

std::string type_of(const json& j, const std::string& path) {
  const json& t = member(j, "type", path);
  if (!t.is_string()) throw ParseError(path + ".type", "expected a string");
  return t.get<std::string>();
}

template <class Build>
auto wrap_invalid(const std::string& path, Build&& build) {
  try {
    return build();
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  } catch (const std::domain_error& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json load_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError(filename, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), filename);
}

Kernel parse_kernel(const json& j, const std::string& path) {
  const std::string type = type_of(j, path);
  if (type == "log") {
    const double w = get_number(member(j, "weight", path), path + ".weight");
    return wrap_invalid(path, [&] { return Kernel::log_abs(w); });
  }
  if (type == "log_linear") {
    const double w = get_number(member(j, "weight", path), path + ".weight");
    const double c = get_number(member(j, "slope", path), path + ".slope");
    return wrap_invalid(path, [&] { return Kernel::log_abs_plus_linear(w, c); });
  }
  if (type == "table") {
    TableKernelSpec spec;
    for (const auto& [t, v] : pair_list(member(j, "neg_knots", path), path + ".neg_knots", false)) {
      spec.neg_knots.push_back({t, v});
    }
    for (const auto& [t, v] : pair_list(member(j, "pos_knots", path), path + ".pos_knots", false)) {
      spec.pos_knots.push_back({t, v});
    }
    if (auto it = j.find("end_slopes"); it != j.end()) {
      const auto s = number_list(*it, path + ".end_slopes");
      if (s.size() != 2) throw ParseError(path + ".end_slopes", "expected [left, right]");
      spec.end_slopes = std::make_pair(s[0], s[1]);
    }
    spec.zero = ZeroBehavior::kExtrapolate;
    if (auto it = j.find("zero"); it != j.end()) {
      const double z = get_extended(*it, path + ".zero");
      if (z == kNegInf) {
        spec.zero = ZeroBehavior::kSingular;
      } else {
        spec.zero = ZeroBehavior::kFinite;
        spec.zero_value = z;
      }
    }
    if (auto it = j.find("strictly_concave"); it != j.end()) {
      if (!it->is_boolean()) throw ParseError(path + ".strictly_concave", "expected a boolean");
      spec.strictly_concave = it->get<bool>();
    }
    return wrap_invalid(path, [&] { return Kernel::table(std::move(spec)); });
  }
  throw ParseError(path + ".type", "unknown kernel type '" + type + "'");
}

Field parse_field(const json& j, const std::string& path) {
  const std::string type = type_of(j, path);
  if (type == "neg_abs" || type == "neg_square") {
    const double a = get_number(member(j, "scale", path), path + ".scale");
    const double c = number_or(j, "center", 0.0, path);
    return wrap_invalid(path, [&] { return type == "neg_abs" ? Field::neg_abs(a, c) : Field::neg_square(a, c); });
  }
  if (type == "table") {
    std::vector<FieldPoint> knots;
    for (const auto& [x, v] : pair_list(member(j, "knots", path), path + ".knots", false)) knots.push_back({x, v});
    double l = 0.0;
    double r = 0.0;
    if (auto it = j.find("end_slopes"); it != j.end()) {
      const auto s = number_list(*it, path + ".end_slopes");
      if (s.size() != 2) throw ParseError(path + ".end_slopes", "expected [left, right]");
      l = s[0];
      r = s[1];
    }
    return wrap_invalid(path, [&] { return Field::log_weight_table(std::move(knots), l, r); });
  }
  if (type == "discrete") {
    std::vector<FieldPoint> points;
    for (const auto& [x, v] : pair_list(member(j, "points", path), path + ".points", true)) points.push_back({x, v});
    return wrap_invalid(path, [&] { return Field::discrete(std::move(points)); });
  }
  if (type == "restrict_semiaxis") {
    Field inner = parse_field(member(j, "inner", path), path + ".inner");
    return Field::restrict_semiaxis(std::move(inner));
  }
  throw ParseError(path + ".type", "unknown field type '" + type + "'");
}

namespace {

void parse_options(const json& j, SolveOptions& solve, SearchOptions& search) {
  auto it = j.find("options");
  if (it == j.end()) return;
  const json& o = *it;
  if (!o.is_object()) throw ParseError("options", "expected an object");
  auto natural = [&](const char* key, std::size_t fallback) -> std::size_t {
    auto k = o.find(key);
    if (k == o.end()) return fallback;
    if (!k->is_number_integer() || k->get<long long>() < 0) {
      throw ParseError(std::string("options.") + key, "expected a nonnegative integer");
    }
    return k->get<std::size_t>();
  };
  solve.tol = number_or(o, "tol", solve.tol, "options");
  solve.max_iter = natural("max_iter", solve.max_iter);
  solve.starts = natural("starts", solve.starts);
  solve.seed = natural("seed", solve.seed);
  search.grid_density = natural("grid_density", search.grid_density);
  if (!(solve.tol > 0)) throw ParseError("options.tol", "must be positive");
  if (search.grid_density < 3) throw ParseError("options.grid_density", "must be >= 3");
}

}  // namespace

ProblemFile parse_problem(const json& j) {
  if (!j.is_object()) throw ParseError("$", "expected an object");
  const json& ks = member(j, "kernels", "$");
  if (!ks.is_array() || ks.empty()) throw ParseError("kernels", "expected a nonempty array");
  std::vector<Kernel> kernels;
  for (std::size_t i = 0; i < ks.size(); ++i) kernels.push_back(parse_kernel(ks[i], "kernels[" + std::to_string(i) + "]"));
  Field field = parse_field(member(j, "field", "$"), "field");
  ProblemFile out{std::move(kernels), std::move(field), {}, {}};
  parse_options(j, out.solve, out.search);
  return out;
}

InterpolationFile parse_interpolation(const json& j) {
  if (!j.is_object()) throw ParseError("$", "expected an object");
  const json& fs = member(j, "factors", "$");
  if (!fs.is_array() || fs.empty()) throw ParseError("factors", "expected a nonempty array");
  std::vector<Kernel> factors;
  for (std::size_t i = 0; i < fs.size(); ++i) factors.push_back(parse_kernel(fs[i], "factors[" + std::to_string(i) + "]"));
  Field weight = parse_field(member(j, "weight", "$"), "weight");
  std::vector<double> x;
  if (auto it = j.find("x"); it != j.end()) x = number_list(*it, "x");
  std::vector<double> alpha = number_list(member(j, "alpha", "$"), "alpha");
  std::string mode = "points";
  if (auto it = j.find("mode"); it != j.end()) {
    if (!it->is_string()) throw ParseError("mode", "expected a string");
    mode = it->get<std::string>();
  }
  if (mode == "hf") mode = "hermite_fejer";
  if (mode != "points" && mode != "hermite_fejer") throw ParseError("mode", "expected points or hermite_fejer");
  InterpolationFile out{InterpolationProblem{std::move(factors), std::move(weight), std::move(x), std::move(alpha)}, mode, {}, {}};
  parse_options(j, out.solve, out.search);
  return out;
}

double round9(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

ordered_json number(double v) {
  if (v == kNegInf) return "-inf";
  if (std::isnan(v)) return nullptr;
  return round9(v);
}

ordered_json number_array(std::span<const double> values) {
  ordered_json a = ordered_json::array();
  for (double v : values) a.push_back(number(v));
  return a;
}

}  // namespace sumtrans::io
