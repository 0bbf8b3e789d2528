#include "shiftdet/cli/config_io.h"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "shiftdet/kernels.h"

namespace shiftdet::cli {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void allow_keys(const Json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(where + " must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) fail("unknown key '" + item.key() + "' in " + where);
  }
}

double get_real(const Json& j, const std::string& what) {
  if (!j.is_number()) fail(what + " must be a number");
  return j.get<double>();
}

int get_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) fail(what + " must be an integer");
  return j.get<int>();
}

cplx get_complex(const Json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(what + " must be a number or [re, im]");
}

const Json& required(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail("missing '" + std::string(key) + "' in " + where);
  return j.at(key);
}

FunctionSpec parse_function(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
  const Json& kind = required(j, "kind", where);
  if (!kind.is_string()) fail(where + ".kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "constant") {
    allow_keys(j, where, {"kind", "value"});
    return FunctionSpec::constant(get_complex(required(j, "value", where), where + ".value"));
  }
  if (k == "polynomial") {
    allow_keys(j, where, {"kind", "coefficients"});
    const Json& c = required(j, "coefficients", where);
    if (!c.is_array() || c.empty()) fail(where + ".coefficients must be a non-empty array");
    std::vector<cplx> coeffs;
    for (const auto& v : c) coeffs.push_back(get_complex(v, where + ".coefficients[]"));
    return FunctionSpec::polynomial(std::move(coeffs));
  }
  if (k == "scaled_gaussian_entire") {
    allow_keys(j, where, {"kind", "amplitude", "center", "width"});
    const double width = get_real(required(j, "width", where), where + ".width");
    if (!(width > 0.0)) fail(where + ".width must be positive");
    return FunctionSpec::scaled_gaussian(get_complex(required(j, "amplitude", where), where + ".amplitude"),
                                         get_real(required(j, "center", where), where + ".center"), width);
  }
  fail(where + ".kind '" + k + "' is not in the registry (constant, polynomial, scaled_gaussian_entire)");
}

Json complex_json(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

Json function_json(const FunctionSpec& f) {
  Json j;
  j["kind"] = to_string(f.kind());
  const auto& p = f.parameters();
  switch (f.kind()) {
    case FunctionKind::Constant: j["value"] = complex_json(p[0]); break;
    case FunctionKind::Polynomial: {
      Json c = Json::array();
      for (const auto& v : p) c.push_back(complex_json(v));
      j["coefficients"] = c;
      break;
    }
    case FunctionKind::ScaledGaussian:
      j["amplitude"] = complex_json(p[0]);
      j["center"] = p[1].real();
      j["width"] = p[2].real();
      break;
  }
  return j;
}

void parse_numerics(const Json& j, Numerics& num) {
  allow_keys(j, "numerics", {"n_interval", "m_loop", "m_line", "h", "rho", "map_scale", "loop_shape", "line_kind"});
  if (j.contains("n_interval")) num.n_interval = get_int(j["n_interval"], "numerics.n_interval");
  if (j.contains("m_loop")) num.m_loop = get_int(j["m_loop"], "numerics.m_loop");
  if (j.contains("m_line")) num.m_line = get_int(j["m_line"], "numerics.m_line");
  if (j.contains("h")) num.h = get_real(j["h"], "numerics.h");
  if (j.contains("rho")) num.rho = get_real(j["rho"], "numerics.rho");
  if (j.contains("map_scale")) num.map_scale = get_real(j["map_scale"], "numerics.map_scale");
  if (j.contains("loop_shape")) {
    const std::string s = j["loop_shape"].is_string() ? j["loop_shape"].get<std::string>() : "";
    if (s == "ellipse") num.loop_shape = LoopShape::Ellipse;
    else if (s == "stadium") num.loop_shape = LoopShape::Stadium;
    else fail("numerics.loop_shape must be \"ellipse\" or \"stadium\"");
  }
  if (j.contains("line_kind")) {
    const std::string s = j["line_kind"].is_string() ? j["line_kind"].get<std::string>() : "";
    if (s == "tangent") num.line_kind = LineKind::Tangent;
    else if (s == "truncated") num.line_kind = LineKind::Truncated;
    else fail("numerics.line_kind must be \"tangent\" or \"truncated\"");
  }
}

void parse_tolerances(const Json& j, Tolerances& tol) {
  allow_keys(j, "tolerances",
             {"r1", "r2", "r3", "strict_line", "slope_min", "slope_max", "decay_ratio_min", "decay_ratio_max"});
  auto real = [&](const char* key, double& dst) {
    if (j.contains(key)) dst = get_real(j[key], std::string("tolerances.") + key);
  };
  real("r1", tol.r1);
  real("r2", tol.r2);
  real("r3", tol.r3);
  real("slope_min", tol.slope_min);
  real("slope_max", tol.slope_max);
  real("decay_ratio_min", tol.decay_ratio_min);
  real("decay_ratio_max", tol.decay_ratio_max);
  if (j.contains("strict_line")) {
    if (!j["strict_line"].is_boolean()) fail("tolerances.strict_line must be a boolean");
    tol.strict_line = j["strict_line"].get<bool>();
  }
  if (!(tol.r1 > 0.0) || !(tol.r2 > 0.0) || !(tol.r3 > 0.0)) fail("tolerances must be positive");
  if (!(tol.slope_min < tol.slope_max)) fail("tolerances: need slope_min < slope_max");
  if (!(tol.decay_ratio_min < tol.decay_ratio_max)) fail("tolerances: need decay_ratio_min < decay_ratio_max");
}

}  // namespace

ProblemConfig parse_config(const Json& j) {
  allow_keys(j, "config", {"interval", "x", "c", "F", "p", "shifts", "numerics", "tolerances"});
  ProblemConfig cfg;
  const Json& interval = required(j, "interval", "config");
  allow_keys(interval, "interval", {"a", "b"});
  cfg.a = get_real(required(interval, "a", "interval"), "interval.a");
  cfg.b = get_real(required(interval, "b", "interval"), "interval.b");
  cfg.x = get_real(required(j, "x", "config"), "x");
  cfg.c = get_real(required(j, "c", "config"), "c");
  cfg.F = parse_function(required(j, "F", "config"), "F");
  cfg.p = j.contains("p") ? parse_function(j["p"], "p") : FunctionSpec::identity();

  if (j.contains("shifts")) {
    const Json& s = j["shifts"];
    allow_keys(s, "shifts", {"gamma", "c", "v"});
    const Json& g = required(s, "gamma", "shifts");
    const Json& c = required(s, "c", "shifts");
    const Json& v = required(s, "v", "shifts");
    if (!g.is_array() || !c.is_array() || !v.is_array()) fail("shifts.gamma, shifts.c, shifts.v must be arrays");
    for (const auto& e : g) cfg.shift.gamma.push_back(get_complex(e, "shifts.gamma[]"));
    for (const auto& e : c) cfg.shift.c.push_back(get_real(e, "shifts.c[]"));
    for (const auto& e : v) cfg.shift.v.push_back(get_int(e, "shifts.v[]") - 1);
    if (g.size() != c.size() || g.size() != v.size()) fail("shifts.gamma, shifts.c, shifts.v must have equal length");
    for (int idx : cfg.shift.v) {
      if (idx < 0 || idx >= cfg.N) fail("shifts.v entries are 1-based and must lie in 1.." + std::to_string(cfg.N));
    }
  } else {
    cfg.shift = gsk_shift_spec(cfg.c);
  }
  if (j.contains("numerics")) parse_numerics(j["numerics"], cfg.numerics);
  if (j.contains("tolerances")) parse_tolerances(j["tolerances"], cfg.tolerances);
  return cfg;
}

Json config_to_json(const ProblemConfig& cfg) {
  Json j;
  j["interval"] = {{"a", cfg.a}, {"b", cfg.b}};
  j["x"] = cfg.x;
  j["c"] = cfg.c;
  j["F"] = function_json(cfg.F);
  j["p"] = function_json(cfg.p);
  Json g = Json::array(), c = Json::array(), v = Json::array();
  for (std::size_t i = 0; i < cfg.shift.size(); ++i) {
    g.push_back(complex_json(cfg.shift.gamma[i]));
    c.push_back(cfg.shift.c[i]);
    v.push_back(cfg.shift.v[i] + 1);
  }
  j["shifts"] = {{"gamma", g}, {"c", c}, {"v", v}};
  const auto& n = cfg.numerics;
  Json num;
  num["n_interval"] = cfg.interval_nodes();
  num["m_loop"] = n.m_loop;
  num["m_line"] = n.m_line;
  num["h"] = cfg.loop_h();
  if (n.rho) num["rho"] = *n.rho;
  num["map_scale"] = n.map_scale;
  num["loop_shape"] = n.loop_shape == LoopShape::Ellipse ? "ellipse" : "stadium";
  num["line_kind"] = n.line_kind == LineKind::Tangent ? "tangent" : "truncated";
  j["numerics"] = num;
  const auto& t = cfg.tolerances;
  j["tolerances"] = {{"r1", t.r1},
                     {"r2", t.r2},
                     {"r3", t.r3},
                     {"strict_line", t.strict_line},
                     {"slope_min", t.slope_min},
                     {"slope_max", t.slope_max},
                     {"decay_ratio_min", t.decay_ratio_min},
                     {"decay_ratio_max", t.decay_ratio_max}};
  return j;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return {parse_config(j), path, sha256_hex(bytes)};
}

}  // namespace shiftdet::cli
