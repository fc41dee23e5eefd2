#include "dnkg/config.hpp"

#include <zlib.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dnkg/error.hpp"

namespace dnkg {

using nlohmann::json;

int DataParams::support() const { return radius > 0 ? radius : int(std::ceil(4.0 * width)); }

int ExperimentConfig::effective_radius() const {
  if (radius > 0) return radius;
  return int(data.support() + steps + 1);
}

void ExperimentConfig::validate() const {
  grid.validate();
  auto bad = [](const std::string& m) { fail(ErrorCode::Config, m); };
  if (steps < 1) bad("steps must be >= 1");
  if (snapshot_every < 0) bad("snapshot_every must be >= 0");
  if (window < 256) bad("analysis window must be >= 256");
  if (hop < 1) bad("analysis hop must be >= 1");
  if (!(weight_s > 0)) bad("weight exponent s must be positive");
  if (!(data.width > 0)) bad("data width must be positive");
  if (!(data.amplitude >= 0) || !(data.noise >= 0)) bad("data amplitude and noise must be >= 0");
  if (data.radius < 0 || radius < 0) bad("radii must be >= 0");
  for (double c : potential.coeffs)
    if (!std::isfinite(c)) bad("potential coefficients must be finite");
  // psi^{T+1} is supported in |X| <= support + T; the frozen ring must lie beyond it.
  const std::int64_t need = std::int64_t(data.support()) + steps + 1;
  if (effective_radius() < need)
    bad("box radius " + std::to_string(effective_radius()) + " < R_data + T_max + 1 = " + std::to_string(need));
  if (data.support() >= effective_radius()) bad("initial data reach the boundary ring");
}

json ExperimentConfig::to_json() const {
  json g;
  g["n"] = grid.n;
  g["tau"] = grid.tau;
  g["m"] = grid.m;
  if (grid.eps == GridParams::exact_ratio(grid.n, grid.tau, grid.m).eps)
    g["eps"] = "exact";
  else
    g["eps"] = grid.eps;
  return json{{"grid", g},
              {"potential", potential.coeffs},
              {"model", to_string(model)},
              {"box", {{"radius", radius}}},
              {"run", {{"steps", steps}, {"snapshot_every", snapshot_every}}},
              {"analysis", {{"window", window}, {"hop", hop}, {"s", weight_s}}},
              {"output", {{"dir", output_dir}}},
              {"data",
               {{"seed", seed},
                {"amplitude", data.amplitude},
                {"width", data.width},
                {"radius", data.radius},
                {"omega0", data.omega0},
                {"noise", data.noise}}}};
}

namespace {

// Overlay src onto dst, refusing keys that dst (the defaults) does not have.
void overlay(json& dst, const json& src, const std::string& where) {
  if (!src.is_object()) fail(ErrorCode::Config, "expected a section at '" + where + "'");
  for (auto it = src.begin(); it != src.end(); ++it) {
    const std::string key = where.empty() ? it.key() : where + "." + it.key();
    if (!dst.contains(it.key())) fail(ErrorCode::Config, "unknown config key '" + key + "'");
    json& d = dst[it.key()];
    if (d.is_object())
      overlay(d, it.value(), key);
    else
      d = it.value();
  }
}

template <typename T>
T get(const json& j, const char* section, const char* key) {
  try {
    return section ? j.at(section).at(key).get<T>() : j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::Config, std::string("bad value for '") + (section ? std::string(section) + "." : "") + key +
                                "': " + e.what());
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  json full = ExperimentConfig{}.to_json();
  overlay(full, j, "");
  ExperimentConfig c;
  const int n = get<int>(full, "grid", "n");
  const double tau = get<double>(full, "grid", "tau"), m = get<double>(full, "grid", "m");
  const json& eps = full["grid"]["eps"];
  if (eps.is_string()) {
    if (eps.get<std::string>() != "exact") fail(ErrorCode::Config, "grid.eps must be a number or \"exact\"");
    c.grid = GridParams::exact_ratio(n, tau, m);
  } else {
    c.grid = GridParams::make(n, get<double>(full, "grid", "eps"), tau, m);
  }
  c.potential = PolynomialPotential(get<std::vector<double>>(full, nullptr, "potential"));
  try {
    c.model = parse_model(get<std::string>(full, nullptr, "model"));
  } catch (const Error& e) {
    fail(ErrorCode::Config, e.what());
  }
  c.radius = get<int>(full, "box", "radius");
  c.steps = get<std::int64_t>(full, "run", "steps");
  c.snapshot_every = get<std::int64_t>(full, "run", "snapshot_every");
  c.window = get<int>(full, "analysis", "window");
  c.hop = get<int>(full, "analysis", "hop");
  c.weight_s = get<double>(full, "analysis", "s");
  c.output_dir = get<std::string>(full, "output", "dir");
  c.seed = get<std::uint64_t>(full, "data", "seed");
  c.data.amplitude = get<double>(full, "data", "amplitude");
  c.data.width = get<double>(full, "data", "width");
  c.data.radius = get<int>(full, "data", "radius");
  c.data.omega0 = get<double>(full, "data", "omega0");
  c.data.noise = get<double>(full, "data", "noise");
  return c;
}

std::string ExperimentConfig::hash() const {
  const std::string s = to_json().dump();
  const uLong crc = crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(s.data()), uInt(s.size()));
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) fail(ErrorCode::Config, "override '" + assignment + "' is not key=value");
  const std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  json* node = &j;
  std::stringstream ks(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ks, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    json& next = (*node)[parts[i]];
    if (next.is_null()) next = json::object();
    if (!next.is_object()) fail(ErrorCode::Config, "override '" + key + "' descends into a value");
    node = &next;
  }
  (*node)[parts.back()] = value;
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  json j = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Config, "cannot open config file '" + path + "'");
    j = json::parse(in, nullptr, false, true);
    if (j.is_discarded()) fail(ErrorCode::Config, "config file '" + path + "' is not valid JSON");
  }
  for (const auto& o : overrides) apply_override(j, o);
  ExperimentConfig c = ExperimentConfig::from_json(j);
  c.validate();
  return c;
}

}  // namespace dnkg
