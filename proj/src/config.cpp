#include "pinch/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pinch {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw std::invalid_argument("config field '" + field + "': " + why);
}

void reject_unknown(const json& obj, const std::string& prefix, const std::set<std::string>& known) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.count(key)) bad(prefix + key, "unknown key");
  }
}

double get_number(const json& obj, const char* key, const std::string& prefix, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) bad(prefix + key, "expected a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& obj, const char* key, const std::string& prefix,
                        std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  bad(prefix + key, "expected a non-negative integer");
}

bool get_bool(const json& obj, const char* key, const std::string& prefix, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) bad(prefix + key, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& obj, const char* key, const std::string& prefix,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) bad(prefix + key, "expected a string");
  return v.get<std::string>();
}

const json& get_object(const json& obj, const char* key, const std::string& prefix) {
  static const json empty = json::object();
  if (!obj.contains(key)) return empty;
  const json& v = obj.at(key);
  if (!v.is_object()) bad(prefix + key, "expected an object");
  return v;
}

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    bad(field, "must be positive and finite (legal range: (0, inf)), got " + std::to_string(v));
  }
}

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

std::string_view to_string(ThetaMode m) {
  return m == ThetaMode::absolute_watts ? "absolute_watts" : "noise_multiple";
}

std::string_view to_string(SamplingMode m) {
  switch (m) {
    case SamplingMode::automatic: return "auto";
    case SamplingMode::exact: return "exact";
    case SamplingMode::monte_carlo: return "monte_carlo";
  }
  return "auto";
}

void ScenarioConfig::validate() const {
  require_positive(carrier_freq_ghz, "carrier_freq_ghz");
  require_positive(antenna_height_m, "antenna_height_m");
  if (!std::isfinite(noise_dbm)) bad("noise_dbm", "must be finite");
  require_positive(dx_m, "dx_m");
  require_positive(dy_m, "dy_m");
  if (num_contents < 1) bad("num_contents", "must be at least 1");
  require_positive(content_size_mbits_min, "content_size_mbits_min");
  require_positive(content_size_mbits_max, "content_size_mbits_max");
  if (content_size_mbits_max < content_size_mbits_min) {
    bad("content_size_mbits_max", "must be >= content_size_mbits_min");
  }
  require_positive(bandwidth_mhz, "bandwidth_mhz");
  if (!(zipf_exponent >= 0.0) || !std::isfinite(zipf_exponent)) {
    bad("zipf_exponent", "must be finite and >= 0 (legal range: [0, inf))");
  }
  if (!std::isfinite(power_budget_dbm)) bad("power_budget_dbm", "must be finite");
  if (!(theta_value >= 0.0) || !std::isfinite(theta_value)) {
    bad("theta.value", "must be finite and >= 0 (legal range: [0, inf))");
  }
  if (num_users < 1) bad("num_users", "must be at least 1");
  if (!waveguide_equals_dx) require_positive(waveguide_length_m, "waveguide_length_m");
  if (sampling_mode == SamplingMode::monte_carlo && samples < 1) {
    bad("sampling.samples", "must be at least 1 in monte_carlo mode");
  }
  if (samples < 1) bad("sampling.samples", "must be at least 1");
  if (layouts < 1) bad("layouts", "must be at least 1");
  if (schemes.empty()) bad("schemes", "must list at least one scheme");
  try {
    solver.validate();
  } catch (const std::invalid_argument& e) {
    bad("solver", e.what());
  }
}

double ScenarioConfig::noise_watts() const { return dbm_to_watts(noise_dbm); }
double ScenarioConfig::power_budget_watts() const { return dbm_to_watts(power_budget_dbm); }
double ScenarioConfig::theta_watts() const {
  return theta_mode == ThetaMode::absolute_watts ? theta_value : theta_value * noise_watts();
}

Geometry ScenarioConfig::geometry() const {
  Geometry g;
  g.dx = dx_m;
  g.dy = dy_m;
  g.antenna_height = antenna_height_m;
  g.waveguide_length = waveguide_equals_dx ? dx_m : waveguide_length_m;
  return g;
}

RadioConstants ScenarioConfig::radio() const {
  return RadioConstants::make(carrier_freq_ghz * 1e9, bandwidth_mhz * 1e6, noise_watts());
}

bool ScenarioConfig::uses_exact_enumeration() const {
  switch (sampling_mode) {
    case SamplingMode::exact: return true;
    case SamplingMode::monte_carlo: return false;
    case SamplingMode::automatic: return state_space_size(num_contents, num_users) <= exact_budget;
  }
  return false;
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return c;

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw std::invalid_argument("config must be a JSON object");

  reject_unknown(root, "",
                 {"carrier_freq_ghz", "antenna_height_m", "noise_dbm", "dx_m", "dy_m",
                  "num_contents", "content_size_mbits_min", "content_size_mbits_max",
                  "bandwidth_mhz", "zipf_exponent", "power_budget_dbm", "theta", "num_users",
                  "waveguide_equals_dx", "waveguide_length_m", "seed", "sampling", "layouts",
                  "schemes", "solver"});

  c.carrier_freq_ghz = get_number(root, "carrier_freq_ghz", "", c.carrier_freq_ghz);
  c.antenna_height_m = get_number(root, "antenna_height_m", "", c.antenna_height_m);
  c.noise_dbm = get_number(root, "noise_dbm", "", c.noise_dbm);
  c.dx_m = get_number(root, "dx_m", "", c.dx_m);
  c.dy_m = get_number(root, "dy_m", "", c.dy_m);
  c.num_contents = get_count(root, "num_contents", "", c.num_contents);
  c.content_size_mbits_min = get_number(root, "content_size_mbits_min", "", c.content_size_mbits_min);
  c.content_size_mbits_max = get_number(root, "content_size_mbits_max", "", c.content_size_mbits_max);
  c.bandwidth_mhz = get_number(root, "bandwidth_mhz", "", c.bandwidth_mhz);
  c.zipf_exponent = get_number(root, "zipf_exponent", "", c.zipf_exponent);
  c.power_budget_dbm = get_number(root, "power_budget_dbm", "", c.power_budget_dbm);
  c.num_users = get_count(root, "num_users", "", c.num_users);
  c.waveguide_equals_dx = get_bool(root, "waveguide_equals_dx", "", c.waveguide_equals_dx);
  c.waveguide_length_m = get_number(root, "waveguide_length_m", "", c.waveguide_length_m);
  c.seed = get_count(root, "seed", "", c.seed);
  c.layouts = get_count(root, "layouts", "", c.layouts);

  const json& theta = get_object(root, "theta", "");
  reject_unknown(theta, "theta.", {"mode", "value"});
  const std::string theta_mode = get_string(theta, "mode", "theta.", "noise_multiple");
  if (theta_mode == "noise_multiple") {
    c.theta_mode = ThetaMode::noise_multiple;
  } else if (theta_mode == "absolute_watts") {
    c.theta_mode = ThetaMode::absolute_watts;
  } else {
    bad("theta.mode", "expected noise_multiple or absolute_watts");
  }
  c.theta_value = get_number(theta, "value", "theta.", c.theta_value);

  const json& sampling = get_object(root, "sampling", "");
  reject_unknown(sampling, "sampling.", {"mode", "samples", "exact_budget"});
  const std::string mode = get_string(sampling, "mode", "sampling.", "auto");
  if (mode == "auto") {
    c.sampling_mode = SamplingMode::automatic;
  } else if (mode == "exact") {
    c.sampling_mode = SamplingMode::exact;
  } else if (mode == "monte_carlo") {
    c.sampling_mode = SamplingMode::monte_carlo;
  } else {
    bad("sampling.mode", "expected auto, exact, or monte_carlo");
  }
  c.samples = get_count(sampling, "samples", "sampling.", c.samples);
  c.exact_budget = get_count(sampling, "exact_budget", "sampling.", c.exact_budget);

  if (root.contains("schemes")) {
    const json& list = root.at("schemes");
    if (!list.is_array()) bad("schemes", "expected an array of scheme names");
    c.schemes.clear();
    for (const json& s : list) {
      if (!s.is_string()) bad("schemes", "expected scheme names as strings");
      try {
        c.schemes.push_back(parse_scheme(s.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        bad("schemes", e.what());
      }
    }
  }

  const json& solver = get_object(root, "solver", "");
  reject_unknown(solver, "solver.",
                 {"mu_tol", "outer_tol", "antenna_tol", "p0_grid_points", "p0_margin",
                  "max_outer_iters", "golden_subintervals", "max_alternations", "sic_fallback",
                  "joint_polish", "multi_start", "noma_order"});
  SolverConfig& s = c.solver;
  s.mu_tol = get_number(solver, "mu_tol", "solver.", s.mu_tol);
  s.outer_tol = get_number(solver, "outer_tol", "solver.", s.outer_tol);
  s.antenna_tol = get_number(solver, "antenna_tol", "solver.", s.antenna_tol);
  s.p0_grid_points = static_cast<int>(get_count(solver, "p0_grid_points", "solver.", s.p0_grid_points));
  s.p0_margin = get_number(solver, "p0_margin", "solver.", s.p0_margin);
  s.max_outer_iters = static_cast<int>(get_count(solver, "max_outer_iters", "solver.", s.max_outer_iters));
  s.golden_subintervals =
      static_cast<int>(get_count(solver, "golden_subintervals", "solver.", s.golden_subintervals));
  s.max_alternations =
      static_cast<int>(get_count(solver, "max_alternations", "solver.", s.max_alternations));
  s.sic_fallback = get_bool(solver, "sic_fallback", "solver.", s.sic_fallback);
  s.joint_polish = get_bool(solver, "joint_polish", "solver.", s.joint_polish);
  s.multi_start = get_bool(solver, "multi_start", "solver.", s.multi_start);
  const std::string order = get_string(solver, "noma_order", "solver.", "ascending_gain");
  if (order == "ascending_gain") {
    s.noma_order = NomaOrder::ascending_gain;
  } else if (order == "request_order") {
    s.noma_order = NomaOrder::request_order;
  } else {
    bad("solver.noma_order", "expected ascending_gain or request_order");
  }

  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace pinch
