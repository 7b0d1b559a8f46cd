#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pinch/baselines.hpp"

namespace pinch {

enum class ThetaMode { absolute_watts, noise_multiple };
enum class SamplingMode { automatic, exact, monte_carlo };

/// Scenario description as written in the config file. Defaults are the
/// reference deployment: 28 GHz, d = 3 m, -90 dBm noise, 120 m x 40 m area,
/// 30 contents of 1-20 Mbit, 1 MHz, Zipf 0.5, 25 dBm, 4 users, L = D_x.
struct ScenarioConfig {
  double carrier_freq_ghz = 28.0;
  double antenna_height_m = 3.0;
  double noise_dbm = -90.0;
  double dx_m = 120.0;
  double dy_m = 40.0;
  std::size_t num_contents = 30;
  double content_size_mbits_min = 1.0;
  double content_size_mbits_max = 20.0;
  double bandwidth_mhz = 1.0;
  double zipf_exponent = 0.5;
  double power_budget_dbm = 25.0;
  ThetaMode theta_mode = ThetaMode::noise_multiple;
  double theta_value = 1.0;
  std::size_t num_users = 4;
  bool waveguide_equals_dx = true;
  double waveguide_length_m = 120.0;  // used only when waveguide_equals_dx is false
  std::uint64_t seed = 1;
  SamplingMode sampling_mode = SamplingMode::automatic;
  std::size_t samples = 500;
  std::uint64_t exact_budget = 10000;  // automatic mode enumerates when I^K <= this
  std::size_t layouts = 10;
  std::vector<SchemeId> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
  SolverConfig solver;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  double noise_watts() const;
  double power_budget_watts() const;
  double theta_watts() const;
  Geometry geometry() const;
  RadioConstants radio() const;
  /// Exact enumeration or Monte Carlo after resolving `automatic`.
  bool uses_exact_enumeration() const;
};

double dbm_to_watts(double dbm);

/// Parses the JSON config text. Empty text yields the defaults.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

std::string_view to_string(ThetaMode m);
std::string_view to_string(SamplingMode m);

}  // namespace pinch
