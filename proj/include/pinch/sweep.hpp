#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pinch/config.hpp"

namespace pinch {

enum class SweepParam { power_budget_dbm, zipf_exponent, dx_m, dy_m, num_users };

std::string_view to_string(SweepParam p);
SweepParam parse_sweep_param(std::string_view name);

struct SweepSpec {
  SweepParam parameter = SweepParam::power_budget_dbm;
  std::vector<double> values;

  void validate() const;
};

/// Parses "param=v1,v2,...".
SweepSpec parse_sweep(std::string_view text);

struct SweepRow {
  double sweep_value = 0.0;
  SchemeId scheme = SchemeId::carp_jo;
  double avg_latency_s = 0.0;
  double avg_sum_rate_bps = 0.0;
  std::uint64_t n_states = 0;
  std::uint64_t n_infeasible = 0;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
  std::uint64_t layouts = 1;
  double latency_stderr_s = 0.0;   // across layouts
  double sum_rate_stderr_bps = 0.0;
};

/// A state with +inf latency (no feasible allocation anywhere). Carries the
/// scheme, layout, and request vector in its message.
class InfeasibleStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepOptions {
  bool parallel = true;
  bool record_timing = false;
};

/// Copy of `base` with the swept field set to `value`. Sweeping dx_m also
/// moves the waveguide length when it tracks D_x.
ScenarioConfig apply_sweep_value(ScenarioConfig base, SweepParam param, double value);

/// Content sizes for a master seed; identical for every sweep point.
Catalog frozen_catalog(const ScenarioConfig& cfg);

/// Users of layout `index` for the geometry and user count of `cfg`.
System make_system(const ScenarioConfig& cfg, std::size_t layout_index);

/// Weighted request states for one layout: every state with its pmf weight in
/// exact mode, or `samples` draws with weight 1/samples.
struct WeightedStates {
  std::vector<RequestState> states;
  std::vector<double> weights;
};
WeightedStates request_states(const ScenarioConfig& cfg, std::size_t layout_index);

/// Runs every sweep value for every configured scheme. Rows come out ordered
/// by sweep value, then by scheme in the configured order.
std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, const SweepSpec& sweep,
                                const SweepOptions& opts = {});

}  // namespace pinch
