#include "pinch/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "pinch/batch.hpp"

namespace pinch {

namespace {

// Stream identifiers under the master seed.
constexpr std::uint64_t kCatalogStream = 1;
constexpr std::uint64_t kLayoutStream = 2;
constexpr std::uint64_t kStateStream = 3;

std::string describe(const RequestState& s) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < s.requests.size(); ++k) os << (k ? "," : "") << s.requests[k];
  os << ')';
  return os.str();
}

struct LayoutBatch {
  System system;
  std::vector<RequestState> unique;
  std::vector<double> weight;         // summed weight per unique state
  std::vector<std::uint64_t> copies;  // multiplicity per unique state
};

LayoutBatch build_layout(const ScenarioConfig& cfg, std::size_t layout) {
  LayoutBatch b;
  b.system = make_system(cfg, layout);
  WeightedStates ws = request_states(cfg, layout);
  // Repeated draws of the same request vector share one solve.
  std::map<RequestState, std::size_t> index;
  for (std::size_t j = 0; j < ws.states.size(); ++j) {
    auto [it, inserted] = index.try_emplace(ws.states[j], b.unique.size());
    if (inserted) {
      b.unique.push_back(ws.states[j]);
      b.weight.push_back(0.0);
      b.copies.push_back(0);
    }
    b.weight[it->second] += ws.weights[j];
    b.copies[it->second] += 1;
  }
  return b;
}

}  // namespace

std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::power_budget_dbm: return "power_budget_dbm";
    case SweepParam::zipf_exponent: return "zipf_exponent";
    case SweepParam::dx_m: return "dx_m";
    case SweepParam::dy_m: return "dy_m";
    case SweepParam::num_users: return "num_users";
  }
  return "power_budget_dbm";
}

SweepParam parse_sweep_param(std::string_view name) {
  for (SweepParam p : {SweepParam::power_budget_dbm, SweepParam::zipf_exponent, SweepParam::dx_m,
                       SweepParam::dy_m, SweepParam::num_users}) {
    if (to_string(p) == name) return p;
  }
  throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                              "' (expected power_budget_dbm, zipf_exponent, dx_m, dy_m, num_users)");
}

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
  if (!std::is_sorted(values.begin(), values.end())) {
    throw std::invalid_argument("sweep values must be sorted ascending");
  }
  if (parameter == SweepParam::num_users) {
    for (double v : values) {
      if (!(v >= 1.0) || v != std::floor(v)) {
        throw std::invalid_argument("num_users sweep values must be positive integers");
      }
    }
  }
}

SweepSpec parse_sweep(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw std::invalid_argument("sweep must look like <param>=<v1,v2,...>");
  }
  SweepSpec spec;
  spec.parameter = parse_sweep_param(text.substr(0, eq));
  std::string list(text.substr(eq + 1));
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw std::invalid_argument("sweep value '" + item + "' is not a number");
    }
    spec.values.push_back(v);
  }
  spec.validate();
  return spec;
}

ScenarioConfig apply_sweep_value(ScenarioConfig base, SweepParam param, double value) {
  switch (param) {
    case SweepParam::power_budget_dbm: base.power_budget_dbm = value; break;
    case SweepParam::zipf_exponent: base.zipf_exponent = value; break;
    case SweepParam::dx_m: base.dx_m = value; break;
    case SweepParam::dy_m: base.dy_m = value; break;
    case SweepParam::num_users: base.num_users = static_cast<std::size_t>(value); break;
  }
  return base;
}

Catalog frozen_catalog(const ScenarioConfig& cfg) {
  Rng rng = make_rng(cfg.seed, {kCatalogStream});
  return draw_catalog(rng, cfg.num_contents, cfg.content_size_mbits_min * 1e6,
                      cfg.content_size_mbits_max * 1e6);
}

System make_system(const ScenarioConfig& cfg, std::size_t layout_index) {
  System sys;
  sys.geom = cfg.geometry();
  sys.radio = cfg.radio();
  sys.power_budget = cfg.power_budget_watts();
  sys.sic_margin = cfg.theta_watts();
  Rng rng = make_rng(cfg.seed, {kLayoutStream, layout_index});
  sys.users = place_users(rng, sys.geom, cfg.num_users);
  return sys;
}

WeightedStates request_states(const ScenarioConfig& cfg, std::size_t layout_index) {
  const RequestPmf pmf = zipf_pmf(cfg.num_contents, cfg.zipf_exponent);
  WeightedStates ws;
  if (cfg.uses_exact_enumeration()) {
    StateEnumerator it(cfg.num_contents, cfg.num_users);
    RequestState s;
    while (it.next(s)) {
      ws.weights.push_back(state_probability(s, pmf));
      ws.states.push_back(s);
    }
    return ws;
  }
  const double w = 1.0 / static_cast<double>(cfg.samples);
  for (std::size_t j = 0; j < cfg.samples; ++j) {
    Rng rng = make_rng(cfg.seed, {kStateStream, layout_index, j});
    ws.states.push_back(sample_state(rng, pmf, cfg.num_users));
    ws.weights.push_back(w);
  }
  return ws;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const SweepSpec& sweep,
                                const SweepOptions& opts) {
  base.validate();
  sweep.validate();
  const Catalog catalog = frozen_catalog(base);
  std::vector<SweepRow> rows;

  for (double value : sweep.values) {
    const ScenarioConfig cfg = apply_sweep_value(base, sweep.parameter, value);
    cfg.validate();

    std::vector<LayoutBatch> layouts;
    layouts.reserve(cfg.layouts);
    for (std::size_t l = 0; l < cfg.layouts; ++l) layouts.push_back(build_layout(cfg, l));

    for (SchemeId scheme : cfg.schemes) {
      std::vector<SolveTask> tasks;
      for (const LayoutBatch& b : layouts) {
        for (const RequestState& s : b.unique) tasks.push_back({scheme, &s, &catalog, &b.system});
      }

      const auto t0 = std::chrono::steady_clock::now();
      std::vector<StateSolution> sols = opts.parallel ? solve_batch_parallel(tasks, cfg.solver)
                                                      : solve_batch_serial(tasks, cfg.solver);
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

      SweepRow row;
      row.sweep_value = value;
      row.scheme = scheme;
      row.seed = cfg.seed;
      row.layouts = cfg.layouts;
      row.wall_time_s = opts.record_timing ? elapsed : 0.0;

      std::vector<double> lat(layouts.size(), 0.0);
      std::vector<double> rate(layouts.size(), 0.0);
      std::size_t t = 0;
      for (std::size_t l = 0; l < layouts.size(); ++l) {
        const LayoutBatch& b = layouts[l];
        for (std::size_t u = 0; u < b.unique.size(); ++u, ++t) {
          const StateSolution& sol = sols[t];
          row.n_states += b.copies[u];
          if (!std::isfinite(sol.latency)) {
            std::ostringstream os;
            os << "infeasible state: scheme " << to_string(scheme) << ", " << to_string(sweep.parameter)
               << " = " << value << ", layout " << l << ", requests " << describe(b.unique[u])
               << ", antenna x = " << sol.antenna_x << " m";
            throw InfeasibleStateError(os.str());
          }
          if (!sol.feasible) row.n_infeasible += b.copies[u];
          lat[l] += b.weight[u] * sol.latency;
          rate[l] += b.weight[u] * sum_rate(sol, b.unique[u]);
        }
      }

      auto mean_and_stderr = [](const std::vector<double>& v, double& mean, double& se) {
        mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        se = 0.0;
        if (v.size() > 1) {
          double ss = 0.0;
          for (double x : v) ss += (x - mean) * (x - mean);
          se = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
        }
      };
      mean_and_stderr(lat, row.avg_latency_s, row.latency_stderr_s);
      mean_and_stderr(rate, row.avg_sum_rate_bps, row.sum_rate_stderr_bps);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace pinch
