#include "pinch/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "pinch/golden.hpp"

namespace pinch {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string_view to_string(SchemeId id) {
  switch (id) {
    case SchemeId::carp_jo: return "carp_jo";
    case SchemeId::traditional_rsma: return "traditional_rsma";
    case SchemeId::noma: return "noma";
    case SchemeId::fixed_antenna: return "fixed_antenna";
  }
  return "unknown";
}

SchemeId parse_scheme(std::string_view name) {
  for (SchemeId id : kAllSchemes) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown scheme '" + std::string(name) +
                              "' (expected carp_jo, traditional_rsma, noma, fixed_antenna)");
}

StateSolution solve_traditional_rsma(const RequestState& state, const Catalog& catalog,
                                     const System& sys, const SolverConfig& cfg) {
  return joint_optimize(user_streams(state, catalog), sys, cfg);
}

StateSolution solve_fixed_antenna(const RequestState& state, const Catalog& catalog,
                                  const System& sys, const SolverConfig& cfg) {
  StateSolution sol = solve_resource_alloc(0.0, content_streams(state, catalog), sys, cfg);
  sol.iterations = 1;
  sol.trace = {sol.objective};
  return sol;
}

std::vector<std::size_t> noma_decoding_order(std::span<const double> stream_gains, NomaOrder rule) {
  std::vector<std::size_t> order(stream_gains.size());
  std::iota(order.begin(), order.end(), 0);
  if (rule == NomaOrder::ascending_gain) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return stream_gains[a] < stream_gains[b];
    });
  }
  return order;
}

std::vector<double> noma_min_powers(double mu, std::span<const double> sizes,
                                    std::span<const double> stream_gains,
                                    std::span<const std::size_t> order, double noise_power,
                                    double bandwidth) {
  std::vector<double> powers(sizes.size(), 0.0);
  double later = 0.0;
  for (std::size_t t = order.size(); t-- > 0;) {
    const std::size_t i = order[t];
    const double snr_needed = std::expm1(sizes[i] / (mu * bandwidth) * std::numbers::ln2);
    powers[i] = snr_needed * (later + noise_power / stream_gains[i]);
    later += powers[i];
  }
  return powers;
}

std::vector<double> noma_rates(std::span<const double> powers, std::span<const double> stream_gains,
                               std::span<const std::size_t> order, double noise_power,
                               double bandwidth) {
  std::vector<double> rates(powers.size(), 0.0);
  double later = 0.0;
  for (std::size_t t = order.size(); t-- > 0;) {
    const std::size_t i = order[t];
    const double g = stream_gains[i];
    rates[i] = powers[i] > 0.0 ? bandwidth * std::log2(1.0 + powers[i] * g / (g * later + noise_power))
                               : 0.0;
    later += powers[i];
  }
  return rates;
}

NomaPowerSolution solve_noma_power(std::span<const double> sizes,
                                   std::span<const double> stream_gains, double power_budget,
                                   double noise_power, double bandwidth, double mu_tol,
                                   NomaOrder rule) {
  NomaPowerSolution out;
  out.order = noma_decoding_order(stream_gains, rule);
  auto total = [](const std::vector<double>& p) { return std::accumulate(p.begin(), p.end(), 0.0); };

  double lo = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double alone = bandwidth * std::log2(1.0 + power_budget * stream_gains[i] / noise_power);
    lo = std::max(lo, sizes[i] / alone);
  }
  std::vector<double> p = noma_min_powers(lo, sizes, stream_gains, out.order, noise_power, bandwidth);
  if (total(p) <= power_budget) {
    out.powers = std::move(p);
    out.mu = lo;
    return out;
  }
  double hi = 2.0 * lo;
  for (;;) {
    p = noma_min_powers(hi, sizes, stream_gains, out.order, noise_power, bandwidth);
    if (total(p) <= power_budget) break;
    lo = hi;
    hi *= 2.0;
  }
  out.powers = std::move(p);
  while (hi - lo > mu_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    p = noma_min_powers(mid, sizes, stream_gains, out.order, noise_power, bandwidth);
    if (total(p) <= power_budget) {
      hi = mid;
      out.powers = std::move(p);
    } else {
      lo = mid;
    }
  }
  out.mu = hi;
  return out;
}

std::vector<double> stream_gains(double antenna_x, const StreamSet& streams, const System& sys) {
  const ChannelState cs = channel_state(antenna_x, sys.users, sys.geom, sys.radio);
  std::vector<double> g;
  g.reserve(streams.size());
  for (const auto& members : streams.members) {
    double m = kInf;
    for (std::size_t k : members) m = std::min(m, cs.gains.at(k));
    g.push_back(m);
  }
  return g;
}

StateSolution solve_noma(const RequestState& state, const Catalog& catalog, const System& sys,
                         const SolverConfig& cfg) {
  const StreamSet streams = content_streams(state, catalog);
  const double noise = sys.radio.noise_power;
  const double bandwidth = sys.radio.bandwidth;
  auto latency_at = [&](double x) {
    return solve_noma_power(streams.sizes, stream_gains(x, streams, sys), sys.power_budget, noise,
                            bandwidth, cfg.mu_tol, cfg.noma_order)
        .mu;
  };

  LineMinimum best = segmented_golden_minimize(latency_at, 0.0, sys.geom.waveguide_length,
                                               cfg.golden_subintervals, cfg.antenna_tol);
  const double x0 = max_worst_gain_position(sys.users, sys.geom);
  const double at_x0 = latency_at(x0);
  if (at_x0 < best.value) {
    best.x = x0;
    best.value = at_x0;
  }

  const std::vector<double> gains = stream_gains(best.x, streams, sys);
  NomaPowerSolution np = solve_noma_power(streams.sizes, gains, sys.power_budget, noise, bandwidth,
                                          cfg.mu_tol, cfg.noma_order);

  StateSolution sol;
  sol.antenna_x = best.x;
  sol.mode = TransmitMode::private_only;
  sol.streams = streams;
  sol.powers.total = sys.power_budget;
  sol.powers.common = 0.0;
  sol.powers.sic_margin = 0.0;
  sol.powers.priv = np.powers;
  sol.rates.common_total = 0.0;
  sol.rates.common_shares.assign(streams.size(), 0.0);
  sol.rates.priv = noma_rates(np.powers, gains, np.order, noise, bandwidth);
  sol.rates.content_rates = sol.rates.priv;
  sol.latency = state_latency(streams.sizes, sol.rates.content_rates);
  sol.objective = np.mu;
  sol.feasible = std::isfinite(sol.latency);
  sol.iterations = 1;
  sol.trace = {np.mu};
  return sol;
}

StateSolution solve_scheme(SchemeId id, const RequestState& state, const Catalog& catalog,
                           const System& sys, const SolverConfig& cfg) {
  switch (id) {
    case SchemeId::carp_jo: return carp_jo(state, catalog, sys, cfg);
    case SchemeId::traditional_rsma: return solve_traditional_rsma(state, catalog, sys, cfg);
    case SchemeId::noma: return solve_noma(state, catalog, sys, cfg);
    case SchemeId::fixed_antenna: return solve_fixed_antenna(state, catalog, sys, cfg);
  }
  throw std::invalid_argument("unknown scheme");
}

double sum_rate(const StateSolution& solution, const RequestState& state) {
  if (!std::isfinite(solution.latency)) {
    throw std::invalid_argument("sum_rate of an infeasible solution");
  }
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t s = 0; s < solution.streams.size(); ++s) {
    for (std::size_t k : solution.streams.members[s]) {
      if (state.requests.at(k) != solution.streams.content[s]) {
        throw std::invalid_argument("solution streams do not match the request state");
      }
      total += solution.rates.content_rates[s];
      ++counted;
    }
  }
  if (counted != state.num_users()) {
    throw std::invalid_argument("solution streams do not cover every user");
  }
  return total;
}

}  // namespace pinch
