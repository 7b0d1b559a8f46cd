#include "pinch/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "pinch/golden.hpp"

namespace pinch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxJointStreams = 16;

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

void SolverConfig::validate() const {
  if (!(mu_tol > 0.0)) throw std::invalid_argument("mu_tol must be positive");
  if (!(outer_tol > 0.0)) throw std::invalid_argument("outer_tol must be positive");
  if (!(antenna_tol > 0.0)) throw std::invalid_argument("antenna_tol must be positive");
  if (p0_grid_points < 2) throw std::invalid_argument("p0_grid_points must be at least 2");
  if (!(p0_margin > 0.0 && p0_margin < 0.5)) {
    throw std::invalid_argument("p0_margin must lie in (0, 0.5)");
  }
  if (golden_subintervals < 1) throw std::invalid_argument("golden_subintervals must be at least 1");
  if (max_outer_iters < 1) throw std::invalid_argument("max_outer_iters must be at least 1");
  if (max_alternations < 1) throw std::invalid_argument("max_alternations must be at least 1");
}

void System::validate() const {
  geom.validate();
  if (!(power_budget > 0.0)) throw std::invalid_argument("power budget must be positive");
  if (!(sic_margin >= 0.0)) throw std::invalid_argument("SIC margin must be non-negative");
  if (users.empty()) throw std::invalid_argument("system needs at least one user");
}

StreamSet content_streams(const RequestState& state, const Catalog& catalog) {
  RequestGroups groups = group_requests(state);
  StreamSet s;
  s.content = groups.distinct;
  for (std::size_t m : groups.distinct) s.sizes.push_back(catalog.sizes.at(m));
  s.members = std::move(groups.cohorts);
  return s;
}

StreamSet user_streams(const RequestState& state, const Catalog& catalog) {
  StreamSet s;
  for (std::size_t k = 0; k < state.requests.size(); ++k) {
    s.content.push_back(state.requests[k]);
    s.sizes.push_back(catalog.sizes.at(state.requests[k]));
    s.members.push_back({k});
  }
  return s;
}

StreamLink stream_link(double antenna_x, const StreamSet& streams, const System& sys) {
  const ChannelState cs = channel_state(antenna_x, sys.users, sys.geom, sys.radio);
  StreamLink link;
  link.worst_gain = cs.worst_gain;
  link.floors.reserve(streams.size());
  for (const auto& members : streams.members) {
    double g = kInf;
    for (std::size_t k : members) g = std::min(g, cs.gains.at(k));
    link.floors.push_back(sys.radio.noise_power / g);
  }
  link.sic_min =
      sic_min_common_power(sys.power_budget, sys.radio.noise_power, sys.sic_margin, cs.worst_gain);
  return link;
}

PowerFeasibility private_power_feasible(double mu, std::span<const double> shares,
                                        std::span<const double> psi,
                                        std::span<const double> sizes, double private_budget,
                                        double bandwidth) {
  PowerFeasibility out;
  out.powers.resize(sizes.size());
  double total = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    // Psi_i (1 - 2^{(r_i - c_i/mu)/B}), clamped at zero.
    const double exponent = (shares[i] - sizes[i] / mu) / bandwidth;
    const double p = exponent >= 0.0 ? 0.0 : -psi[i] * std::expm1(exponent * std::numbers::ln2);
    out.powers[i] = p;
    total += p;
  }
  out.feasible = total <= private_budget;
  return out;
}

PrivatePowerSolution solve_private_power(std::span<const double> shares,
                                         std::span<const double> psi,
                                         std::span<const double> sizes, double private_budget,
                                         double bandwidth, double mu_tol) {
  const std::size_t n = sizes.size();
  PrivatePowerSolution out;
  if (n == 0) return out;

  if (!(private_budget > 0.0)) {
    // Only the common shares can carry the payloads.
    double mu = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu = std::max(mu, shares[i] > 0.0 ? sizes[i] / shares[i] : kInf);
    if (!std::isfinite(mu)) throw InfeasiblePowerError("no private budget and a zero common share");
    out.powers.assign(n, 0.0);
    out.mu = out.mu_low = mu;
    return out;
  }

  // Lower bound: every stream gets the whole budget with no interference.
  double lo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double noise_floor = psi[i] - private_budget;
    const double best_rate = shares[i] + bandwidth * std::log2(1.0 + private_budget / noise_floor);
    lo = std::max(lo, sizes[i] / best_rate);
  }
  PowerFeasibility at = private_power_feasible(lo, shares, psi, sizes, private_budget, bandwidth);
  if (at.feasible) {
    out.powers = std::move(at.powers);
    out.mu = out.mu_low = lo;
    return out;
  }

  double hi = 2.0 * lo;
  for (int doubling = 0;; ++doubling) {
    at = private_power_feasible(hi, shares, psi, sizes, private_budget, bandwidth);
    if (at.feasible) break;
    if (doubling > 1100 || !std::isfinite(hi)) {
      throw InfeasiblePowerError("private power bracket has no feasible upper end");
    }
    lo = hi;
    hi *= 2.0;
  }
  out.powers = std::move(at.powers);

  while (hi - lo > mu_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    PowerFeasibility m = private_power_feasible(mid, shares, psi, sizes, private_budget, bandwidth);
    if (m.feasible) {
      hi = mid;
      out.powers = std::move(m.powers);
    } else {
      lo = mid;
    }
    ++out.iterations;
  }
  out.mu = hi;
  out.mu_low = lo;
  return out;
}

RateAllocSolution solve_rate_alloc(std::span<const double> private_rates, double common_total,
                                   std::span<const double> sizes) {
  const std::size_t n = sizes.size();
  RateAllocSolution out;
  out.shares.assign(n, 0.0);
  if (n == 0) return out;

  if (!(common_total > 0.0)) {
    for (std::size_t i = 0; i < n; ++i) {
      out.mu = std::max(out.mu, private_rates[i] > 0.0 ? sizes[i] / private_rates[i] : kInf);
    }
    return out;
  }

  // Water-filling: the active set is a prefix of the streams sorted by their
  // private-only latency c_i / R_{i,r}, longest first.
  std::vector<double> own(n);
  for (std::size_t i = 0; i < n; ++i) {
    own[i] = private_rates[i] > 0.0 ? sizes[i] / private_rates[i] : kInf;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return own[a] > own[b]; });

  double size_sum = 0.0;
  double rate_sum = 0.0;
  double mu = 0.0;
  std::size_t active = 0;
  while (active < n) {
    const std::size_t i = order[active];
    size_sum += sizes[i];
    rate_sum += private_rates[i];
    ++active;
    mu = size_sum / (common_total + rate_sum);
    const double next = active < n ? own[order[active]] : 0.0;
    if (mu >= next) break;
  }

  double used = 0.0;
  for (std::size_t j = 0; j < active; ++j) {
    const std::size_t i = order[j];
    out.shares[i] = std::max(0.0, sizes[i] / mu - private_rates[i]);
    used += out.shares[i];
  }
  if (used > common_total) {
    const double scale = common_total / used;
    for (double& r : out.shares) r *= scale;
  }
  out.mu = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rate = out.shares[i] + private_rates[i];
    out.mu = std::max(out.mu, rate > 0.0 ? sizes[i] / rate : kInf);
  }
  return out;
}

double conservative_common_rate(double common_power, const StreamLink& link, const System& sys) {
  const double private_budget = sys.power_budget - common_power;
  return common_rate(common_power, private_budget, link.worst_gain, sys.radio.noise_power,
                     sys.radio.bandwidth);
}

std::vector<double> conservative_private_rates(std::span<const double> powers, double common_power,
                                               const StreamLink& link, const System& sys) {
  const double private_budget = sys.power_budget - common_power;
  std::vector<double> rates(powers.size());
  for (std::size_t i = 0; i < powers.size(); ++i) {
    rates[i] = private_rate_conservative(powers[i], private_budget + link.floors[i],
                                         sys.radio.bandwidth);
  }
  return rates;
}

Alternation alternate_power_rate(double common_power, const StreamLink& link,
                                 const StreamSet& streams, const System& sys,
                                 const SolverConfig& cfg, std::span<const double> warm_powers) {
  const double private_budget = sys.power_budget - common_power;
  const double common_total = conservative_common_rate(common_power, link, sys);
  std::vector<double> psi(streams.size());
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = private_budget + link.floors[i];

  Alternation alt;
  double prev = kInf;
  if (!warm_powers.empty()) {
    alt.powers.assign(warm_powers.begin(), warm_powers.end());
    RateAllocSolution ra = solve_rate_alloc(
        conservative_private_rates(alt.powers, common_power, link, sys), common_total, streams.sizes);
    alt.shares = std::move(ra.shares);
    alt.mu = prev = ra.mu;
    alt.trace.push_back(ra.mu);
  } else {
    const double total_size = sum(streams.sizes);
    alt.shares.resize(streams.size());
    for (std::size_t i = 0; i < streams.size(); ++i) {
      alt.shares[i] = common_total * streams.sizes[i] / total_size;
    }
  }

  for (int round = 0; round < cfg.max_alternations; ++round) {
    PrivatePowerSolution pp = solve_private_power(alt.shares, psi, streams.sizes, private_budget,
                                                  sys.radio.bandwidth, cfg.mu_tol);
    // The bisection stops up to mu_tol above the true minimum; the incumbent
    // powers are already feasible at alt.mu.
    if (pp.mu > alt.mu) {
      pp.powers = alt.powers;
      pp.mu = alt.mu;
    }
    alt.trace.push_back(pp.mu);
    RateAllocSolution ra = solve_rate_alloc(
        conservative_private_rates(pp.powers, common_power, link, sys), common_total, streams.sizes);
    alt.trace.push_back(ra.mu);
    if (ra.mu <= alt.mu) {
      alt.powers = std::move(pp.powers);
      alt.shares = std::move(ra.shares);
      alt.mu = ra.mu;
    }
    if (prev - ra.mu <= cfg.mu_tol * ra.mu) break;
    prev = ra.mu;
  }
  if (cfg.joint_polish && streams.size() <= kMaxJointStreams) {
    Alternation joint = joint_power_rate(common_power, link, streams, sys, cfg);
    if (joint.mu < alt.mu) {
      alt.powers = std::move(joint.powers);
      alt.shares = std::move(joint.shares);
      alt.mu = joint.mu;
      alt.trace.push_back(alt.mu);
    }
  }
  return alt;
}

namespace {

// Smallest total common-rate deficit at deadline mu, with its powers.
double min_deficit(double mu, std::span<const double> psi, std::span<const double> sizes,
                   double private_budget, double bandwidth, std::vector<double>* powers) {
  const std::size_t n = sizes.size();
  std::vector<double> full(n), demand(n);
  for (std::size_t i = 0; i < n; ++i) {
    demand[i] = sizes[i] / mu;
    full[i] = -psi[i] * std::expm1(-demand[i] / bandwidth * std::numbers::ln2);
  }
  double best = kInf;
  std::uint32_t best_mask = 0;
  std::size_t best_partial = n;
  double best_power = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double cost = 0.0;
    double deficit = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        cost += full[i];
      } else {
        deficit += demand[i];
      }
    }
    if (cost > private_budget) continue;
    const double rest = private_budget - cost;
    if (deficit < best) {
      best = deficit;
      best_mask = mask;
      best_partial = n;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if ((mask & (1u << j)) || rest >= full[j]) continue;
      const double d = deficit - private_rate_conservative(rest, psi[j], bandwidth);
      if (d < best) {
        best = d;
        best_mask = mask;
        best_partial = j;
        best_power = rest;
      }
    }
  }
  if (powers != nullptr) {
    powers->assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (best_mask & (1u << i)) (*powers)[i] = full[i];
    }
    if (best_partial < n) (*powers)[best_partial] = best_power;
  }
  return std::max(0.0, best);
}

}  // namespace

Alternation joint_power_rate(double common_power, const StreamLink& link,
                             const StreamSet& streams, const System& sys,
                             const SolverConfig& cfg) {
  const std::size_t n = streams.size();
  if (n > kMaxJointStreams) throw std::invalid_argument("joint_power_rate: too many streams");
  const double private_budget = sys.power_budget - common_power;
  const double bandwidth = sys.radio.bandwidth;
  const double common_total = conservative_common_rate(common_power, link, sys);
  std::vector<double> psi(n);
  for (std::size_t i = 0; i < n; ++i) psi[i] = private_budget + link.floors[i];

  Alternation out;
  if (n == 0) return out;
  auto feasible = [&](double mu, std::vector<double>* powers) {
    return min_deficit(mu, psi, streams.sizes, private_budget, bandwidth, powers) <= common_total;
  };

  double lo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double best_rate =
        common_total + bandwidth * std::log2(psi[i] / link.floors[i]);
    lo = std::max(lo, streams.sizes[i] / best_rate);
  }
  std::vector<double> powers;
  double hi = lo;
  if (!feasible(hi, &powers)) {
    hi = 2.0 * lo;
    for (int doubling = 0; !feasible(hi, &powers); ++doubling) {
      if (doubling > 1100 || !std::isfinite(hi)) return out;
      lo = hi;
      hi *= 2.0;
    }
    while (hi - lo > cfg.mu_tol * hi) {
      const double mid = 0.5 * (lo + hi);
      std::vector<double> p;
      if (feasible(mid, &p)) {
        hi = mid;
        powers = std::move(p);
      } else {
        lo = mid;
      }
    }
  }

  RateAllocSolution ra = solve_rate_alloc(
      conservative_private_rates(powers, common_power, link, sys), common_total, streams.sizes);
  out.powers = std::move(powers);
  out.shares = std::move(ra.shares);
  out.mu = ra.mu;
  out.trace.push_back(ra.mu);
  return out;
}

StateSolution finalize_solution(double antenna_x, const PowerBudget& powers,
                                std::span<const double> shares, TransmitMode mode,
                                const StreamSet& streams, const System& sys) {
  const StreamLink link = stream_link(antenna_x, streams, sys);
  const double noise = sys.radio.noise_power;
  const double bandwidth = sys.radio.bandwidth;

  StateSolution sol;
  sol.antenna_x = antenna_x;
  sol.powers = powers;
  sol.mode = mode;
  sol.streams = streams;

  RateAllocation& rates = sol.rates;
  rates.common_total =
      common_rate(powers.common, powers.private_sum(), link.worst_gain, noise, bandwidth);
  rates.common_shares.assign(shares.begin(), shares.end());
  // Shares were sized against the conservative common rate; rounding can still
  // leave their sum a few ulps above the exact one.
  if (!rates.common_shares.empty()) {
    for (int pass = 0; pass < 8; ++pass) {
      double used = 0.0;
      for (double r : rates.common_shares) used += r;
      if (used <= rates.common_total) break;
      double& top = *std::max_element(rates.common_shares.begin(), rates.common_shares.end());
      top = std::max(0.0, std::nextafter(top - (used - rates.common_total), 0.0));
    }
  }
  rates.priv.resize(streams.size());
  rates.content_rates.resize(streams.size());
  for (std::size_t i = 0; i < streams.size(); ++i) {
    double others = 0.0;
    for (std::size_t j = 0; j < streams.size(); ++j) {
      if (j != i) others += powers.priv[j];
    }
    rates.priv[i] = private_rate_exact(powers.priv[i], others, link.floors[i], bandwidth);
    rates.content_rates[i] = rates.common_shares[i] + rates.priv[i];
  }
  sol.latency = state_latency(streams.sizes, rates.content_rates);
  sol.feasible = mode == TransmitMode::rate_splitting && std::isfinite(sol.latency);
  return sol;
}

namespace {

struct Candidate {
  double common = 0.0;
  Alternation alt;
};

StateSolution infeasible_solution(double antenna_x, const StreamSet& streams, const System& sys) {
  StateSolution sol;
  sol.antenna_x = antenna_x;
  sol.powers.total = sys.power_budget;
  sol.powers.sic_margin = sys.sic_margin;
  sol.powers.priv.assign(streams.size(), 0.0);
  sol.streams = streams;
  return sol;
}

StateSolution to_solution(double antenna_x, const Candidate& best, TransmitMode mode,
                          const StreamSet& streams, const System& sys) {
  PowerBudget powers;
  powers.total = sys.power_budget;
  powers.common = best.common;
  powers.priv = best.alt.powers;
  powers.sic_margin = sys.sic_margin;
  StateSolution sol = finalize_solution(antenna_x, powers, best.alt.shares, mode, streams, sys);
  sol.objective = best.alt.mu;
  return sol;
}

}  // namespace

StateSolution solve_resource_alloc(double antenna_x, const StreamSet& streams, const System& sys,
                                   const SolverConfig& cfg, const PowerBudget* incumbent) {
  const StreamLink link = stream_link(antenna_x, streams, sys);
  const double lo = link.sic_min;
  const double hi = sys.power_budget * (1.0 - cfg.p0_margin);

  if (lo > hi) {
    if (!cfg.sic_fallback) return infeasible_solution(antenna_x, streams, sys);
    Candidate c;
    c.alt = alternate_power_rate(0.0, link, streams, sys, cfg);
    if (incumbent != nullptr && incumbent->common == 0.0) {
      Alternation warm = alternate_power_rate(0.0, link, streams, sys, cfg, incumbent->priv);
      if (warm.mu < c.alt.mu) c.alt = std::move(warm);
    }
    return to_solution(antenna_x, c, TransmitMode::private_only, streams, sys);
  }

  Candidate best;
  std::size_t best_index = 0;
  auto consider = [&](double p0, Alternation alt) {
    if (alt.mu < best.alt.mu || (alt.mu == best.alt.mu && p0 < best.common)) {
      best.common = p0;
      best.alt = std::move(alt);
      return true;
    }
    return false;
  };

  const int n_grid = cfg.p0_grid_points;
  const double step = (hi - lo) / (n_grid - 1);
  for (int k = 0; k < n_grid; ++k) {
    const double p0 = k + 1 == n_grid ? hi : lo + k * step;
    if (consider(p0, alternate_power_rate(p0, link, streams, sys, cfg))) {
      best_index = static_cast<std::size_t>(k);
    }
  }

  if (step > 0.0) {
    const double a = best_index == 0 ? lo : lo + (best_index - 1) * step;
    const double b = std::min(hi, lo + (best_index + 1) * step);
    auto objective = [&](double p0) { return alternate_power_rate(p0, link, streams, sys, cfg).mu; };
    LineMinimum refine = golden_section_minimize(objective, a, b, 1e-3 * step, 60);
    if (refine.value < best.alt.mu) {
      consider(refine.x, alternate_power_rate(refine.x, link, streams, sys, cfg));
    }
  }

  if (incumbent != nullptr && incumbent->common >= lo && incumbent->common <= hi &&
      incumbent->priv.size() == streams.size()) {
    consider(incumbent->common,
             alternate_power_rate(incumbent->common, link, streams, sys, cfg, incumbent->priv));
  }

  return to_solution(antenna_x, best, TransmitMode::rate_splitting, streams, sys);
}

AntennaSolution solve_antenna(const PowerBudget& powers, const StreamSet& streams,
                              const System& sys, const SolverConfig& cfg, double incumbent_x) {
  auto evaluate = [&](double x, std::vector<double>* shares) {
    const StreamLink link = stream_link(x, streams, sys);
    if (powers.common > 0.0 && powers.common < link.sic_min) return kInf;
    RateAllocSolution ra =
        solve_rate_alloc(conservative_private_rates(powers.priv, powers.common, link, sys),
                         conservative_common_rate(powers.common, link, sys), streams.sizes);
    if (shares != nullptr) *shares = std::move(ra.shares);
    return ra.mu;
  };
  auto objective = [&](double x) { return evaluate(x, nullptr); };

  LineMinimum best = segmented_golden_minimize(objective, 0.0, sys.geom.waveguide_length,
                                               cfg.golden_subintervals, cfg.antenna_tol);
  const double at_incumbent = objective(incumbent_x);
  if (!(best.value < at_incumbent)) {
    best.x = incumbent_x;
    best.value = at_incumbent;
  }

  AntennaSolution out;
  out.antenna_x = best.x;
  out.latency = evaluate(best.x, &out.shares);
  return out;
}

StateSolution joint_optimize(const StreamSet& streams, const System& sys, const SolverConfig& cfg) {
  // Starting point: the best resource step among the worst-gain optimum and
  // the positions directly above each user. A position where the common
  // stream is impossible only competes when it is impossible everywhere.
  double x = max_worst_gain_position(sys.users, sys.geom);
  StateSolution res = solve_resource_alloc(x, streams, sys, cfg);
  if (cfg.multi_start) {
    for (const Point3& u : sys.users) {
      const double xu = std::clamp(u.x, 0.0, sys.geom.waveguide_length);
      StateSolution cand = solve_resource_alloc(xu, streams, sys, cfg);
      if (cand.mode == res.mode && cand.objective < res.objective) {
        x = xu;
        res = std::move(cand);
      }
    }
  }
  if (!std::isfinite(res.objective)) return res;

  std::vector<double> trace{res.objective};
  StateSolution current = res;
  int iter = 0;
  while (iter < cfg.max_outer_iters) {
    ++iter;
    AntennaSolution ant = solve_antenna(res.powers, streams, sys, cfg, x);
    trace.push_back(ant.latency);
    current = finalize_solution(ant.antenna_x, res.powers, ant.shares, res.mode, streams, sys);
    current.objective = ant.latency;
    if (std::abs(res.objective - ant.latency) <= cfg.outer_tol) break;
    if (iter == cfg.max_outer_iters) break;

    x = ant.antenna_x;
    res = solve_resource_alloc(x, streams, sys, cfg, &res.powers);
    trace.push_back(res.objective);
    current = res;
  }
  current.iterations = iter;
  current.trace = std::move(trace);
  return current;
}

StateSolution carp_jo(const RequestState& state, const Catalog& catalog, const System& sys,
                      const SolverConfig& cfg) {
  return joint_optimize(content_streams(state, catalog), sys, cfg);
}

}  // namespace pinch
