#pragma once

// Brute-force references for the solver tests. Nothing here calls into the
// solver code; rates are written out from their definitions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Calls f(parts) for every split of `steps` units into parts.size() slots.
inline void for_each_composition(int steps, std::vector<int>& parts, std::size_t slot,
                                 const std::function<void(const std::vector<int>&)>& f) {
  if (slot + 1 == parts.size()) {
    parts[slot] = steps;
    f(parts);
    return;
  }
  for (int k = 0; k <= steps; ++k) {
    parts[slot] = k;
    for_each_composition(steps - k, parts, slot + 1, f);
  }
}

inline double max_latency(std::span<const double> sizes, std::span<const double> rates) {
  double mu = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    mu = std::max(mu, rates[i] > 0.0 ? sizes[i] / rates[i] : kInf);
  }
  return mu;
}

// min over shares on the grid {R0 * k / steps} with sum = R0.
inline double rate_alloc(std::span<const double> private_rates, double common_total,
                         std::span<const double> sizes, int steps) {
  const std::size_t n = sizes.size();
  std::vector<int> parts(n);
  std::vector<double> rates(n);
  double best = kInf;
  for_each_composition(steps, parts, 0, [&](const std::vector<int>& p) {
    for (std::size_t i = 0; i < n; ++i) rates[i] = private_rates[i] + common_total * p[i] / steps;
    best = std::min(best, max_latency(sizes, rates));
  });
  return best;
}

// Private rate with the whole private budget counted: B log2(psi / (psi - P)).
inline double psi_rate(double p, double psi, double bandwidth) {
  return bandwidth * std::log2(psi / (psi - p));
}

// min over private powers on the grid {budget * k / steps} with sum = budget.
inline double private_power(std::span<const double> shares, std::span<const double> psi,
                            std::span<const double> sizes, double budget, double bandwidth,
                            int steps) {
  const std::size_t n = sizes.size();
  std::vector<int> parts(n);
  std::vector<double> rates(n);
  double best = kInf;
  for_each_composition(steps, parts, 0, [&](const std::vector<int>& p) {
    for (std::size_t i = 0; i < n; ++i) {
      rates[i] = shares[i] + psi_rate(budget * p[i] / steps, psi[i], bandwidth);
    }
    best = std::min(best, max_latency(sizes, rates));
  });
  return best;
}

// Two-stream rate splitting at one antenna position, spelled out from the
// definitions with exact rates and the full budget spent.
struct TwoStreamLink {
  double worst_gain;  // over all users
  double gain[2];     // weakest member of each stream
  double noise;
  double bandwidth;
  double budget;
  double sic_min;     // smallest admissible P_0
  double size[2];
};

inline double two_stream_latency(const TwoStreamLink& l, double p0, double alpha, double beta) {
  const double ppri = l.budget - p0;
  const double p[2] = {alpha * ppri, (1.0 - alpha) * ppri};
  const double r0 = l.bandwidth * std::log2(1.0 + p0 / (ppri + l.noise / l.worst_gain));
  const double share[2] = {beta * r0, (1.0 - beta) * r0};
  double mu = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double priv =
        l.bandwidth * std::log2(1.0 + p[i] / (p[1 - i] + l.noise / l.gain[i]));
    const double rate = share[i] + priv;
    mu = std::max(mu, rate > 0.0 ? l.size[i] / rate : kInf);
  }
  return mu;
}

struct GridPoint {
  double value = kInf;
  double p0 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

// 3-D grid over (P_0, private split, share split) with `n` points per axis,
// then `passes - 1` more grids of the same size, each around the best cell
// of the one before. The first P_0 axis also carries n log-spaced points
// close to P_b, where optima with a tiny private budget sit.
inline GridPoint two_stream_grid(const TwoStreamLink& l, int n, int passes = 4) {
  GridPoint best;
  const double top = l.budget * (1.0 - 1e-9);
  if (l.sic_min > top) return best;
  const double full_lo[3] = {l.sic_min, 0.0, 0.0};
  const double full_hi[3] = {top, 1.0, 1.0};
  double lo[3] = {full_lo[0], full_lo[1], full_lo[2]};
  double hi[3] = {full_hi[0], full_hi[1], full_hi[2]};
  for (int pass = 0; pass < passes; ++pass) {
    double step[3];
    for (int a = 0; a < 3; ++a) step[a] = (hi[a] - lo[a]) / (n - 1);
    std::vector<double> p0s;
    for (int i = 0; i < n; ++i) p0s.push_back(lo[0] + i * step[0]);
    if (pass == 0) {
      const double span = l.budget - l.sic_min;
      for (int i = 0; i < n; ++i) {
        const double ppri = span * std::pow(1e-8, 1.0 - double(i) / (n - 1));
        p0s.push_back(std::clamp(l.budget - ppri, l.sic_min, top));
      }
    }
    GridPoint pass_best = best;
    double best_step0 = step[0];
    for (std::size_t i = 0; i < p0s.size(); ++i) {
      const double p0 = p0s[i];
      for (int j = 0; j < n; ++j) {
        const double alpha = lo[1] + j * step[1];
        for (int k = 0; k < n; ++k) {
          const double beta = lo[2] + k * step[2];
          const double v = two_stream_latency(l, p0, alpha, beta);
          if (v < pass_best.value) {
            pass_best = {v, p0, alpha, beta};
            // A log point refines on the scale of its own distance to P_b.
            best_step0 = i < static_cast<std::size_t>(n) ? step[0] : 0.5 * (l.budget - p0);
          }
        }
      }
    }
    best = pass_best;
    const double centre[3] = {best.p0, best.alpha, best.beta};
    step[0] = std::min(step[0], best_step0);
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::max(full_lo[a], centre[a] - step[a]);
      hi[a] = std::min(full_hi[a], centre[a] + step[a]);
    }
  }
  return best;
}

}  // namespace oracle
