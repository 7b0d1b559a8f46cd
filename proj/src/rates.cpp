#include "pinch/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace pinch {

double PowerBudget::private_sum() const { return std::accumulate(priv.begin(), priv.end(), 0.0); }

NoiseTerms noise_terms(double noise_power, double worst_gain, std::span<const double> cohort_min_gains,
                       double private_budget) {
  NoiseTerms t;
  t.common_floor = noise_power / worst_gain;
  t.per_content_floor.reserve(cohort_min_gains.size());
  t.interference_cap.reserve(cohort_min_gains.size());
  for (double g : cohort_min_gains) {
    const double floor = noise_power / g;
    t.per_content_floor.push_back(floor);
    t.interference_cap.push_back(private_budget + floor);
  }
  return t;
}

double common_rate(double common_power, double private_sum, double worst_gain, double noise_power,
                   double bandwidth) {
  if (common_power <= 0.0) return 0.0;
  return bandwidth * std::log2(1.0 + common_power / (private_sum + noise_power / worst_gain));
}

double private_rate_exact(double power, double other_private_sum, double floor, double bandwidth) {
  if (power <= 0.0) return 0.0;
  return bandwidth * std::log2(1.0 + power / (other_private_sum + floor));
}

double private_rate_conservative(double power, double psi, double bandwidth) {
  if (!(power < psi)) {
    throw InfeasiblePowerError("private power reaches the interference cap psi");
  }
  if (power <= 0.0) return 0.0;
  // log1p keeps precision when P << psi.
  return bandwidth * std::log1p(power / (psi - power)) / std::numbers::ln2;
}

double sic_min_common_power(double total_power, double noise_power, double sic_margin,
                            double worst_gain) {
  return total_power / 2.0 + (noise_power + sic_margin) / worst_gain;
}

double state_latency(std::span<const double> sizes, std::span<const double> rates) {
  double worst = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (rates[i] <= 0.0) {
      if (sizes[i] > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, sizes[i] / rates[i]);
  }
  return worst;
}

double average_latency(std::span<const double> latencies, std::span<const double> weights) {
  double total = 0.0;
  for (std::size_t i = 0; i < latencies.size(); ++i) {
    if (weights[i] != 0.0) total += weights[i] * latencies[i];
  }
  return total;
}

}  // namespace pinch
