#pragma once

#include <span>
#include <stdexcept>
#include <vector>

// Rate and latency arithmetic for content-aware rate splitting.
// Units: watts, bit/s, bits, seconds. Gains are linear.

namespace pinch {

struct PowerBudget {
  double total = 0.0;         // P_b
  double common = 0.0;        // P_0
  std::vector<double> priv;   // one entry per private stream
  double sic_margin = 0.0;    // theta

  double private_sum() const;
};

struct RateAllocation {
  double common_total = 0.0;          // R_0
  std::vector<double> common_shares;  // r_i
  std::vector<double> priv;           // R_{i,r}
  std::vector<double> content_rates;  // R_i = r_i + R_{i,r}
};

/// Noise floors seen by the common stream and by each private stream.
struct NoiseTerms {
  double common_floor = 0.0;              // sigma^2 / h_0
  std::vector<double> per_content_floor;  // N_i = sigma^2 / min cohort gain
  std::vector<double> interference_cap;   // Psi_i = P_pri + N_i
};

class InfeasiblePowerError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// `cohort_min_gains[i]` is the weakest gain among users served by stream i.
NoiseTerms noise_terms(double noise_power, double worst_gain, std::span<const double> cohort_min_gains,
                       double private_budget);

double common_rate(double common_power, double private_sum, double worst_gain, double noise_power,
                   double bandwidth);

double private_rate_exact(double power, double other_private_sum, double floor, double bandwidth);

/// B log2(psi / (psi - P)): the private rate when the whole private budget is
/// in use. Throws InfeasiblePowerError when P >= psi.
double private_rate_conservative(double power, double psi, double bandwidth);

/// Smallest common power that keeps SIC decodable: P_b/2 + (sigma^2 + theta)/h_0.
double sic_min_common_power(double total_power, double noise_power, double sic_margin,
                            double worst_gain);

/// max_i size_i / rate_i; +inf when a positive size has zero rate.
double state_latency(std::span<const double> sizes, std::span<const double> rates);

/// Weighted sum of per-state latencies.
double average_latency(std::span<const double> latencies, std::span<const double> weights);

}  // namespace pinch
