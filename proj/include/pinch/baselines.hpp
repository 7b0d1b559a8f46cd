#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pinch/solver.hpp"

namespace pinch {

enum class SchemeId { carp_jo, traditional_rsma, noma, fixed_antenna };

inline constexpr SchemeId kAllSchemes[] = {SchemeId::carp_jo, SchemeId::traditional_rsma,
                                           SchemeId::noma, SchemeId::fixed_antenna};

std::string_view to_string(SchemeId id);
/// Throws std::invalid_argument for unknown names.
SchemeId parse_scheme(std::string_view name);

/// Rate splitting without content grouping: one private stream per user.
StateSolution solve_traditional_rsma(const RequestState& state, const Catalog& catalog,
                                     const System& sys, const SolverConfig& cfg);

/// Content-aware rate splitting with the antenna parked at the feed point.
StateSolution solve_fixed_antenna(const RequestState& state, const Catalog& catalog,
                                  const System& sys, const SolverConfig& cfg);

/// Decoding order of NOMA streams: order[t] is the stream decoded at rank t.
std::vector<std::size_t> noma_decoding_order(std::span<const double> stream_gains, NomaOrder rule);

/// Minimal powers so every stream meets deadline mu under SIC in `order`.
/// Walks from the last-decoded stream back to the first.
std::vector<double> noma_min_powers(double mu, std::span<const double> sizes,
                                    std::span<const double> stream_gains,
                                    std::span<const std::size_t> order, double noise_power,
                                    double bandwidth);

std::vector<double> noma_rates(std::span<const double> powers, std::span<const double> stream_gains,
                               std::span<const std::size_t> order, double noise_power,
                               double bandwidth);

struct NomaPowerSolution {
  std::vector<double> powers;
  std::vector<std::size_t> order;
  double mu = 0.0;
};

/// Max-min latency power split by bisection on mu.
NomaPowerSolution solve_noma_power(std::span<const double> sizes,
                                   std::span<const double> stream_gains, double power_budget,
                                   double noise_power, double bandwidth, double mu_tol,
                                   NomaOrder rule);

/// Weakest member gain of every stream at `antenna_x`.
std::vector<double> stream_gains(double antenna_x, const StreamSet& streams, const System& sys);

/// Superposition coding with SIC, one stream per distinct content, no common
/// stream. Antenna placed by the same segmented golden-section search.
StateSolution solve_noma(const RequestState& state, const Catalog& catalog, const System& sys,
                         const SolverConfig& cfg);

StateSolution solve_scheme(SchemeId id, const RequestState& state, const Catalog& catalog,
                           const System& sys, const SolverConfig& cfg);

/// Sum over users of the rate of the content each user receives. Throws
/// std::invalid_argument for solutions with infinite latency.
double sum_rate(const StateSolution& solution, const RequestState& state);

}  // namespace pinch
