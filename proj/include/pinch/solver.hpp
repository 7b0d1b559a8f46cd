#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "pinch/channel.hpp"
#include "pinch/content.hpp"
#include "pinch/rates.hpp"

namespace pinch {

enum class NomaOrder { ascending_gain, request_order };

struct SolverConfig {
  double mu_tol = 1e-6;        // relative bisection tolerance on mu
  double outer_tol = 1e-4;     // seconds, alternating-loop stopping gap
  double antenna_tol = 1e-2;   // meters
  int p0_grid_points = 32;
  double p0_margin = 1e-6;     // fraction of P_b always left to the private streams
  int max_outer_iters = 30;
  int golden_subintervals = 8;
  int max_alternations = 200;  // power/rate rounds per common-power candidate
  bool sic_fallback = true;    // private-only transmission when SIC cannot be met
  bool joint_polish = true;    // exact joint power/share step after each alternation
  bool multi_start = true;     // also try starting above every user
  NomaOrder noma_order = NomaOrder::ascending_gain;

  void validate() const;
};

/// Everything physical about one deployment: geometry, radio, power, users.
struct System {
  Geometry geom;
  RadioConstants radio;
  double power_budget = 0.0;  // W
  double sic_margin = 0.0;    // W (theta)
  std::vector<Point3> users;

  void validate() const;
};

/// The private streams of one request state. Stream s carries content
/// `content[s]` (`sizes[s]` bits) to the users in `members[s]`.
struct StreamSet {
  std::vector<std::size_t> content;
  std::vector<double> sizes;
  std::vector<std::vector<std::size_t>> members;

  std::size_t size() const { return sizes.size(); }
};

/// One stream per distinct requested content, shared by its cohort.
StreamSet content_streams(const RequestState& state, const Catalog& catalog);
/// One stream per user, even when users request the same content.
StreamSet user_streams(const RequestState& state, const Catalog& catalog);

/// Channel-dependent quantities of a stream set at one antenna position.
struct StreamLink {
  double worst_gain = 0.0;      // h_0 over all users
  std::vector<double> floors;   // N_s = sigma^2 / weakest member gain
  double sic_min = 0.0;         // lower end of the admissible P_0 interval
};

StreamLink stream_link(double antenna_x, const StreamSet& streams, const System& sys);

enum class TransmitMode {
  rate_splitting,  // common stream on, P_0 satisfies the SIC condition
  private_only,    // common stream off (SIC condition unattainable)
};

struct StateSolution {
  double antenna_x = 0.0;
  PowerBudget powers;
  RateAllocation rates;  // exact rates at the final powers
  double latency = std::numeric_limits<double>::infinity();
  /// Latency under the conservative rate model the solvers optimize; never
  /// below `latency`.
  double objective = std::numeric_limits<double>::infinity();
  int iterations = 0;
  /// All of C1-C6 hold. False for private_only solutions and for +inf ones.
  bool feasible = false;
  TransmitMode mode = TransmitMode::rate_splitting;
  StreamSet streams;
  /// Interleaved objective sequence L(1), L'(1), L(2), ... of the outer loop.
  std::vector<double> trace;
};

// Private power control for fixed common shares.

struct PowerFeasibility {
  bool feasible = false;
  std::vector<double> powers;  // minimal powers meeting deadline mu
};

PowerFeasibility private_power_feasible(double mu, std::span<const double> shares,
                                        std::span<const double> psi,
                                        std::span<const double> sizes, double private_budget,
                                        double bandwidth);

struct PrivatePowerSolution {
  std::vector<double> powers;
  double mu = 0.0;      // smallest feasible deadline found (bracket top)
  double mu_low = 0.0;  // infeasible bracket bottom, or mu when the first guess was feasible
  int iterations = 0;
};

/// Bisection on mu over private_power_feasible. Throws InfeasiblePowerError
/// when no finite deadline is feasible.
PrivatePowerSolution solve_private_power(std::span<const double> shares,
                                         std::span<const double> psi,
                                         std::span<const double> sizes, double private_budget,
                                         double bandwidth, double mu_tol);

// Common-rate split for fixed private rates.

struct RateAllocSolution {
  std::vector<double> shares;
  double mu = 0.0;
};

/// min over r of max_i c_i / (r_i + R_{i,r}) s.t. sum r <= R_0, r >= 0.
RateAllocSolution solve_rate_alloc(std::span<const double> private_rates, double common_total,
                                   std::span<const double> sizes);

/// Conservative common rate with the whole private budget counted as interference.
double conservative_common_rate(double common_power, const StreamLink& link, const System& sys);

std::vector<double> conservative_private_rates(std::span<const double> powers, double common_power,
                                               const StreamLink& link, const System& sys);

struct Alternation {
  std::vector<double> powers;
  std::vector<double> shares;
  double mu = std::numeric_limits<double>::infinity();
  std::vector<double> trace;  // mu after every half-step
};

/// Alternates private power control and rate allocation at a fixed P_0 until
/// the relative improvement drops below mu_tol. Without `warm_powers` the
/// first shares are proportional to content size.
Alternation alternate_power_rate(double common_power, const StreamLink& link,
                                 const StreamSet& streams, const System& sys,
                                 const SolverConfig& cfg,
                                 std::span<const double> warm_powers = {});

/// Exact joint power/share allocation at a fixed P_0 under the conservative
/// rate model. For a fixed deadline the best powers sit at a vertex of
/// {0 <= P_i <= P_i^full, sum P <= P_pri}, so the vertices are enumerated;
/// cost grows as 2^n and stream sets above 16 are rejected.
Alternation joint_power_rate(double common_power, const StreamLink& link,
                             const StreamSet& streams, const System& sys, const SolverConfig& cfg);

/// Resource allocation at a fixed antenna position: P_0 grid, golden
/// refinement around the best grid point, and the incumbent powers if given.
StateSolution solve_resource_alloc(double antenna_x, const StreamSet& streams, const System& sys,
                                   const SolverConfig& cfg,
                                   const PowerBudget* incumbent = nullptr);

struct AntennaSolution {
  double antenna_x = 0.0;
  std::vector<double> shares;
  double latency = std::numeric_limits<double>::infinity();
};

/// Antenna position and common shares for fixed powers. Positions where the
/// fixed P_0 violates the SIC condition score +inf.
AntennaSolution solve_antenna(const PowerBudget& powers, const StreamSet& streams,
                              const System& sys, const SolverConfig& cfg, double incumbent_x);

/// Builds a solution with exact rates from a decision tuple.
StateSolution finalize_solution(double antenna_x, const PowerBudget& powers,
                                std::span<const double> shares, TransmitMode mode,
                                const StreamSet& streams, const System& sys);

/// Alternating antenna/resource optimization for any stream set.
StateSolution joint_optimize(const StreamSet& streams, const System& sys, const SolverConfig& cfg);

/// Content-aware rate splitting with antenna positioning.
StateSolution carp_jo(const RequestState& state, const Catalog& catalog, const System& sys,
                      const SolverConfig& cfg);

}  // namespace pinch
