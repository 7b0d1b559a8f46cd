#pragma once

#include <string>
#include <vector>

#include "pinch/baselines.hpp"

namespace pinch {

struct AuditTolerances {
  double power = 1e-12;    // W, C1 and C3
  double rate = 1e-9;      // bit/s, C2
  double latency_rel = 1e-9;
};

struct AuditReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Recomputes channels, rates, and latency of `sol` from scratch and checks the
/// constraint set of `scheme`:
///   rate-splitting schemes: C1, C2, C3 (when the common stream is on), C4-C6;
///   NOMA: C1, C4, C5, no common stream, SIC-consistent rates.
/// Also checks that the streams cover `state` and that the reported latency
/// matches the recomputed one.
AuditReport audit_solution(SchemeId scheme, const StateSolution& sol, const RequestState& state,
                           const System& sys, const SolverConfig& cfg,
                           const AuditTolerances& tol = {});

}  // namespace pinch
