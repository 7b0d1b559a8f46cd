#pragma once

#include <span>
#include <vector>

#include "pinch/baselines.hpp"

namespace pinch {

/// One independent per-state solve. Pointers must outlive the batch call.
struct SolveTask {
  SchemeId scheme = SchemeId::carp_jo;
  const RequestState* state = nullptr;
  const Catalog* catalog = nullptr;
  const System* system = nullptr;
};

/// Reference implementation: solves tasks in order on the calling thread.
std::vector<StateSolution> solve_batch_serial(std::span<const SolveTask> tasks,
                                              const SolverConfig& cfg);

/// OpenMP version. Each result slot is written by exactly one thread, so the
/// output is identical to solve_batch_serial for any thread count. The first
/// exception (lowest task index) is rethrown after the parallel region.
std::vector<StateSolution> solve_batch_parallel(std::span<const SolveTask> tasks,
                                                const SolverConfig& cfg);

}  // namespace pinch
