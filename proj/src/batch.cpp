#include "pinch/batch.hpp"

#include <exception>

namespace pinch {

std::vector<StateSolution> solve_batch_serial(std::span<const SolveTask> tasks,
                                              const SolverConfig& cfg) {
  std::vector<StateSolution> out;
  out.reserve(tasks.size());
  for (const SolveTask& t : tasks) {
    out.push_back(solve_scheme(t.scheme, *t.state, *t.catalog, *t.system, cfg));
  }
  return out;
}

std::vector<StateSolution> solve_batch_parallel(std::span<const SolveTask> tasks,
                                                const SolverConfig& cfg) {
  const long n = static_cast<long>(tasks.size());
  std::vector<StateSolution> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());

  // Per-state cost varies a lot with the number of distinct streams.
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    const SolveTask& t = tasks[static_cast<std::size_t>(i)];
    try {
      out[static_cast<std::size_t>(i)] = solve_scheme(t.scheme, *t.state, *t.catalog, *t.system, cfg);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace pinch
