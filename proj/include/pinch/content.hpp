#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pinch/random.hpp"

namespace pinch {

/// Content library; sizes in bits.
struct Catalog {
  std::vector<double> sizes;

  std::size_t count() const { return sizes.size(); }
  void validate() const;
};

/// Sizes uniform on [min_bits, max_bits].
Catalog draw_catalog(Rng& rng, std::size_t count, double min_bits, double max_bits);

/// Per-user request distribution over content ranks.
struct RequestPmf {
  std::vector<double> probs;
  double zipf_exponent = 0.0;
};

RequestPmf zipf_pmf(std::size_t count, double exponent);

/// Content index requested by each user.
struct RequestState {
  std::vector<std::size_t> requests;

  std::size_t num_users() const { return requests.size(); }
  auto operator<=>(const RequestState&) const = default;
};

/// Distinct requested contents (first-appearance order) and, for each, the
/// users asking for it.
struct RequestGroups {
  std::vector<std::size_t> distinct;
  std::vector<std::vector<std::size_t>> cohorts;
};

/// Product of per-user request probabilities (users i.i.d. under `pmf`).
double state_probability(const RequestState& state, const RequestPmf& pmf);

class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexicographic walk over every request state in {0..count-1}^num_users.
class StateEnumerator {
 public:
  StateEnumerator(std::size_t count, std::size_t num_users);

  /// Total number of states, count^num_users.
  std::uint64_t size() const { return total_; }
  /// Writes the next state into `out`; false once exhausted.
  bool next(RequestState& out);

 private:
  std::size_t count_;
  std::vector<std::size_t> digits_;
  std::uint64_t total_ = 1;
  std::uint64_t emitted_ = 0;
};

/// Number of states count^num_users, saturating at UINT64_MAX.
std::uint64_t state_space_size(std::size_t count, std::size_t num_users);

/// Throws EnumerationBudgetExceeded when count^num_users > budget; callers fall
/// back to sampling in that case.
StateEnumerator enumerate_states(std::size_t count, std::size_t num_users, std::uint64_t budget);

RequestState sample_state(Rng& rng, const RequestPmf& pmf, std::size_t num_users);

RequestGroups group_requests(const RequestState& state);

/// Inverse of group_requests.
RequestState expand_groups(const RequestGroups& groups, std::size_t num_users);

}  // namespace pinch
