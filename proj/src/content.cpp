#include "pinch/content.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pinch {

void Catalog::validate() const {
  if (sizes.empty()) throw std::invalid_argument("catalog must hold at least one content");
  for (double s : sizes) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("content sizes must be positive");
  }
}

Catalog draw_catalog(Rng& rng, std::size_t count, double min_bits, double max_bits) {
  if (count == 0) throw std::invalid_argument("catalog count must be at least 1");
  if (!(min_bits > 0.0) || !(max_bits >= min_bits)) {
    throw std::invalid_argument("content size range must satisfy 0 < min <= max");
  }
  Catalog c;
  c.sizes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) c.sizes.push_back(uniform(rng, min_bits, max_bits));
  return c;
}

RequestPmf zipf_pmf(std::size_t count, double exponent) {
  if (count == 0) throw std::invalid_argument("zipf_pmf: count must be at least 1");
  if (!(exponent >= 0.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("zipf_pmf: exponent must be finite and >= 0");
  }
  RequestPmf pmf;
  pmf.zipf_exponent = exponent;
  pmf.probs.resize(count);
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    pmf.probs[i] = std::pow(static_cast<double>(i + 1), -exponent);
    total += pmf.probs[i];
  }
  for (double& p : pmf.probs) p /= total;
  return pmf;
}

double state_probability(const RequestState& state, const RequestPmf& pmf) {
  double p = 1.0;
  for (std::size_t m : state.requests) {
    if (m >= pmf.probs.size()) throw std::out_of_range("request index outside catalog");
    p *= pmf.probs[m];
  }
  return p;
}

std::uint64_t state_space_size(std::size_t count, std::size_t num_users) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < num_users; ++k) {
    if (count != 0 && total > std::numeric_limits<std::uint64_t>::max() / count) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= count;
  }
  return total;
}

StateEnumerator::StateEnumerator(std::size_t count, std::size_t num_users)
    : count_(count), digits_(num_users, 0), total_(state_space_size(count, num_users)) {
  if (count == 0 || num_users == 0) throw std::invalid_argument("empty state space");
}

bool StateEnumerator::next(RequestState& out) {
  if (emitted_ == total_) return false;
  if (emitted_ > 0) {
    // Odometer increment, last user varies fastest.
    for (std::size_t k = digits_.size(); k-- > 0;) {
      if (++digits_[k] < count_) break;
      digits_[k] = 0;
    }
  }
  ++emitted_;
  out.requests = digits_;
  return true;
}

StateEnumerator enumerate_states(std::size_t count, std::size_t num_users, std::uint64_t budget) {
  const std::uint64_t total = state_space_size(count, num_users);
  if (total > budget) {
    throw EnumerationBudgetExceeded(std::to_string(count) + "^" + std::to_string(num_users) +
                                    " states exceed the enumeration budget of " +
                                    std::to_string(budget));
  }
  return StateEnumerator(count, num_users);
}

RequestState sample_state(Rng& rng, const RequestPmf& pmf, std::size_t num_users) {
  RequestState s;
  s.requests.resize(num_users);
  for (std::size_t& m : s.requests) {
    const double u = uniform01(rng);
    double acc = 0.0;
    m = pmf.probs.size() - 1;
    for (std::size_t i = 0; i < pmf.probs.size(); ++i) {
      acc += pmf.probs[i];
      if (u < acc) {
        m = i;
        break;
      }
    }
  }
  return s;
}

RequestGroups group_requests(const RequestState& state) {
  RequestGroups g;
  for (std::size_t k = 0; k < state.requests.size(); ++k) {
    const std::size_t m = state.requests[k];
    std::size_t slot = 0;
    while (slot < g.distinct.size() && g.distinct[slot] != m) ++slot;
    if (slot == g.distinct.size()) {
      g.distinct.push_back(m);
      g.cohorts.emplace_back();
    }
    g.cohorts[slot].push_back(k);
  }
  return g;
}

RequestState expand_groups(const RequestGroups& groups, std::size_t num_users) {
  RequestState s;
  s.requests.assign(num_users, 0);
  for (std::size_t i = 0; i < groups.distinct.size(); ++i) {
    for (std::size_t k : groups.cohorts[i]) s.requests.at(k) = groups.distinct[i];
  }
  return s;
}

}  // namespace pinch
