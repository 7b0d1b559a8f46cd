#pragma once

#include <cmath>
#include <vector>

#include "pinch/baselines.hpp"
#include "pinch/random.hpp"

namespace support {

inline pinch::System make_system(std::vector<pinch::Point3> users, double budget_dbm = 25.0) {
  pinch::System s;
  s.radio = pinch::RadioConstants::make(28e9, 1e6, 1e-12);
  s.power_budget = 1e-3 * std::pow(10.0, budget_dbm / 10.0);
  s.sic_margin = 1e-12;
  s.users = std::move(users);
  return s;
}

inline pinch::System random_system(std::uint64_t seed, std::size_t users, double budget_dbm = 25.0) {
  pinch::Rng rng = pinch::make_rng(seed, {42});
  pinch::Geometry g;
  return make_system(pinch::place_users(rng, g, users), budget_dbm);
}

inline pinch::Catalog random_catalog(std::uint64_t seed, std::size_t count) {
  pinch::Rng rng = pinch::make_rng(seed, {43});
  return pinch::draw_catalog(rng, count, 1e6, 20e6);
}

inline pinch::RequestState random_state(std::uint64_t seed, std::size_t contents, std::size_t users,
                                        double exponent = 0.5) {
  pinch::Rng rng = pinch::make_rng(seed, {44});
  return pinch::sample_state(rng, pinch::zipf_pmf(contents, exponent), users);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace support
