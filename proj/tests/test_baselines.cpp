#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "pinch/audit.hpp"
#include "support.hpp"

using namespace pinch;
using support::rel_diff;

TEST_SUITE("baselines") {

TEST_CASE("scheme names") {
  for (SchemeId id : kAllSchemes) CHECK(parse_scheme(to_string(id)) == id);
  CHECK_THROWS_AS(parse_scheme("sdma"), std::invalid_argument);
}

TEST_CASE("traditional RSMA coincides with content-aware RSMA on distinct requests") {
  SolverConfig cfg;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const System sys = support::random_system(seed, 4);
    const Catalog cat = support::random_catalog(seed, 30);
    RequestState state{{seed % 30, (seed + 3) % 30, (seed + 11) % 30, (seed + 17) % 30}};
    const double a = carp_jo(state, cat, sys, cfg).latency;
    const double b = solve_traditional_rsma(state, cat, sys, cfg).latency;
    CHECK(rel_diff(b, a) <= 1e-6);
  }
}

TEST_CASE("traditional RSMA with one user is identical") {
  SolverConfig cfg;
  const System sys = support::random_system(3, 1);
  const Catalog cat = support::random_catalog(3, 30);
  const RequestState state{{4}};
  CHECK(carp_jo(state, cat, sys, cfg).latency == solve_traditional_rsma(state, cat, sys, cfg).latency);
}

TEST_CASE("duplicate requests favour content grouping") {
  SolverConfig cfg;
  double carp = 0.0;
  double trad = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const System sys = support::random_system(seed, 4);
    const Catalog cat = support::random_catalog(seed, 30);
    const RequestState state{{2, 2, 2, 2}};
    carp += carp_jo(state, cat, sys, cfg).latency;
    trad += solve_traditional_rsma(state, cat, sys, cfg).latency;
  }
  CHECK(trad >= carp);
}

TEST_CASE("NOMA with a single content is one dedicated stream") {
  SolverConfig cfg;
  const System sys = support::make_system({{40.0, 10.0, 0.0}, {45.0, -8.0, 0.0}});
  const Catalog cat{{6e6}};
  const StateSolution s = solve_noma({{0, 0}}, cat, sys, cfg);
  const double g = stream_gains(s.antenna_x, s.streams, sys)[0];
  const double rate = 1e6 * std::log2(1 + sys.power_budget * g / sys.radio.noise_power);
  CHECK(s.latency == doctest::Approx(6e6 / rate).epsilon(1e-6));
}

TEST_CASE("NOMA balances equal streams") {
  const double gains[2] = {1e-9, 1e-9};
  const double sizes[2] = {5e6, 5e6};
  const NomaPowerSolution p =
      solve_noma_power(sizes, gains, 0.1, 1e-12, 1e6, 1e-9, NomaOrder::ascending_gain);
  const std::vector<double> r = noma_rates(p.powers, gains, p.order, 1e-12, 1e6);
  CHECK(sizes[0] / r[0] == doctest::Approx(sizes[1] / r[1]).epsilon(1e-6));

  // Grid over the power simplex.
  double best = oracle::kInf;
  for (int k = 0; k <= 10000; ++k) {
    const double p0 = 0.1 * k / 10000.0;
    const double pw[2] = {p0, 0.1 - p0};
    const std::vector<double> rr = noma_rates(pw, gains, p.order, 1e-12, 1e6);
    best = std::min(best, oracle::max_latency(sizes, rr));
  }
  CHECK(rel_diff(p.mu, best) <= 1e-3);
}

TEST_CASE("NOMA minimal powers meet the deadline exactly") {
  Rng rng = make_rng(8, {200});
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 4;
    std::vector<double> gains(n), sizes(n);
    for (std::size_t i = 0; i < n; ++i) {
      gains[i] = uniform(rng, 1e-10, 1e-8);
      sizes[i] = uniform(rng, 1e6, 20e6);
    }
    const auto order = noma_decoding_order(gains, NomaOrder::ascending_gain);
    for (std::size_t k = 1; k < n; ++k) CHECK(gains[order[k - 1]] <= gains[order[k]]);
    const double mu = uniform(rng, 1.0, 30.0);
    const auto p = noma_min_powers(mu, sizes, gains, order, 1e-12, 1e6);
    const auto r = noma_rates(p, gains, order, 1e-12, 1e6);
    for (std::size_t i = 0; i < n; ++i) CHECK(sizes[i] / r[i] == doctest::Approx(mu).epsilon(1e-9));
  }
}

TEST_CASE("NOMA is label equivariant") {
  SolverConfig cfg;
  const System sys = support::random_system(5, 4);
  const Catalog cat = support::random_catalog(5, 6);
  const RequestState state{{0, 1, 1, 3}};
  // Relabel contents by a permutation, keeping sizes attached.
  const std::vector<std::size_t> perm{4, 2, 5, 0, 1, 3};
  Catalog relabelled{std::vector<double>(6)};
  for (std::size_t m = 0; m < 6; ++m) relabelled.sizes[perm[m]] = cat.sizes[m];
  RequestState moved;
  for (std::size_t m : state.requests) moved.requests.push_back(perm[m]);

  const StateSolution a = solve_noma(state, cat, sys, cfg);
  const StateSolution b = solve_noma(moved, relabelled, sys, cfg);
  CHECK(a.latency == doctest::Approx(b.latency).epsilon(1e-12));
  CHECK(a.antenna_x == doctest::Approx(b.antenna_x).epsilon(1e-12));
  for (std::size_t s = 0; s < a.streams.size(); ++s) {
    CHECK(perm[a.streams.content[s]] == b.streams.content[s]);
    CHECK(a.powers.priv[s] == doctest::Approx(b.powers.priv[s]).epsilon(1e-12));
  }
}

TEST_CASE("every scheme passes its audit") {
  SolverConfig cfg;
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const System sys = support::random_system(seed, 4, 15.0 + seed % 11);
    const Catalog cat = support::random_catalog(seed, 30);
    const RequestState state = support::random_state(seed, 30, 4, 1.0);
    for (SchemeId id : kAllSchemes) {
      const StateSolution s = solve_scheme(id, state, cat, sys, cfg);
      const AuditReport rep = audit_solution(id, s, state, sys, cfg);
      CHECK_MESSAGE(rep.ok(), to_string(id), ": ", (rep.ok() ? "" : rep.violations.front()));
    }
  }
}

TEST_CASE("audit catches violations") {
  SolverConfig cfg;
  const System sys = support::random_system(2, 4);
  const Catalog cat = support::random_catalog(2, 30);
  const RequestState state{{0, 1, 0, 2}};
  StateSolution s = carp_jo(state, cat, sys, cfg);
  REQUIRE(audit_solution(SchemeId::carp_jo, s, state, sys, cfg).ok());

  StateSolution over = s;
  over.powers.priv[0] += sys.power_budget;
  CHECK_FALSE(audit_solution(SchemeId::carp_jo, over, state, sys, cfg).ok());

  StateSolution shares = s;
  shares.rates.common_shares[0] += 2 * s.rates.common_total + 1.0;
  CHECK_FALSE(audit_solution(SchemeId::carp_jo, shares, state, sys, cfg).ok());

  StateSolution sic = s;
  sic.powers.common = 0.1 * sys.power_budget;
  CHECK_FALSE(audit_solution(SchemeId::carp_jo, sic, state, sys, cfg).ok());

  StateSolution moved = s;
  moved.antenna_x = 1.0;
  CHECK_FALSE(audit_solution(SchemeId::fixed_antenna, moved, state, sys, cfg).ok());
}

TEST_CASE("fixed antenna sits at the feed point") {
  SolverConfig cfg;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const System sys = support::random_system(seed, 4);
    const Catalog cat = support::random_catalog(seed, 30);
    const StateSolution s = solve_fixed_antenna(support::random_state(seed, 30, 4), cat, sys, cfg);
    CHECK(s.antenna_x == 0.0);
  }
}

TEST_CASE("fixed antenna near and far clusters") {
  SolverConfig cfg;
  Geometry g;
  int far_worse = 0;
  double near_fixed = 0.0;
  double near_carp = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = make_rng(seed, {201});
    std::vector<Point3> near, far;
    for (int k = 0; k < 4; ++k) {
      const double r = uniform(rng, 0.0, 5.0);
      const double phi = uniform(rng, -1.5707963, 1.5707963);
      near.push_back({r * std::cos(phi), r * std::sin(phi), 0.0});
      far.push_back({g.dx - uniform(rng, 0.0, 5.0), uniform(rng, -5.0, 5.0), 0.0});
    }
    const Catalog cat = support::random_catalog(seed, 30);
    const RequestState state = support::random_state(seed, 30, 4);
    {
      const System sys = support::make_system(near);
      near_carp += carp_jo(state, cat, sys, cfg).latency;
      near_fixed += solve_fixed_antenna(state, cat, sys, cfg).latency;
    }
    const System sys = support::make_system(far);
    far_worse += solve_fixed_antenna(state, cat, sys, cfg).latency > carp_jo(state, cat, sys, cfg).latency;
  }
  CHECK(far_worse == 100);
  // Paired mean; single layouts can differ by more.
  CHECK(near_fixed <= near_carp * 1.05);
}

TEST_CASE("sum rate") {
  SolverConfig cfg;
  SUBCASE("single user") {
    const System sys = support::random_system(1, 1);
    const Catalog cat = support::random_catalog(1, 30);
    const RequestState state{{7}};
    const StateSolution s = carp_jo(state, cat, sys, cfg);
    CHECK(sum_rate(s, state) == doctest::Approx(s.rates.content_rates[0]));
  }
  SUBCASE("shared content counts per user") {
    StateSolution s;
    s.latency = 1.0;
    s.streams.content = {0};
    s.streams.sizes = {3.0};
    s.streams.members = {{0, 1}};
    s.rates.content_rates = {3.0};
    CHECK(sum_rate(s, {{0, 0}}) == doctest::Approx(6.0));
  }
  SUBCASE("regrouping identity") {
    const System sys = support::random_system(4, 4);
    const Catalog cat = support::random_catalog(4, 30);
    const RequestState state{{1, 3, 1, 1}};
    const StateSolution s = carp_jo(state, cat, sys, cfg);
    double expect = 0.0;
    for (std::size_t i = 0; i < s.streams.size(); ++i) {
      expect += s.streams.members[i].size() * s.rates.content_rates[i];
    }
    CHECK(sum_rate(s, state) == doctest::Approx(expect));
  }
  SUBCASE("infeasible solution") {
    StateSolution s;
    CHECK_THROWS_AS(sum_rate(s, {{0}}), std::invalid_argument);
  }
}

}  // TEST_SUITE
