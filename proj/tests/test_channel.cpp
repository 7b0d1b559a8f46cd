#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pinch/channel.hpp"
#include "pinch/golden.hpp"

using namespace pinch;

namespace {

const RadioConstants kRadio = RadioConstants::make(28e9, 1e6, 1e-12);

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("reference gain at 28 GHz") {
  const double lambda = 3e8 / 28e9;
  CHECK(kRadio.wavelength == doctest::Approx(lambda).epsilon(1e-15));
  CHECK(kRadio.wavelength == doctest::Approx(1.0714e-2).epsilon(1e-4));
  CHECK(kRadio.ref_gain == doctest::Approx(lambda * lambda / (16.0 * std::numbers::pi * std::numbers::pi)));
  CHECK(kRadio.ref_gain == doctest::Approx(7.27e-7).epsilon(1e-3));
}

TEST_CASE("gain directly below the antenna is eta / d^2") {
  Geometry g;
  const Point3 user{10.0, 0.0, 0.0};
  CHECK(channel_gain(10.0, user, g, kRadio) == doctest::Approx(kRadio.ref_gain / 9.0));
  CHECK(channel_gain(10.0, user, g, kRadio) == doctest::Approx(8.08e-8).epsilon(1e-3));
}

TEST_CASE("gain follows inverse squared distance") {
  Geometry g;
  const Point3 user{30.0, 4.0, 0.0};
  const double d2 = 20.0 * 20.0 + 4.0 * 4.0 + 3.0 * 3.0;
  CHECK(channel_gain(10.0, user, g, kRadio) == doctest::Approx(kRadio.ref_gain / d2));
}

TEST_CASE("symmetric users see equal gains") {
  Geometry g;
  const double a = channel_gain(50.0, {40.0, 7.0, 0.0}, g, kRadio);
  const double b = channel_gain(50.0, {60.0, -7.0, 0.0}, g, kRadio);
  CHECK(a == doctest::Approx(b).epsilon(1e-15));
}

TEST_CASE("antenna off the waveguide is rejected") {
  Geometry g;
  CHECK_THROWS_AS(channel_gain(-0.1, {0.0, 0.0, 0.0}, g, kRadio), std::domain_error);
  CHECK_THROWS_AS(channel_gain(120.1, {0.0, 0.0, 0.0}, g, kRadio), std::domain_error);
  CHECK_NOTHROW(channel_gain(120.0, {0.0, 0.0, 0.0}, g, kRadio));
}

TEST_CASE("geometry validation") {
  Geometry g;
  g.dx = -1.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("worst user") {
  Geometry g;
  SUBCASE("single user") {
    const std::vector<Point3> u{{5.0, 1.0, 0.0}};
    const ChannelState cs = channel_state(5.0, u, g, kRadio);
    CHECK(cs.worst_user == 0);
    CHECK(cs.worst_gain == cs.gains[0]);
  }
  SUBCASE("farther user is worst") {
    // Distances 3 m and 5 m from the antenna at x = 0.
    const std::vector<Point3> u{{0.0, 0.0, 0.0}, {4.0, 0.0, 0.0}};
    const ChannelState cs = channel_state(0.0, u, g, kRadio);
    CHECK(cs.worst_user == 1);
    CHECK(cs.worst_gain == doctest::Approx(kRadio.ref_gain / 25.0));
  }
  SUBCASE("ties go to the lowest index") {
    const std::vector<Point3> u{{40.0, 5.0, 0.0}, {60.0, 5.0, 0.0}};
    CHECK(channel_state(50.0, u, g, kRadio).worst_user == 0);
  }
  SUBCASE("random layouts: worst gain bounds every gain") {
    for (std::uint64_t s = 0; s < 50; ++s) {
      Rng rng = make_rng(s, {7});
      const auto u = place_users(rng, g, 4);
      const ChannelState cs = channel_state(uniform(rng, 0.0, 120.0), u, g, kRadio);
      for (double h : cs.gains) CHECK(cs.worst_gain <= h);
      CHECK(cs.worst_gain == cs.gains[cs.worst_user]);
    }
  }
}

TEST_CASE("user placement") {
  Geometry g;
  Rng a = make_rng(3, {2, 0});
  Rng b = make_rng(3, {2, 0});
  const auto ua = place_users(a, g, 1000);
  const auto ub = place_users(b, g, 1000);
  for (std::size_t k = 0; k < ua.size(); ++k) {
    CHECK(ua[k].x == ub[k].x);
    CHECK(ua[k].y == ub[k].y);
    CHECK(ua[k].x >= 0.0);
    CHECK(ua[k].x <= g.dx);
    CHECK(std::abs(ua[k].y) <= g.dy / 2);
    CHECK(ua[k].z == 0.0);
  }
  Rng c = make_rng(3, {2, 0});
  const auto prefix = place_users(c, g, 10);
  for (std::size_t k = 0; k < prefix.size(); ++k) CHECK(prefix[k].x == ua[k].x);
}

TEST_CASE("user placement mean") {
  Geometry g;
  Rng rng = make_rng(11, {2, 0});
  const auto u = place_users(rng, g, 100000);
  double mx = 0.0;
  for (const auto& p : u) mx += p.x;
  mx /= static_cast<double>(u.size());
  CHECK(std::abs(mx - g.dx / 2) <= 0.01 * g.dx / 2);
}

TEST_CASE("position maximizing the worst gain") {
  Geometry g;
  const std::vector<Point3> u{{20.0, 3.0, 0.0}, {90.0, -10.0, 0.0}, {60.0, 15.0, 0.0}};
  const double x = max_worst_gain_position(u, g);
  double best_x = 0.0;
  double best = -1.0;
  for (int i = 0; i <= 100000; ++i) {
    const double xs = g.waveguide_length * i / 100000.0;
    const double h = channel_state(xs, u, g, kRadio).worst_gain;
    if (h > best) {
      best = h;
      best_x = xs;
    }
  }
  CHECK(std::abs(x - best_x) < 1e-2);
}

TEST_CASE("golden section on a quadratic") {
  int calls = 0;
  auto f = [&](double x) {
    ++calls;
    return (x - 37.3) * (x - 37.3);
  };
  const LineMinimum m = golden_section_minimize(f, 30.0, 45.0, 1e-2);
  CHECK(std::abs(m.x - 37.3) <= 1e-2);
  CHECK(calls <= 40);
  CHECK(m.evaluations == calls);

  calls = 0;
  const LineMinimum s = segmented_golden_minimize(f, 0.0, 120.0, 8, 1e-2);
  CHECK(std::abs(s.x - 37.3) <= 1e-2);
  CHECK(calls <= 9 + 8 * 40);
}

TEST_CASE("segmented search escapes a local minimum") {
  // Two wells; the deeper one sits in the last segment.
  auto f = [](double x) { return std::min((x - 10.0) * (x - 10.0), (x - 100.0) * (x - 100.0) - 5.0); };
  const LineMinimum s = segmented_golden_minimize(f, 0.0, 120.0, 8, 1e-3);
  CHECK(std::abs(s.x - 100.0) <= 1e-3);
}

}  // TEST_SUITE
