#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pinch/random.hpp"

namespace pinch {

inline constexpr double kSpeedOfLight = 3.0e8;  // m/s

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Service area and waveguide. The waveguide runs along the x axis at height
/// `antenna_height`, from the feed point (0, 0, d) to (L, 0, d).
struct Geometry {
  double dx = 120.0;
  double dy = 40.0;
  double antenna_height = 3.0;
  double waveguide_length = 120.0;

  void validate() const;
};

struct RadioConstants {
  double carrier_freq = 28e9;  // Hz
  double wavelength = 0.0;     // m
  double ref_gain = 0.0;       // linear power gain at 1 m
  double bandwidth = 1e6;      // Hz
  double noise_power = 1e-12;  // W

  /// Derives wavelength and the 1 m reference gain lambda^2 / (16 pi^2).
  static RadioConstants make(double carrier_freq_hz, double bandwidth_hz, double noise_power_w);
};

struct ChannelState {
  std::vector<double> gains;
  double worst_gain = 0.0;
  std::size_t worst_user = 0;
};

/// Free-space LoS power gain from the pinching antenna at (antenna_x, 0, d)
/// to `user`. Throws std::domain_error if antenna_x is off the waveguide.
double channel_gain(double antenna_x, const Point3& user, const Geometry& geom,
                    const RadioConstants& radio);

/// Gains of every user plus the worst one (ties go to the lowest index).
ChannelState channel_state(double antenna_x, std::span<const Point3> users, const Geometry& geom,
                           const RadioConstants& radio);

/// Users uniform on [0, D_x] x [-D_y/2, D_y/2] at ground level.
/// Each user consumes exactly two draws, so a prefix of a longer layout
/// equals the shorter layout drawn from the same stream.
std::vector<Point3> place_users(Rng& rng, const Geometry& geom, std::size_t num_users);

/// Antenna position on [0, L] that maximizes the worst user's gain.
double max_worst_gain_position(std::span<const Point3> users, const Geometry& geom);

}  // namespace pinch
