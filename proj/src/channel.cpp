#include "pinch/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pinch/golden.hpp"

namespace pinch {

void Geometry::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
  };
  positive(dx, "dx");
  positive(dy, "dy");
  positive(antenna_height, "antenna_height");
  positive(waveguide_length, "waveguide_length");
}

RadioConstants RadioConstants::make(double carrier_freq_hz, double bandwidth_hz,
                                    double noise_power_w) {
  if (!(carrier_freq_hz > 0.0) || !(bandwidth_hz > 0.0) || !(noise_power_w > 0.0)) {
    throw std::invalid_argument("radio constants must be positive");
  }
  RadioConstants r;
  r.carrier_freq = carrier_freq_hz;
  r.wavelength = kSpeedOfLight / carrier_freq_hz;
  r.ref_gain = r.wavelength * r.wavelength / (16.0 * std::numbers::pi * std::numbers::pi);
  r.bandwidth = bandwidth_hz;
  r.noise_power = noise_power_w;
  return r;
}

double channel_gain(double antenna_x, const Point3& user, const Geometry& geom,
                    const RadioConstants& radio) {
  if (!(antenna_x >= 0.0 && antenna_x <= geom.waveguide_length)) {
    throw std::domain_error("antenna position " + std::to_string(antenna_x) +
                            " outside waveguide [0, " + std::to_string(geom.waveguide_length) +
                            "]");
  }
  const double ddx = antenna_x - user.x;
  const double ddz = geom.antenna_height - user.z;
  const double dist2 = ddx * ddx + user.y * user.y + ddz * ddz;
  return radio.ref_gain / dist2;
}

ChannelState channel_state(double antenna_x, std::span<const Point3> users, const Geometry& geom,
                           const RadioConstants& radio) {
  if (users.empty()) throw std::invalid_argument("channel_state needs at least one user");
  ChannelState cs;
  cs.gains.reserve(users.size());
  for (const Point3& u : users) cs.gains.push_back(channel_gain(antenna_x, u, geom, radio));
  auto it = std::min_element(cs.gains.begin(), cs.gains.end());
  cs.worst_gain = *it;
  cs.worst_user = static_cast<std::size_t>(it - cs.gains.begin());
  return cs;
}

std::vector<Point3> place_users(Rng& rng, const Geometry& geom, std::size_t num_users) {
  if (num_users == 0) throw std::invalid_argument("num_users must be at least 1");
  std::vector<Point3> users(num_users);
  for (Point3& u : users) {
    u.x = uniform(rng, 0.0, geom.dx);
    u.y = uniform(rng, -geom.dy / 2.0, geom.dy / 2.0);
    u.z = 0.0;
  }
  return users;
}

double max_worst_gain_position(std::span<const Point3> users, const Geometry& geom) {
  // max_k (x - x_k)^2 + y_k^2 is convex in x, so golden-section is exact here.
  auto worst_dist2 = [&](double x) {
    double m = 0.0;
    for (const Point3& u : users) m = std::max(m, (x - u.x) * (x - u.x) + u.y * u.y);
    return m;
  };
  return golden_section_minimize(worst_dist2, 0.0, geom.waveguide_length,
                                 1e-9 * geom.waveguide_length, 400)
      .x;
}

}  // namespace pinch
