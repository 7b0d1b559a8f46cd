#include "pinch/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pinch {

namespace {

std::string fmt(const char* what, double lhs, const char* op, double rhs) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": " << lhs << ' ' << op << ' ' << rhs;
  return os.str();
}

bool close_rel(double a, double b, double rel) {
  if (a == b) return true;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

AuditReport audit_solution(SchemeId scheme, const StateSolution& sol, const RequestState& state,
                           const System& sys, const SolverConfig& cfg, const AuditTolerances& tol) {
  AuditReport rep;
  auto fail = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };

  const std::size_t n = sol.streams.size();
  const double noise = sys.radio.noise_power;
  const double bandwidth = sys.radio.bandwidth;

  // Stream bookkeeping: every user appears exactly once, with its request.
  std::vector<int> seen(state.num_users(), 0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k : sol.streams.members[s]) {
      if (k >= seen.size()) {
        fail("stream member out of range");
        continue;
      }
      ++seen[k];
      if (state.requests[k] != sol.streams.content[s]) fail("stream content differs from request");
    }
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    fail("streams do not partition the users");
  }
  if (sol.powers.priv.size() != n || sol.rates.common_shares.size() != n ||
      sol.rates.content_rates.size() != n) {
    fail("allocation vectors do not match the stream count");
    return rep;
  }

  // C4
  const double x = sol.antenna_x;
  if (!(x >= 0.0 && x <= sys.geom.waveguide_length)) {
    fail(fmt("C4 antenna position", x, "not in [0,L], L =", sys.geom.waveguide_length));
    return rep;
  }
  if (scheme == SchemeId::fixed_antenna && x != 0.0) fail(fmt("fixed antenna moved", x, "!=", 0.0));

  // Channels from scratch.
  std::vector<double> gains;
  for (const Point3& u : sys.users) gains.push_back(channel_gain(x, u, sys.geom, sys.radio));
  const double h0 = *std::min_element(gains.begin(), gains.end());
  std::vector<double> floors(n);
  std::vector<double> stream_gain(n);
  for (std::size_t s = 0; s < n; ++s) {
    double g = gains[sol.streams.members[s].front()];
    for (std::size_t k : sol.streams.members[s]) g = std::min(g, gains[k]);
    stream_gain[s] = g;
    floors[s] = noise / g;
  }

  // C5, C1
  const double p0 = sol.powers.common;
  double private_sum = 0.0;
  if (p0 < 0.0) fail(fmt("C5 common power", p0, "<", 0.0));
  for (double p : sol.powers.priv) {
    if (p < 0.0) fail(fmt("C5 private power", p, "<", 0.0));
    private_sum += p;
  }
  if (p0 + private_sum > sys.power_budget + tol.power) {
    fail(fmt("C1 total power", p0 + private_sum, ">", sys.power_budget));
  }

  // C6
  double share_sum = 0.0;
  for (double r : sol.rates.common_shares) {
    if (r < 0.0) fail(fmt("C6 common share", r, "<", 0.0));
    share_sum += r;
  }

  std::vector<double> content(n);
  if (scheme == SchemeId::noma) {
    if (p0 != 0.0 || share_sum != 0.0) fail("NOMA solution carries a common stream");
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    if (cfg.noma_order == NomaOrder::ascending_gain) {
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return stream_gain[a] < stream_gain[b]; });
    }
    // Stream at rank t sees the powers of all later ranks, scaled by its own gain.
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t i = order[t];
      double later = 0.0;
      for (std::size_t u = t + 1; u < n; ++u) later += sol.powers.priv[order[u]];
      content[i] = private_rate_exact(sol.powers.priv[i], later, floors[i], bandwidth);
    }
  } else {
    const double r0 = common_rate(p0, private_sum, h0, noise, bandwidth);
    // C2
    if (share_sum > r0 + tol.rate) fail(fmt("C2 common shares", share_sum, ">", r0));
    if (sol.mode == TransmitMode::rate_splitting) {
      // C3
      const double need = sic_min_common_power(sys.power_budget, noise, sys.sic_margin, h0);
      if (p0 < need - tol.power) fail(fmt("C3 common power", p0, "<", need));
    } else if (p0 != 0.0 || share_sum != 0.0) {
      fail("private-only solution carries a common stream");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double others = private_sum - sol.powers.priv[i];
      content[i] = sol.rates.common_shares[i] +
                   private_rate_exact(sol.powers.priv[i], std::max(0.0, others), floors[i], bandwidth);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!close_rel(content[i], sol.rates.content_rates[i], 1e-9)) {
      fail(fmt("reported content rate", sol.rates.content_rates[i], "!=", content[i]));
    }
  }
  const double latency = state_latency(sol.streams.sizes, content);
  if (!close_rel(latency, sol.latency, tol.latency_rel)) {
    fail(fmt("reported latency", sol.latency, "!=", latency));
  }
  return rep;
}

}  // namespace pinch
