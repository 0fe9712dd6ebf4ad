#include "qrfsim/event/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "qrfsim/errors.hpp"

namespace qrfsim::event {

EventTimeDistribution event_time_distribution(const frame::HistoryState& history,
                                              const std::string& pointer_axis) {
  if (history.snapshots.empty()) throw ContractError("empty history");
  EventTimeDistribution dist;
  dist.tau_grid = history.tau_grid;

  bool has_pointer = false;
  for (const auto& ax : history.snapshots.front().axes()) {
    if (ax.label == pointer_axis) has_pointer = true;
  }
  if (!has_pointer) {
    throw ConfigError(
        "the kick was recorded as a pure phase with no pointer; occurrence readout "
        "needs the interferometric pointer mode (event.mode = \"pointer\")");
  }

  for (const auto& snap : history.snapshots) {
    const auto m = num::marginal(snap, snap.axis_index(pointer_axis));
    const double total = m[0] + m[1];
    dist.occurred.push_back(total > 0.0 ? m[1] / total : 0.0);
  }

  const std::size_t n = dist.occurred.size();
  dist.density.resize(n, 0.0);
  const double dt = dist.tau_grid.spacing;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      dist.density[i] = n > 1 ? (dist.occurred[1] - dist.occurred[0]) / dt : 0.0;
    } else if (i + 1 == n) {
      dist.density[i] = (dist.occurred[i] - dist.occurred[i - 1]) / dt;
    } else {
      dist.density[i] = (dist.occurred[i + 1] - dist.occurred[i - 1]) / (2.0 * dt);
    }
  }

  for (std::size_t i = 1; i < n; ++i) {
    const double drop = dist.occurred[i - 1] - dist.occurred[i];
    dist.max_monotonicity_defect = std::max(dist.max_monotonicity_defect, drop);
  }
  dist.monotone = dist.max_monotonicity_defect <= 1e-9;
  return dist;
}

std::vector<double> density_peaks(const EventTimeDistribution& dist,
                                  double min_height_frac) {
  std::vector<double> peaks;
  const auto& d = dist.density;
  if (d.size() < 3) return peaks;
  const double dmax = *std::max_element(d.begin(), d.end());
  const double floor = dmax * min_height_frac;
  for (std::size_t i = 1; i + 1 < d.size(); ++i) {
    if (d[i] < floor) continue;
    if (d[i] >= d[i - 1] && d[i] > d[i + 1]) {
      // parabolic refinement around the maximum bin
      const double denom = d[i - 1] - 2.0 * d[i] + d[i + 1];
      double shift = 0.0;
      if (denom < 0.0) shift = 0.5 * (d[i - 1] - d[i + 1]) / denom;
      peaks.push_back(dist.tau_grid.point(static_cast<int>(i)) +
                      shift * dist.tau_grid.spacing);
    }
  }
  return peaks;
}

double occurrence_at(const EventTimeDistribution& dist, double tau1) {
  const auto& g = dist.tau_grid;
  const long idx = std::lround((tau1 - g.offset) / g.spacing);
  if (idx < 0 || idx >= g.n) throw ContractError("tau1 outside the distribution range");
  return dist.occurred[static_cast<std::size_t>(idx)];
}

double transition_width(const EventTimeDistribution& dist, double low, double high) {
  const auto& w = dist.occurred;
  if (w.empty()) return 0.0;
  const double scale = w.back();
  if (scale <= 0.0) return 0.0;
  auto crossing = [&](double level) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i - 1] < level && w[i] >= level) {
        const double f = (level - w[i - 1]) / (w[i] - w[i - 1]);
        return dist.tau_grid.point(static_cast<int>(i - 1)) +
               f * dist.tau_grid.spacing;
      }
    }
    return dist.tau_grid.point(dist.tau_grid.n - 1);
  };
  return crossing(high * scale) - crossing(low * scale);
}

}  // namespace qrfsim::event
