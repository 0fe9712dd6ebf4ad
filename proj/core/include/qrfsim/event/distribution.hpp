#pragma once

#include <string>
#include <vector>

#include "qrfsim/frame/history.hpp"

namespace qrfsim::event {

/// Occurrence probability of the measurement as read off the pointer, per
/// frame proper time, with its discrete-derivative density.
struct EventTimeDistribution {
  num::Grid1D tau_grid;
  std::vector<double> occurred;  // cumulative weight, in [0, 1]
  std::vector<double> density;
  bool monotone = true;
  double max_monotonicity_defect = 0.0;
};

/// Pointer readout: weight(tau1) = P(pointer fired) at each snapshot.
/// A history evolved in the pure-phase kick mode has no pointer axis:
/// ConfigError directing the user to the interferometric (pointer) mode.
EventTimeDistribution event_time_distribution(const frame::HistoryState& history,
                                              const std::string& pointer_axis);

/// Local maxima of the density above min_height_frac of the peak, parabolic
/// sub-bin refinement.
std::vector<double> density_peaks(const EventTimeDistribution& dist,
                                  double min_height_frac = 0.1);

/// Occurrence value at the tau-grid point nearest to tau1.
double occurrence_at(const EventTimeDistribution& dist, double tau1);

/// Width of the occurrence transition between the low and high levels
/// (linear interpolation between samples).
double transition_width(const EventTimeDistribution& dist, double low = 0.1,
                        double high = 0.9);

}  // namespace qrfsim::event
