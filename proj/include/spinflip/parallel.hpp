#pragma once

#include <span>
#include <vector>

#include "spinflip/effective_field.hpp"
#include "spinflip/trajectory.hpp"

namespace spinflip {

/// Worker count for parallel kernels: `requested` when positive, otherwise
/// the SPINFLIP_THREADS environment variable, otherwise the OpenMP default.
int resolve_workers(int requested = 0);

// Time-grid kernels. Each `_serial` variant is the reference the OpenMP
// version is tested against; both produce bit-identical output.

std::vector<TrajectorySample> sample_trajectory(std::span<const double> times, const Scenario& s,
                                                int workers = 0);
std::vector<TrajectorySample> sample_trajectory_serial(std::span<const double> times,
                                                       const Scenario& s);

std::vector<FieldSample> sample_field(std::span<const double> times, const Scenario& s,
                                      int workers = 0);
std::vector<FieldSample> sample_field_serial(std::span<const double> times, const Scenario& s);

/// n_per_period points per laser period over [0, t_end], t_end included.
std::vector<double> uniform_times(double t_end, double period, int n_per_period);

}  // namespace spinflip
