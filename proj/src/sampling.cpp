#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>

#include <omp.h>

#include "spinflip/parallel.hpp"

namespace spinflip {

namespace {

// Runs body(i) for i in [0, n) on a static partition. The first exception by
// index is rethrown after the region, since none may escape an OpenMP loop.
template <class Body>
void parallel_for(std::size_t n, int workers, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(workers)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPINFLIP_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<int>(value);
  }
  return omp_get_max_threads();
}

std::vector<TrajectorySample> sample_trajectory(std::span<const double> times, const Scenario& s,
                                                int workers) {
  std::vector<TrajectorySample> out(times.size());
  parallel_for(times.size(), resolve_workers(workers),
               [&](std::size_t i) { out[i] = sample_trajectory(times[i], s); });
  return out;
}

std::vector<TrajectorySample> sample_trajectory_serial(std::span<const double> times,
                                                       const Scenario& s) {
  std::vector<TrajectorySample> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(sample_trajectory(t, s));
  return out;
}

std::vector<FieldSample> sample_field(std::span<const double> times, const Scenario& s,
                                      int workers) {
  std::vector<FieldSample> out(times.size());
  parallel_for(times.size(), resolve_workers(workers),
               [&](std::size_t i) { out[i] = effective_field(times[i], s); });
  return out;
}

std::vector<FieldSample> sample_field_serial(std::span<const double> times, const Scenario& s) {
  std::vector<FieldSample> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(effective_field(t, s));
  return out;
}

std::vector<double> uniform_times(double t_end, double period, int n_per_period) {
  const double dt = period / n_per_period;
  const auto count = static_cast<long long>(std::floor(t_end / dt + 1e-9));
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(count) + 2);
  for (long long k = 0; k <= count; ++k) times.push_back(static_cast<double>(k) * dt);
  if (t_end - times.back() > 1e-9 * dt) times.push_back(t_end);
  return times;
}

}  // namespace spinflip
