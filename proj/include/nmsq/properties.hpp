// properties.hpp: qualitative regime checks on trajectory reports.

#pragma once

#include "nmsq/scenarios.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nmsq {

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

bool all_passed(std::span<const Check> checks);

// Sign changes between consecutive nonzero first differences, from index `begin`.
std::size_t count_local_extrema(std::span<const double> series, std::size_t begin = 0);

// Sign changes between consecutive defined, nonzero samples.
std::size_t count_sign_changes(std::span<const std::optional<double>> series, std::size_t begin = 0);

// Trapezoidal time average over t >= t_from, skipping intervals with an undefined endpoint.
double time_average(std::span<const double> times, std::span<const std::optional<double>> series, double t_from);

// Peak-to-peak of series over t in [t_from, t_to].
double peak_to_peak(std::span<const double> times, std::span<const double> series, double t_from, double t_to);

// Short memory: Gamma >= 0, plateau within 2% of pi J(w0) for t > 5,
// E_N non-increasing (per-step slack 1e-6) from t_monotone on, E_N(t_end) < 1e-3.
std::vector<Check> markovian_regime_checks(const TrajectoryReport& rep, double t_monotone = 0.0);

// Resonant memory: Gamma < 0 somewhere, |Gamma| < 0.01 over the last tenth,
// >= 2 E_N extrema, E_N(t_end) > 0.05 with |dE_N/dt| < 1e-4.
std::vector<Check> resonant_regime_checks(const TrajectoryReport& rep);

// Long memory: >= 5 Gamma sign changes, positive Gamma mean over the final quarter,
// E_N oscillation decaying but alive in the final quarter.
std::vector<Check> strong_memory_regime_checks(const TrajectoryReport& rep);

// max_t>t_from |E_N exact - E_N markov| < tol.
Check markov_tracking_check(const TrajectoryReport& rep, double t_from = 1.0, double tol = 0.15);

// Every E_N sample of `coarse` against the matching sample of `fine` (fine.dt = coarse.dt / 2).
Check grid_robustness_check(const TrajectoryReport& coarse, const TrajectoryReport& fine, double tol = 1e-3);

}  // namespace nmsq
