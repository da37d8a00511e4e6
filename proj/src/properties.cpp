#include "nmsq/properties.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nmsq {

namespace {

template <class... Args>
std::string describe(Args&&... args) {
    std::ostringstream os;
    os.precision(6);
    (os << ... << args);
    return os.str();
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

bool all_passed(std::span<const Check> checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::size_t count_local_extrema(std::span<const double> series, std::size_t begin) {
    std::size_t count = 0;
    int last = 0;
    for (std::size_t j = begin + 1; j < series.size(); ++j) {
        const int s = sign(series[j] - series[j - 1]);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

std::size_t count_sign_changes(std::span<const std::optional<double>> series, std::size_t begin) {
    std::size_t count = 0;
    int last = 0;
    for (std::size_t j = begin; j < series.size(); ++j) {
        if (!series[j]) continue;
        const int s = sign(*series[j]);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

double time_average(std::span<const double> times, std::span<const std::optional<double>> series, double t_from) {
    double area = 0.0, span = 0.0;
    for (std::size_t j = 1; j < times.size(); ++j) {
        if (times[j - 1] < t_from || !series[j - 1] || !series[j]) continue;
        const double h = times[j] - times[j - 1];
        area += 0.5 * h * (*series[j - 1] + *series[j]);
        span += h;
    }
    return span > 0.0 ? area / span : std::nan("");
}

double peak_to_peak(std::span<const double> times, std::span<const double> series, double t_from, double t_to) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t j = 0; j < times.size(); ++j) {
        if (times[j] < t_from || times[j] > t_to) continue;
        lo = std::min(lo, series[j]);
        hi = std::max(hi, series[j]);
    }
    return hi >= lo ? hi - lo : 0.0;
}

std::vector<Check> markovian_regime_checks(const TrajectoryReport& rep, double t_monotone) {
    std::vector<Check> out;
    const auto& cfg = rep.metadata.config;
    const double target = std::numbers::pi * spectral_density(cfg.spectral, cfg.spectral.omega_0());

    double min_gamma = INFINITY, worst_plateau = 0.0;
    for (std::size_t j = 0; j < rep.size(); ++j) {
        if (!rep.gamma_exact[j]) continue;
        min_gamma = std::min(min_gamma, *rep.gamma_exact[j]);
        if (rep.times[j] > 5.0)
            worst_plateau = std::max(worst_plateau, std::abs(*rep.gamma_exact[j] - target) / target);
    }
    out.push_back({"gamma_nonnegative", min_gamma >= 0.0, describe("min Gamma = ", min_gamma)});
    out.push_back({"gamma_plateau", worst_plateau <= 0.02,
                   describe("max |Gamma - pi J(w0)|/pi J(w0) for w0 t > 5 = ", worst_plateau, " (pi J(w0) = ",
                            target, ")")});

    double worst_rise = 0.0;
    for (std::size_t j = 1; j < rep.size(); ++j)
        if (rep.times[j - 1] >= t_monotone)
            worst_rise = std::max(worst_rise, rep.e_n_exact[j] - rep.e_n_exact[j - 1]);
    out.push_back({"e_n_monotone", worst_rise <= 1e-6, describe("largest per-step increase of E_N = ", worst_rise)});

    const double terminal = rep.e_n_exact.back();
    out.push_back({"e_n_terminal", terminal < 1e-3, describe("E_N(t_end) = ", terminal)});
    return out;
}

std::vector<Check> resonant_regime_checks(const TrajectoryReport& rep) {
    std::vector<Check> out;
    const double t_end = rep.times.back();

    double min_gamma = INFINITY, late_max = 0.0;
    for (std::size_t j = 0; j < rep.size(); ++j) {
        if (!rep.gamma_exact[j]) continue;
        min_gamma = std::min(min_gamma, *rep.gamma_exact[j]);
        if (rep.times[j] >= 0.9 * t_end) late_max = std::max(late_max, std::abs(*rep.gamma_exact[j]));
    }
    out.push_back({"gamma_negative", min_gamma < 0.0, describe("min Gamma = ", min_gamma)});
    out.push_back({"gamma_asymptotic", late_max < 0.01, describe("max |Gamma| over final tenth = ", late_max)});

    const auto extrema = count_local_extrema(rep.e_n_exact);
    out.push_back({"e_n_extrema", extrema >= 2, describe(extrema, " local extrema of E_N")});

    const std::size_t n = rep.size();
    const double plateau = rep.e_n_exact[n - 1];
    const double slope = (rep.e_n_exact[n - 1] - rep.e_n_exact[n - 2]) / (rep.times[n - 1] - rep.times[n - 2]);
    out.push_back({"e_n_plateau", plateau > 0.05, describe("E_N(t_end) = ", plateau)});
    out.push_back({"e_n_plateau_slope", std::abs(slope) < 1e-4, describe("dE_N/dt at t_end = ", slope)});
    return out;
}

std::vector<Check> strong_memory_regime_checks(const TrajectoryReport& rep) {
    std::vector<Check> out;
    const double t_end = rep.times.back();

    const auto changes = count_sign_changes(rep.gamma_exact);
    out.push_back({"gamma_sign_changes", changes >= 5, describe(changes, " sign changes of Gamma")});

    const double mean = time_average(rep.times, rep.gamma_exact, 0.75 * t_end);
    out.push_back({"gamma_late_mean_positive", mean > 0.0, describe("mean Gamma over final quarter = ", mean)});

    const double early = peak_to_peak(rep.times, rep.e_n_exact, 0.25 * t_end, 0.5 * t_end);
    const double late = peak_to_peak(rep.times, rep.e_n_exact, 0.75 * t_end, t_end);
    std::size_t begin = 0;
    while (begin < rep.size() && rep.times[begin] < 0.75 * t_end) ++begin;
    const auto late_extrema = count_local_extrema(rep.e_n_exact, begin);
    const bool oscillating = late < early && late > 1e-5 && late_extrema >= 2;
    out.push_back({"e_n_persistent_oscillation", oscillating,
                   describe("E_N peak-to-peak second quarter = ", early, ", final quarter = ", late, ", ",
                            late_extrema, " extrema in final quarter")});
    return out;
}

Check markov_tracking_check(const TrajectoryReport& rep, double t_from, double tol) {
    if (!rep.e_n_markov) return {"markov_tracking", false, "report has no Markov reference"};
    double worst = 0.0;
    for (std::size_t j = 0; j < rep.size(); ++j)
        if (rep.times[j] > t_from) worst = std::max(worst, std::abs(rep.e_n_exact[j] - (*rep.e_n_markov)[j]));
    return {"markov_tracking", worst < tol, describe("max |E_N - E_N^M| for w0 t > ", t_from, " = ", worst)};
}

Check grid_robustness_check(const TrajectoryReport& coarse, const TrajectoryReport& fine, double tol) {
    if (fine.size() != 2 * coarse.size() - 1) return {"grid_robustness", false, "fine grid is not coarse/2"};
    double worst = 0.0;
    for (std::size_t j = 0; j < coarse.size(); ++j)
        worst = std::max(worst, std::abs(coarse.e_n_exact[j] - fine.e_n_exact[2 * j]));
    return {"grid_robustness", worst < tol, describe("max |E_N(dt) - E_N(dt/2)| = ", worst)};
}

}  // namespace nmsq
