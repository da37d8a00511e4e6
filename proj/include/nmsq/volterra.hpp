// volterra.hpp: propagator equation
//
//   du/dt + i w0 u + int_0^t mu(t - s) u(s) ds = 0,   u(0) = 1,
//
// and the time-dependent decay rate / frequency -du/dt / u = Gamma + i Omega.

#pragma once

#include "nmsq/kernels.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nmsq {

class EvolutionGrid {
public:
    EvolutionGrid(double t_end, std::size_t steps);

    // Smallest step count with dt <= min(0.01/w0, 0.1 * memory time).
    static EvolutionGrid resolving(const MemoryKernel& k, double t_end);

    double t_end() const noexcept { return t_end_; }
    std::size_t steps() const noexcept { return steps_; }
    std::size_t size() const noexcept { return steps_ + 1; }
    double dt() const noexcept { return t_end_ / static_cast<double>(steps_); }
    double time(std::size_t j) const noexcept { return static_cast<double>(j) * dt(); }

    EvolutionGrid refined(std::size_t factor) const { return {t_end_, steps_ * factor}; }

    bool operator==(const EvolutionGrid&) const = default;

private:
    double t_end_;
    std::size_t steps_;
};

inline constexpr double kDefaultClampEps = 1e-8;
inline constexpr double kNormTolerance = 1e-9;

struct PropagatorTrajectory {
    EvolutionGrid grid;
    double omega_0 = kSystemFrequency;
    std::vector<cplx> u;
    std::vector<cplx> u_dot;
    // Rotating-frame amplitude v = exp(i w0 t) u and its derivative.
    std::vector<cplx> v;
    std::vector<cplx> v_dot;
    // Empty until extract_rates; std::nullopt where |u| < clamp_eps.
    std::vector<std::optional<double>> gamma;
    std::vector<std::optional<double>> omega;
    double clamp_eps = kDefaultClampEps;

    bool has_rates() const noexcept { return gamma.size() == u.size(); }
};

// Non-finite values or a norm excursion above 1 + kNormTolerance.
class SolverFault : public std::runtime_error {
public:
    SolverFault(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

// Second-order predictor-corrector (AB2 predictor, trapezoidal corrector) with
// trapezoidal product integration of the memory integral. The free rotation
// exp(-i w0 t) is factored out exactly.
PropagatorTrajectory solve_u(const MemoryKernel& k, const EvolutionGrid& g);

PropagatorTrajectory extract_rates(PropagatorTrajectory traj, double clamp_eps = kDefaultClampEps);

inline constexpr double kExactConvergence = std::numeric_limits<double>::infinity();

// Solves on g, g/2 and g/4 (g.steps() must be divisible by 4) and returns
// log2(|u_dt - u_dt/2|_inf / |u_dt/2 - u_dt/4|_inf) over the points of g.
// Returns kExactConvergence when the successive differences vanish.
double convergence_order(const MemoryKernel& k, const EvolutionGrid& g);

}  // namespace nmsq
