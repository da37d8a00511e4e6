#include "nmsq/oracles.hpp"
#include "nmsq/scenarios.hpp"
#include "nmsq/verify.hpp"
#include "nmsq/volterra.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace nmsq;

namespace {

// Lorentzian propagator in the rotating frame as a local ODE:
// v' = -(gamma lambda / 2) w, w' = v - lambda w, v(0) = 1, w(0) = 0.
cplx lorentzian_rk4(double gamma, double lambda, double omega_0, double t, int steps) {
    using State = std::array<cplx, 2>;
    const auto f = [&](const State& y) -> State {
        return {-0.5 * gamma * lambda * y[1], y[0] - lambda * y[1]};
    };
    const double h = t / steps;
    State y{1.0, 0.0};
    for (int i = 0; i < steps; ++i) {
        const State k1 = f(y);
        const State k2 = f({y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
        const State k3 = f({y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
        const State k4 = f({y[0] + h * k3[0], y[1] + h * k3[1]});
        for (int c = 0; c < 2; ++c) y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    return std::exp(cplx{0.0, -omega_0 * t}) * y[0];
}

MemoryKernel fig1_kernel() { return MemoryKernel::ohmic_family(ScenarioConfig::from_preset("fig1").spectral); }

}  // namespace

TEST(EvolutionGrid, Points) {
    const EvolutionGrid g(2.0, 8);
    EXPECT_EQ(g.size(), 9u);
    EXPECT_EQ(g.dt(), 0.25);
    EXPECT_EQ(g.time(8), 2.0);
    EXPECT_EQ(g.refined(2).steps(), 16u);
    EXPECT_THROW(EvolutionGrid(2.0, 1), std::invalid_argument);
    EXPECT_THROW(EvolutionGrid(0.0, 10), std::invalid_argument);
    EXPECT_THROW(EvolutionGrid(-1.0, 10), std::invalid_argument);
}

TEST(EvolutionGrid, ResolvesKernelAndOscillation) {
    const auto g1 = EvolutionGrid::resolving(fig1_kernel(), 10.0);
    EXPECT_LE(g1.dt(), 0.1 / 50.0 + 1e-15);
    const auto g2 = EvolutionGrid::resolving(MemoryKernel::ohmic_family(SpectralParams(5.0, 1.0)), 10.0);
    EXPECT_LE(g2.dt(), 0.01 + 1e-15);
}

TEST(SolveU, ZeroKernelIsFreeRotation) {
    const EvolutionGrid g(30.0, 3000);
    const auto traj = solve_u(MemoryKernel::ohmic_family(SpectralParams(0.0, 1.0)), g);
    for (std::size_t j = 0; j < g.size(); ++j)
        ASSERT_LT(std::abs(traj.u[j] - std::exp(cplx{0.0, -g.time(j)})), 1e-10) << "t = " << g.time(j);
}

TEST(SolveU, InitialCondition) {
    for (const auto& k : {fig1_kernel(), default_lorentzian_kernel(),
                          MemoryKernel::ohmic_family(SpectralParams(5.0, 0.2))}) {
        const auto traj = solve_u(k, EvolutionGrid(1.0, 100));
        EXPECT_EQ(traj.u[0], cplx(1.0, 0.0));
    }
}

TEST(SolveU, LorentzianClosedForm) {
    const auto k = default_lorentzian_kernel();
    const auto g = default_lorentzian_grid();
    const auto traj = solve_u(k, g);
    double err = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
        err = std::max(err, std::abs(traj.u[j] - oracle::lorentzian_propagator(1.0, 0.5, 1.0, g.time(j))));
    EXPECT_LT(err, 1e-6);
}

TEST(SolveU, LorentzianClosedFormAgreesWithRungeKutta) {
    for (double t : {0.5, 3.0, 11.0, 20.0}) {
        const cplx rk = lorentzian_rk4(1.0, 0.5, 1.0, t, 20000);
        EXPECT_LT(std::abs(rk - oracle::lorentzian_propagator(1.0, 0.5, 1.0, t)), 1e-12) << "t = " << t;
    }
    // Overdamped branch (real kappa).
    EXPECT_LT(std::abs(lorentzian_rk4(0.2, 3.0, 1.0, 4.0, 20000) - oracle::lorentzian_propagator(0.2, 3.0, 1.0, 4.0)),
              1e-12);
}

TEST(SolveU, ConjugateKernelGivesConjugatePropagator) {
    const auto k = MemoryKernel::ohmic_family(SpectralParams(5.0, 1.0));
    const EvolutionGrid g(10.0, 1000);
    const auto a = solve_u(k, g);
    const auto b = solve_u(k.conjugated(), g);
    for (std::size_t j = 0; j < g.size(); ++j) ASSERT_LT(std::abs(b.u[j] - std::conj(a.u[j])), 1e-13);
}

TEST(SolveU, NormBoundedOnPresets) {
    for (const char* name : {"fig2", "fig3"}) {
        const auto cfg = ScenarioConfig::from_preset(name);
        const auto traj = solve_u(MemoryKernel::ohmic_family(cfg.spectral), cfg.grid);
        for (const auto& u : traj.u) ASSERT_LE(std::abs(u), 1.0 + kNormTolerance) << name;
    }
    const auto traj = solve_u(fig1_kernel(), EvolutionGrid(20.0, 10000));
    for (const auto& u : traj.u) ASSERT_LE(std::abs(u), 1.0 + kNormTolerance);
}

TEST(SolveU, StrongCouplingHasBoundState) {
    // eta * omega_c > omega_0 pulls a pole below the band edge; |u| tends to its residue.
    const auto p = ScenarioConfig::from_preset("fig1").spectral;
    const auto bs = oracle::bound_state(p);
    ASSERT_TRUE(bs.exists);
    const auto traj = solve_u(fig1_kernel(), EvolutionGrid(30.0, 15000));
    EXPECT_NEAR(std::abs(traj.u.back()), bs.residue, 2e-3);
    EXPECT_FALSE(oracle::bound_state(SpectralParams(0.01, 50.0)).exists);
}

TEST(SolveU, FaultsOnNonFiniteKernel) {
    EXPECT_THROW(solve_u(MemoryKernel::ohmic_family(SpectralParams(1e300, 1e10)), EvolutionGrid(1.0, 10)),
                 SolverFault);
}

TEST(ExtractRates, FreeEvolution) {
    const auto traj = extract_rates(solve_u(MemoryKernel::ohmic_family(SpectralParams(0.0, 1.0)), EvolutionGrid(10.0, 500)));
    ASSERT_TRUE(traj.has_rates());
    for (std::size_t j = 0; j < traj.u.size(); ++j) {
        EXPECT_EQ(traj.gamma[j], 0.0);
        EXPECT_EQ(traj.omega[j], 1.0);
    }
}

TEST(ExtractRates, LorentzianMatchesLogDerivative) {
    const auto g = default_lorentzian_grid();
    const auto traj = extract_rates(solve_u(default_lorentzian_kernel(), g));
    const double h = 1e-6;
    for (double t : {1.0, 5.0, 12.0}) {
        const auto j = static_cast<std::size_t>(std::lround(t / g.dt()));
        const auto u = [](double s) { return oracle::lorentzian_propagator(1.0, 0.5, 1.0, s); };
        const cplx rate = -(u(t + h) - u(t - h)) / (2.0 * h) / u(t);
        const double tol = 1e-4 * (1.0 + std::abs(rate));
        EXPECT_NEAR(*traj.gamma[j], rate.real(), tol) << "t = " << t;
        EXPECT_NEAR(*traj.omega[j], rate.imag(), tol) << "t = " << t;
    }
}

TEST(ExtractRates, ResonantBathGivesNegativeDecay) {
    const auto cfg = ScenarioConfig::from_preset("fig2");
    const auto traj = extract_rates(solve_u(MemoryKernel::ohmic_family(cfg.spectral), cfg.grid));
    double lowest = 0.0;
    for (const auto& g : traj.gamma) lowest = std::min(lowest, g.value_or(0.0));
    EXPECT_LT(lowest, 0.0);
}

TEST(ExtractRates, ClampsWhereAmplitudeVanishes) {
    // Overdamped Lorentzian decays monotonically; a large threshold clamps the tail.
    const auto traj = extract_rates(solve_u(MemoryKernel::lorentzian(0.2, 3.0), EvolutionGrid(200.0, 20000)), 1e-3);
    bool clamped = false;
    for (std::size_t j = 0; j < traj.u.size(); ++j) {
        const bool small = std::abs(traj.u[j]) < 1e-3;
        EXPECT_EQ(small, !traj.gamma[j].has_value());
        EXPECT_EQ(small, !traj.omega[j].has_value());
        clamped = clamped || small;
    }
    EXPECT_TRUE(clamped);
}

TEST(ConvergenceOrder, Lorentzian) {
    const double order = convergence_order(default_lorentzian_kernel(), default_lorentzian_grid());
    EXPECT_GE(order, 1.8);
    EXPECT_LE(order, 2.2);
}

TEST(ConvergenceOrder, ZeroKernelIsExact) {
    EXPECT_EQ(convergence_order(MemoryKernel::ohmic_family(SpectralParams(0.0, 1.0)), EvolutionGrid(10.0, 400)),
              kExactConvergence);
}

TEST(ConvergenceOrder, OhmicResonant) {
    const double order = convergence_order(MemoryKernel::ohmic_family(SpectralParams(5.0, 1.0)), EvolutionGrid(10.0, 1000));
    EXPECT_GE(order, 1.7);
    EXPECT_LE(order, 2.3);
}

TEST(ConvergenceOrder, RequiresStepsDivisibleByFour) {
    EXPECT_THROW(convergence_order(default_lorentzian_kernel(), EvolutionGrid(1.0, 102)), std::invalid_argument);
}
