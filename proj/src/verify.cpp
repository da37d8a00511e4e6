#include "nmsq/verify.hpp"

#include "nmsq/gaussian.hpp"
#include "nmsq/oracles.hpp"
#include "nmsq/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace nmsq {

VerifyLevel parse_verify_level(std::string_view name) {
    if (name == "quick") return VerifyLevel::Quick;
    if (name == "full") return VerifyLevel::Full;
    throw std::invalid_argument("unknown verify level '" + std::string(name) + "' (expected quick or full)");
}

bool VerifySummary::passed() const {
    return std::all_of(results.begin(), results.end(), [](const VerifyResult& r) { return r.check.passed; });
}

MemoryKernel default_lorentzian_kernel() { return MemoryKernel::lorentzian(1.0, 0.5, 1.0); }

EvolutionGrid default_lorentzian_grid() { return EvolutionGrid(20.0, 4000); }

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

Check free_evolution() {
    const SpectralParams p(0.0, 1.0);
    const EvolutionGrid g(20.0, 2000);
    const auto traj = extract_rates(solve_u(MemoryKernel::ohmic_family(p), g));
    const SqueezeParam s(1.0);
    const double e0 = log_negativity(cplx{1.0, 0.0}, s);
    double err_u = 0.0, err_en = 0.0, err_rates = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        err_u = std::max(err_u, std::abs(traj.u[j] - std::exp(cplx{0.0, -g.time(j)})));
        err_en = std::max(err_en, std::abs(log_negativity(traj.u[j], s) - e0));
        err_rates = std::max(err_rates, std::abs(traj.gamma[j].value_or(NAN)) + std::abs(traj.omega[j].value_or(NAN) - 1.0));
    }
    const bool ok = err_u < 1e-10 && err_en < 1e-8 && err_rates == 0.0;
    return {"free_evolution", ok,
            "max|u - e^{-it}| = " + fmt(err_u) + ", max|E_N - E_N(0)| = " + fmt(err_en) +
                ", max rate deviation = " + fmt(err_rates)};
}

Check initial_entanglement() {
    double worst = 0.0;
    for (double r : {0.25, 0.5, 1.0, 2.0})
        worst = std::max(worst, std::abs(log_negativity(cplx{1.0, 0.0}, SqueezeParam(r)) - 2.0 * r / std::numbers::ln2));
    return {"initial_entanglement", worst < 1e-9, "max|E_N(0) - 2r/ln2| = " + fmt(worst)};
}

Check vacuum_limits() {
    const auto sc = state_coefficients(cplx{0.0, 0.0}, SqueezeParam(1.0));
    const auto v = covariance(sc);
    const double dv = (v.matrix() - 0.5 * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
    const double en = log_negativity(cplx{0.0, 0.0}, SqueezeParam(1.0));
    const double en_r0 = log_negativity(cplx{0.6, 0.3}, SqueezeParam(0.0));
    const bool ok = std::abs(sc.a - 1.0) < 1e-15 && sc.b == cplx{0.0, 0.0} && sc.c == 0.0 && dv < 1e-15 &&
                    en < 1e-12 && en_r0 < 1e-12;
    return {"vacuum_limits", ok, "max|V - I/2| = " + fmt(dv) + ", E_N(u=0) = " + fmt(en) + ", E_N(r=0) = " + fmt(en_r0)};
}

Check lorentzian_oracle() {
    const auto k = default_lorentzian_kernel();
    const auto g = default_lorentzian_grid();
    const auto traj = solve_u(k, g);
    const auto* l = k.lorentzian_params();
    double err = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
        err = std::max(err, std::abs(traj.u[j] - oracle::lorentzian_propagator(l->gamma, l->lambda, l->omega_0, g.time(j))));
    return {"lorentzian_oracle", err < 1e-6, "max|u - u_exact| = " + fmt(err)};
}

Check lorentzian_convergence() {
    const double order = convergence_order(default_lorentzian_kernel(), default_lorentzian_grid());
    return {"lorentzian_convergence_order", order >= 1.8 && order <= 2.2, "empirical order = " + fmt(order)};
}

Check symplectic_oracle() {
    std::mt19937_64 rng(20240611);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const CovarianceMatrix v(oracle::random_physical_covariance(rng));
        for (const auto& m : {v, partial_transpose(v)}) {
            const auto a = symplectic_spectrum(m);
            const auto b = symplectic_spectrum_eigen(m);
            for (int k = 0; k < 2; ++k) worst = std::max(worst, std::abs(a.nu[k] - b.nu[k]) / b.nu[k]);
        }
    }
    return {"symplectic_oracle", worst < 1e-10, "max relative disagreement = " + fmt(worst)};
}

Check kernel_quadrature() {
    const SpectralParams p(0.1, 50.0);
    const auto k = MemoryKernel::ohmic_family(p);
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double t = 10.0 / p.omega_c() * i / 20.0;
        worst = std::max(worst, std::abs(k(t) - oracle::ohmic_kernel_quadrature(p, t)) / std::abs(k(0.0)));
    }
    return {"kernel_quadrature", worst < 1e-7, "max|mu - mu_quad|/|mu(0)| = " + fmt(worst)};
}

Check markov_pv_dual() {
    const SpectralParams p(5.0, 1.0);
    const double a = principal_value_shift(p);
    const double b = oracle::principal_value_folded(p);
    const double c = oracle::principal_value_ohmic_ei(p);
    const double err = std::max(std::abs(a - b), std::abs(a - c));
    return {"markov_pv_dual", err < 1e-6, "PV subtraction vs folded/Ei max difference = " + fmt(err)};
}

Check regime(const char* preset, std::vector<Check> (*checks)(const TrajectoryReport&)) {
    const auto rep = run_scenario(ScenarioConfig::from_preset(preset));
    const auto results = checks(rep);
    std::string detail;
    for (const auto& c : results) {
        if (!detail.empty()) detail += "; ";
        detail += std::string(c.passed ? "" : "FAILED ") + c.name + ": " + c.detail;
    }
    return {std::string(preset) + "_regime", all_passed(results), detail};
}

std::vector<Check> fig1_checks(const TrajectoryReport& rep) { return markovian_regime_checks(rep); }

Check moment_ode(const char* preset, double t_window, double tol) {
    const auto cfg = ScenarioConfig::from_preset(preset);
    const auto traj = extract_rates(solve_u(MemoryKernel::ohmic_family(cfg.spectral), cfg.grid), cfg.clamp_eps);
    const auto errors = moment_ode_crosscheck(traj, cfg.squeeze);
    double worst = 0.0;
    std::size_t used = 0;
    for (std::size_t j = 0; j < errors.size() && cfg.grid.time(j) <= t_window; ++j, ++used)
        worst = std::max(worst, errors[j]);
    return {std::string("moment_ode_") + preset, worst < tol && used > 1,
            "max Frobenius error = " + fmt(worst) + " over " + std::to_string(used) + " points"};
}

}  // namespace

VerifySummary verify(VerifyLevel level, std::ostream* progress) {
    std::vector<std::function<Check()>> suite{
        free_evolution, initial_entanglement, vacuum_limits,  lorentzian_oracle,
        lorentzian_convergence, symplectic_oracle, kernel_quadrature, markov_pv_dual,
    };
    if (level == VerifyLevel::Full) {
        suite.push_back([] { return regime("fig1", fig1_checks); });
        suite.push_back([] { return regime("fig2", resonant_regime_checks); });
        suite.push_back([] { return regime("fig3", strong_memory_regime_checks); });
        suite.push_back([] { return moment_ode("fig1", 10.0, 1e-4); });
        suite.push_back([] { return moment_ode("fig2", INFINITY, 1e-3); });
    }

    using clock = std::chrono::steady_clock;
    VerifySummary summary;
    const auto start = clock::now();
    for (const auto& run : suite) {
        const auto t0 = clock::now();
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c = {"exception", false, e.what()};
        }
        const double s = std::chrono::duration<double>(clock::now() - t0).count();
        if (progress)
            *progress << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << fmt(s) << " s): " << c.detail << '\n';
        summary.results.push_back({std::move(c), s});
    }
    summary.seconds = std::chrono::duration<double>(clock::now() - start).count();
    return summary;
}

}  // namespace nmsq
