// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "nmsq/gaussian.hpp"
#include "nmsq/oracles.hpp"
#include "nmsq/properties.hpp"
#include "nmsq/report_io.hpp"
#include "nmsq/scenarios.hpp"
#include "nmsq/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace nmsq;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> run;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

Outcome join(const std::vector<Check>& checks) {
    std::string detail;
    for (const auto& c : checks) {
        if (!detail.empty()) detail += "; ";
        detail += std::string(c.passed ? "" : "FAILED ") + c.name + ": " + c.detail;
    }
    return {all_passed(checks), detail};
}

Outcome initial_entanglement() {
    double worst = 0.0;
    for (double r : {0.25, 0.5, 1.0, 2.0})
        worst = std::max(worst, std::abs(log_negativity(cplx{1.0, 0.0}, SqueezeParam(r)) - 2.0 * r / std::numbers::ln2));
    return {worst < 1e-6, "max|E_N(0) - 2r/ln2| = " + fmt(worst)};
}

Outcome closed_system() {
    auto cfg = ScenarioConfig::from_preset("fig2");
    cfg.spectral = SpectralParams(0.0, 1.0);
    const auto rep = run_scenario(cfg);
    double err_en = 0.0, err_u = 0.0;
    for (std::size_t j = 0; j < rep.size(); ++j) {
        err_en = std::max(err_en, std::abs(rep.e_n_exact[j] - rep.e_n_exact[0]));
        err_u = std::max(err_u, std::abs(rep.u[j] - std::exp(cplx{0.0, -rep.times[j]})));
    }
    return {err_en < 1e-8 && err_u < 1e-10,
            "max|E_N - E_N(0)| = " + fmt(err_en) + ", max|u - e^{-it}| = " + fmt(err_u)};
}

Outcome lorentzian_oracle() {
    const auto k = default_lorentzian_kernel();
    const auto g = default_lorentzian_grid();
    const auto traj = solve_u(k, g);
    const auto* l = k.lorentzian_params();
    double err = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
        err = std::max(err, std::abs(traj.u[j] - oracle::lorentzian_propagator(l->gamma, l->lambda, l->omega_0, g.time(j))));
    const double order = convergence_order(k, g);
    return {err < 1e-6 && order >= 1.8 && order <= 2.2,
            "max|u - u_exact| = " + fmt(err) + " (dt = " + fmt(g.dt()) + "), order = " + fmt(order)};
}

Outcome symplectic_equivalence() {
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
    return {worst < 1e-10, "200 matrices and their partial transposes, max relative disagreement = " + fmt(worst)};
}

double moment_error(const char* preset, double t_window, std::size_t& used) {
    const auto cfg = ScenarioConfig::from_preset(preset);
    const auto traj = extract_rates(solve_u(MemoryKernel::ohmic_family(cfg.spectral), cfg.grid), cfg.clamp_eps);
    const auto errors = moment_ode_crosscheck(traj, cfg.squeeze);
    double worst = 0.0;
    used = 0;
    for (; used < errors.size() && cfg.grid.time(used) <= t_window; ++used) worst = std::max(worst, errors[used]);
    return worst;
}

Outcome master_equation_consistency() {
    std::size_t n1 = 0, n2 = 0;
    const double e1 = moment_error("fig1", 10.0, n1);
    const double e2 = moment_error("fig2", INFINITY, n2);
    return {e1 < 1e-4 && e2 < 1e-3 && n1 > 1 && n2 > 1,
            "fig1 t <= 10: " + fmt(e1) + " over " + std::to_string(n1) + " points; fig2: " + fmt(e2) + " over " +
                std::to_string(n2) + " points"};
}

Outcome fig1_regime() { return join(markovian_regime_checks(run_scenario(ScenarioConfig::from_preset("fig1")))); }

Outcome fig2_regime() { return join(resonant_regime_checks(run_scenario(ScenarioConfig::from_preset("fig2")))); }

Outcome fig3_regime() { return join(strong_memory_regime_checks(run_scenario(ScenarioConfig::from_preset("fig3")))); }

Outcome grid_robustness() {
    std::vector<Check> checks;
    for (const char* name : {"fig1", "fig2", "fig3"}) {
        const auto cfg = ScenarioConfig::from_preset(name);
        auto fine = cfg;
        fine.grid = cfg.grid.refined(2);
        auto c = grid_robustness_check(run_scenario(cfg), run_scenario(fine));
        c.name = name;
        checks.push_back(std::move(c));
    }
    return join(checks);
}

Outcome determinism() {
    std::vector<Check> checks;
    for (const char* name : {"fig2", "fig3"}) {
        const auto cfg = ScenarioConfig::from_preset(name);
        const auto a = sha256_hex(csv_text(run_scenario(cfg)));
        const auto b = sha256_hex(csv_text(run_scenario(cfg)));
        checks.push_back({name, a == b, a.substr(0, 16) + (a == b ? " == " : " != ") + b.substr(0, 16)});
    }
    return join(checks);
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "initial entanglement identity", 1.0, initial_entanglement},
        {2, "closed-system limit", 1.0, closed_system},
        {3, "Lorentzian solver oracle", 10.0, lorentzian_oracle},
        {4, "symplectic oracle equivalence", 5.0, symplectic_equivalence},
        {5, "master-equation consistency", 30.0, master_equation_consistency},
        {6, "short-memory regime (fig1)", 30.0, fig1_regime},
        {7, "resonant regime (fig2)", 60.0, fig2_regime},
        {8, "strong-memory regime (fig3)", 120.0, fig3_regime},
        {9, "grid robustness", 300.0, grid_robustness},
        {10, "determinism", 60.0, determinism},
    };

    using clock = std::chrono::steady_clock;
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(clock::now() - t0).count();
        const bool in_budget = s < c.budget_seconds;
        const bool ok = out.passed && in_budget;
        failed += !ok;
        std::printf("%s criterion %2d %s (%.2f s of %.0f s%s): %s\n", ok ? "PASS" : "FAIL", c.id, c.title, s,
                    c.budget_seconds, in_budget ? "" : ", over budget", out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
