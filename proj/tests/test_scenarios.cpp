#include "nmsq/gaussian.hpp"
#include "nmsq/properties.hpp"
#include "nmsq/scenarios.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace nmsq;

namespace {

ScenarioConfig short_run(const char* preset, double t_end) {
    auto cfg = ScenarioConfig::from_preset(preset);
    cfg.grid = EvolutionGrid::resolving(MemoryKernel::ohmic_family(cfg.spectral), t_end);
    return cfg;
}

}  // namespace

TEST(Regime, Classifier) {
    EXPECT_EQ(regime_classify(SpectralParams(0.1, 50.0)), Regime::MarkovianLike);
    EXPECT_EQ(regime_classify(SpectralParams(5.0, 1.0)), Regime::Resonant);
    EXPECT_EQ(regime_classify(SpectralParams(5.0, 0.2)), Regime::StrongMemory);
    EXPECT_EQ(regime_classify(SpectralParams(1.0, 10.0)), Regime::MarkovianLike);
    EXPECT_EQ(regime_classify(SpectralParams(1.0, 0.5)), Regime::Resonant);
    EXPECT_EQ(regime_classify(SpectralParams(1.0, 3.0), RegimeThresholds{2.0, 0.5}), Regime::MarkovianLike);
}

TEST(Presets, Parameters) {
    const auto f1 = ScenarioConfig::from_preset("fig1");
    EXPECT_EQ(f1.spectral, SpectralParams(0.1, 50.0));
    EXPECT_NEAR(f1.grid.t_end(), 20.0 / markov_coefficients(f1.spectral).gamma_m, 1e-12);
    EXPECT_EQ(f1.regime_label, Regime::MarkovianLike);
    const auto f2 = ScenarioConfig::from_preset("fig2");
    EXPECT_EQ(f2.spectral, SpectralParams(5.0, 1.0));
    EXPECT_EQ(f2.squeeze, SqueezeParam(1.0));
    EXPECT_EQ(f2.grid.t_end(), 50.0);
    const auto f3 = ScenarioConfig::from_preset("fig3");
    EXPECT_EQ(f3.spectral, SpectralParams(5.0, 0.2));
    EXPECT_EQ(f3.grid.t_end(), 200.0);
    EXPECT_EQ(f3.regime_label, Regime::StrongMemory);
    for (const auto& name : preset_names()) {
        const auto cfg = ScenarioConfig::from_preset(name);
        EXPECT_LE(cfg.grid.dt(), std::min(0.01, 0.1 / cfg.spectral.omega_c()) + 1e-15) << name;
    }
    EXPECT_THROW(ScenarioConfig::from_preset("fig4"), std::invalid_argument);
}

TEST(RunScenario, ReportShape) {
    const auto rep = run_scenario(short_run("fig2", 5.0));
    const std::size_t n = rep.metadata.config.grid.size();
    EXPECT_EQ(rep.size(), n);
    EXPECT_EQ(rep.u.size(), n);
    EXPECT_EQ(rep.gamma_exact.size(), n);
    EXPECT_EQ(rep.e_n_exact.size(), n);
    ASSERT_TRUE(rep.e_n_markov.has_value());
    EXPECT_EQ(rep.e_n_markov->size(), n);
    EXPECT_NEAR(rep.e_n_exact[0], 2.0 / std::numbers::ln2, 1e-9);
    EXPECT_NEAR((*rep.e_n_markov)[0], 2.0 / std::numbers::ln2, 1e-9);
    EXPECT_EQ(rep.metadata.classified_regime, Regime::Resonant);
    EXPECT_EQ(rep.metadata.dt, rep.metadata.config.grid.dt());
}

TEST(RunScenario, MarkovReferenceIsExponentialDecay) {
    auto cfg = short_run("fig2", 5.0);
    const auto rep = run_scenario(cfg);
    const auto m = markov_coefficients(cfg.spectral);
    EXPECT_EQ(*rep.gamma_markov, m.gamma_m);
    for (std::size_t j = 0; j < rep.size(); j += 50) {
        const double mag = std::exp(-m.gamma_m * rep.times[j]);
        EXPECT_NEAR((*rep.e_n_markov)[j], log_negativity(cplx{mag, 0.0}, cfg.squeeze), 1e-12);
    }
    cfg.include_markov_reference = false;
    const auto bare = run_scenario(cfg);
    EXPECT_FALSE(bare.e_n_markov.has_value());
    EXPECT_FALSE(bare.gamma_markov.has_value());
}

TEST(RunScenario, Deterministic) {
    const auto cfg = short_run("fig3", 20.0);
    const auto a = run_scenario(cfg);
    const auto b = run_scenario(cfg);
    EXPECT_EQ(a.u, b.u);
    EXPECT_EQ(a.e_n_exact, b.e_n_exact);
    EXPECT_EQ(a.gamma_exact, b.gamma_exact);
}

TEST(Sweep, SqueezingSetsInitialEntanglement) {
    const std::vector<double> rs{0.5, 1.0, 2.0};
    const auto reps = sweep(short_run("fig1", 1.0), SweepAxis::R, rs);
    ASSERT_EQ(reps.size(), 3u);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        EXPECT_NEAR(reps[i].e_n_exact[0], 2.0 * rs[i] / std::numbers::ln2, 1e-9);
        EXPECT_EQ(reps[i].metadata.swept->first, "r");
        EXPECT_EQ(reps[i].metadata.swept->second, rs[i]);
    }
}

TEST(Sweep, ZeroCouplingIsFlat) {
    const std::vector<double> eta{0.0};
    const auto reps = sweep(short_run("fig2", 10.0), SweepAxis::Eta, eta);
    for (double e : reps[0].e_n_exact) ASSERT_NEAR(e, reps[0].e_n_exact[0], 1e-8);
    for (const auto& g : reps[0].gamma_exact) ASSERT_EQ(g, 0.0);
}

TEST(Sweep, CutoffLabelsFollowClassifier) {
    const std::vector<double> wc{0.2, 1.0, 50.0};
    const auto reps = sweep(short_run("fig2", 0.5), SweepAxis::OmegaC, wc, 2);
    ASSERT_EQ(reps.size(), 3u);
    EXPECT_EQ(reps[0].metadata.config.regime_label, Regime::StrongMemory);
    EXPECT_EQ(reps[1].metadata.config.regime_label, Regime::Resonant);
    EXPECT_EQ(reps[2].metadata.config.regime_label, Regime::MarkovianLike);
    EXPECT_LE(reps[2].metadata.dt, 0.1 / 50.0 + 1e-15);
}

TEST(Sweep, ConcurrencyDoesNotChangeResults) {
    const std::vector<double> eta{0.5, 1.0, 2.0, 5.0};
    const auto base = short_run("fig2", 8.0);
    const auto seq = sweep(base, SweepAxis::Eta, eta, 1);
    const auto par = sweep(base, SweepAxis::Eta, eta, 3);
    ASSERT_EQ(seq.size(), par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        EXPECT_EQ(seq[i].u, par[i].u);
        EXPECT_EQ(seq[i].e_n_exact, par[i].e_n_exact);
    }
}

TEST(Sweep, ReportsFailingValue) {
    const std::vector<double> eta{0.5, -1.0, 2.0};
    for (unsigned workers : {1u, 3u}) {
        try {
            sweep(short_run("fig2", 2.0), SweepAxis::Eta, eta, workers);
            FAIL() << "expected SweepError";
        } catch (const SweepError& e) {
            EXPECT_EQ(e.value(), -1.0);
            EXPECT_NE(std::string(e.what()).find("eta"), std::string::npos);
        }
    }
}

TEST(Sweep, AxisNames) {
    EXPECT_EQ(parse_sweep_axis("omega_c"), SweepAxis::OmegaC);
    EXPECT_EQ(to_string(SweepAxis::R), "r");
    EXPECT_THROW(parse_sweep_axis("temperature"), std::invalid_argument);
}

TEST(Properties, Counting) {
    const std::vector<double> s{0.0, 1.0, 2.0, 1.0, 1.0, 3.0, 0.0};
    EXPECT_EQ(count_local_extrema(s), 3u);
    const std::vector<std::optional<double>> g{1.0, -1.0, std::nullopt, -2.0, 0.0, 3.0};
    EXPECT_EQ(count_sign_changes(g), 2u);
    const std::vector<double> t{0.0, 1.0, 2.0, 3.0};
    const std::vector<std::optional<double>> y{5.0, 1.0, 1.0, 3.0};
    EXPECT_DOUBLE_EQ(time_average(t, y, 1.0), 1.5);
}

TEST(Properties, ResonantRegime) {
    const auto rep = run_scenario(ScenarioConfig::from_preset("fig2"));
    for (const auto& c : resonant_regime_checks(rep)) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Properties, StrongMemoryRegime) {
    const auto rep = run_scenario(ScenarioConfig::from_preset("fig3"));
    for (const auto& c : strong_memory_regime_checks(rep)) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Properties, MissingPartialTransposeIsCaught) {
    // E_N taken from the untransposed spectrum is identically zero, so the residual
    // entanglement plateau must be flagged.
    auto rep = run_scenario(ScenarioConfig::from_preset("fig2"));
    for (std::size_t j = 0; j < rep.size(); ++j) {
        const auto v = covariance(state_coefficients(rep.u[j], rep.metadata.config.squeeze));
        rep.e_n_exact[j] = log_negativity(SymplecticSpectrum{symplectic_spectrum(v).nu, true});
    }
    bool plateau_ok = true;
    for (const auto& c : resonant_regime_checks(rep))
        if (c.name == "e_n_plateau") plateau_ok = c.passed;
    EXPECT_FALSE(plateau_ok);
}

TEST(Properties, GridRobustnessRequiresNestedGrids) {
    const auto coarse = run_scenario(short_run("fig2", 2.0));
    auto fine_cfg = coarse.metadata.config;
    fine_cfg.grid = fine_cfg.grid.refined(2);
    const auto fine = run_scenario(fine_cfg);
    EXPECT_TRUE(grid_robustness_check(coarse, fine).passed);
    EXPECT_FALSE(grid_robustness_check(coarse, coarse).passed);
}
