#include "nmsq/scenarios.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#ifndef NMSQ_VERSION
#define NMSQ_VERSION "0.0.0"
#endif

namespace nmsq {

const char* code_version() noexcept { return NMSQ_VERSION; }

std::string to_string(Regime r) {
    switch (r) {
        case Regime::MarkovianLike: return "markovian_like";
        case Regime::Resonant: return "resonant";
        case Regime::StrongMemory: return "strong_memory";
        case Regime::Custom: return "custom";
    }
    return "custom";
}

Regime regime_classify(const SpectralParams& p, const RegimeThresholds& th) {
    const double ratio = p.omega_c() / p.omega_0();
    if (ratio >= th.markovian) return Regime::MarkovianLike;
    if (ratio >= th.resonant) return Regime::Resonant;
    return Regime::StrongMemory;
}

namespace {

struct PresetSpec {
    const char* name;
    double omega_c;
    double eta;
    double r;
    // Multiple of the resolving step count. fig1 and fig2 run finer so the
    // moment-ODE consistency error (second order in dt) stays below 1e-4 and 1e-3.
    std::size_t refine;
};

constexpr PresetSpec kPresets[] = {
    {"fig1", 50.0, 0.1, 1.0, 4},
    {"fig2", 1.0, 5.0, 1.0, 4},
    {"fig3", 0.2, 5.0, 1.0, 1},
};

const PresetSpec& find_preset(std::string_view name) {
    for (const auto& p : kPresets)
        if (name == p.name) return p;
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected fig1, fig2 or fig3)");
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig1", "fig2", "fig3"};
    return names;
}

double preset_t_end(std::string_view name) {
    const auto& p = find_preset(name);
    if (name == "fig1") return 20.0 / markov_coefficients(SpectralParams(p.eta, p.omega_c)).gamma_m;
    if (name == "fig2") return 50.0;
    return 200.0;
}

ScenarioConfig ScenarioConfig::from_preset(std::string_view name) {
    const auto& p = find_preset(name);
    const SpectralParams spectral(p.eta, p.omega_c);
    const auto grid =
        EvolutionGrid::resolving(MemoryKernel::ohmic_family(spectral), preset_t_end(name)).refined(p.refine);
    return ScenarioConfig{std::string(name), spectral, SqueezeParam(p.r), grid, regime_classify(spectral),
                          true, kDefaultClampEps, OutputPolicy{}};
}

TrajectoryReport run_scenario(const ScenarioConfig& cfg) {
    const auto kernel = MemoryKernel::ohmic_family(cfg.spectral);
    const auto traj = extract_rates(solve_u(kernel, cfg.grid), cfg.clamp_eps);
    const std::size_t n = traj.u.size();

    std::vector<double> times(n);
    for (std::size_t j = 0; j < n; ++j) times[j] = cfg.grid.time(j);
    std::vector<double> e_n(n);
    for (std::size_t j = 0; j < n; ++j) e_n[j] = log_negativity(traj.u[j], cfg.squeeze);

    std::optional<std::vector<double>> e_n_markov;
    std::optional<MarkovCoefficients> markov;
    if (cfg.include_markov_reference) {
        markov = markov_coefficients(cfg.spectral);
        std::vector<double> en(n);
        for (std::size_t j = 0; j < n; ++j) {
            const cplx um = std::exp(-cplx{markov->gamma_m, markov->omega_m} * times[j]);
            en[j] = log_negativity(um, cfg.squeeze);
        }
        e_n_markov = std::move(en);
    }

    return TrajectoryReport{
        std::move(times),
        traj.u,
        traj.gamma,
        traj.omega,
        std::move(e_n),
        std::move(e_n_markov),
        markov ? std::optional<double>(markov->gamma_m) : std::nullopt,
        markov ? std::optional<double>(markov->omega_m) : std::nullopt,
        ReportMetadata{cfg, regime_classify(cfg.spectral), RegimeThresholds{}, cfg.grid.dt(), kNormTolerance,
                       code_version(), std::nullopt},
    };
}

std::string to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::Eta: return "eta";
        case SweepAxis::OmegaC: return "omega_c";
        case SweepAxis::R: return "r";
    }
    return "eta";
}

SweepAxis parse_sweep_axis(std::string_view name) {
    if (name == "eta") return SweepAxis::Eta;
    if (name == "omega_c") return SweepAxis::OmegaC;
    if (name == "r") return SweepAxis::R;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "' (expected eta, omega_c or r)");
}

ScenarioConfig with_parameter(const ScenarioConfig& base, SweepAxis axis, double value) {
    ScenarioConfig cfg = base;
    const auto& s = base.spectral;
    switch (axis) {
        case SweepAxis::Eta: cfg.spectral = SpectralParams(value, s.omega_c(), s.n()); break;
        case SweepAxis::OmegaC: cfg.spectral = SpectralParams(s.eta(), value, s.n()); break;
        case SweepAxis::R: cfg.squeeze = SqueezeParam(value); break;
    }
    if (axis != SweepAxis::R) {
        const auto needed = EvolutionGrid::resolving(MemoryKernel::ohmic_family(cfg.spectral), base.grid.t_end());
        if (needed.steps() > base.grid.steps()) cfg.grid = needed;
        cfg.regime_label = regime_classify(cfg.spectral);
        cfg.preset.clear();
    }
    return cfg;
}

std::vector<TrajectoryReport> sweep(const ScenarioConfig& base, SweepAxis axis,
                                    std::span<const double> values, unsigned workers) {
    const std::size_t count = values.size();
    std::vector<std::optional<TrajectoryReport>> results(count);
    std::vector<std::exception_ptr> errors(count);

    auto run_one = [&](std::size_t i) {
        try {
            if (!std::isfinite(values[i])) throw std::invalid_argument("value is not finite");
            auto rep = run_scenario(with_parameter(base, axis, values[i]));
            rep.metadata.swept = std::make_pair(to_string(axis), values[i]);
            results[i] = std::move(rep);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            run_one(i);
            if (errors[i]) break;
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) run_one(i);
            });
    }

    for (std::size_t i = 0; i < count; ++i) {
        if (!errors[i]) continue;
        std::ostringstream os;
        os << "sweep over " << to_string(axis) << " failed at value " << values[i] << ": ";
        try {
            std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
            os << e.what();
        }
        throw SweepError(os.str(), values[i]);
    }

    std::vector<TrajectoryReport> out;
    out.reserve(count);
    for (auto& r : results) out.push_back(std::move(*r));
    return out;
}

}  // namespace nmsq
