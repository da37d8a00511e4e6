// scenarios.hpp: experiment presets and the full u(t) -> Gamma(t), E_N(t) pipeline.

#pragma once

#include "nmsq/gaussian.hpp"
#include "nmsq/kernels.hpp"
#include "nmsq/volterra.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nmsq {

enum class Regime { MarkovianLike, Resonant, StrongMemory, Custom };

std::string to_string(Regime r);

// Thresholds on omega_c / omega_0.
struct RegimeThresholds {
    double markovian = 10.0;
    double resonant = 0.5;
};

Regime regime_classify(const SpectralParams& p, const RegimeThresholds& th = {});

struct OutputPolicy {
    bool csv = true;
    bool plots = true;

    bool operator==(const OutputPolicy&) const = default;
};

struct ScenarioConfig {
    std::string preset;  // "fig1", "fig2", "fig3", or empty for a custom document
    SpectralParams spectral;
    SqueezeParam squeeze;
    EvolutionGrid grid;
    Regime regime_label = Regime::Custom;
    bool include_markov_reference = true;
    double clamp_eps = kDefaultClampEps;
    OutputPolicy output;

    bool operator==(const ScenarioConfig&) const = default;

    // Throws std::invalid_argument for unknown names.
    static ScenarioConfig from_preset(std::string_view name);
};

const std::vector<std::string>& preset_names();

// Preset end times: fig1 20/Gamma_M, fig2 50, fig3 200 (units of 1/omega_0).
double preset_t_end(std::string_view name);

struct ReportMetadata {
    ScenarioConfig config;
    Regime classified_regime;
    RegimeThresholds thresholds;
    double dt;
    double norm_tolerance;
    std::string code_version;
    std::optional<std::pair<std::string, double>> swept;
};

struct TrajectoryReport {
    std::vector<double> times;
    std::vector<cplx> u;
    std::vector<std::optional<double>> gamma_exact;
    std::vector<std::optional<double>> omega_exact;
    std::vector<double> e_n_exact;
    std::optional<std::vector<double>> e_n_markov;
    std::optional<double> gamma_markov;
    std::optional<double> omega_markov;
    ReportMetadata metadata;

    std::size_t size() const noexcept { return times.size(); }
};

const char* code_version() noexcept;

TrajectoryReport run_scenario(const ScenarioConfig& cfg);

enum class SweepAxis { Eta, OmegaC, R };

std::string to_string(SweepAxis a);
SweepAxis parse_sweep_axis(std::string_view name);

// base with one parameter replaced; the grid is refined if the new kernel needs it
// and the regime label is reclassified.
ScenarioConfig with_parameter(const ScenarioConfig& base, SweepAxis axis, double value);

class SweepError : public std::runtime_error {
public:
    SweepError(const std::string& what, double value) : std::runtime_error(what), value_(value) {}
    double value() const noexcept { return value_; }

private:
    double value_;
};

// Independent runs in input order; up to `workers` run concurrently.
std::vector<TrajectoryReport> sweep(const ScenarioConfig& base, SweepAxis axis,
                                    std::span<const double> values, unsigned workers = 1);

}  // namespace nmsq
