// nmsq: command-line front end.
//
//   nmsq simulate (--preset NAME | --config FILE) [--out DIR]
//   nmsq sweep    (--preset NAME | --config FILE) --axis eta|omega_c|r --values v1,v2,... [--out DIR] [--workers N]
//   nmsq verify   [--level quick|full]
//   nmsq markov   (--preset NAME | --config FILE)
//
// Exit codes: 0 success, 1 usage/config error, 2 numerical fault, 3 verification failure.

#include "nmsq/config.hpp"
#include "nmsq/gaussian.hpp"
#include "nmsq/report_io.hpp"
#include "nmsq/scenarios.hpp"
#include "nmsq/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kNumerical = 2, kVerification = 3 };

struct Source {
    std::string preset;
    std::string config;

    nmsq::ScenarioConfig load() const {
        if (!preset.empty() && !config.empty()) throw CLI::ValidationError("--preset and --config are exclusive");
        if (!preset.empty()) {
            try {
                return nmsq::ScenarioConfig::from_preset(preset);
            } catch (const std::invalid_argument& e) {
                throw nmsq::ConfigError("--preset", e.what());
            }
        }
        if (!config.empty()) return nmsq::load_config(config);
        throw CLI::ValidationError("one of --preset or --config is required");
    }

    std::string name() const { return !preset.empty() ? preset : fs::path(config).stem().string(); }
    std::string label() const { return !preset.empty() ? preset : config; }
};

void add_source(CLI::App* cmd, Source& src) {
    auto* p = cmd->add_option("--preset", src.preset, "Named scenario: fig1, fig2 or fig3");
    auto* c = cmd->add_option("--config", src.config, "Scenario document (JSON)");
    p->excludes(c);
}

unsigned worker_count(const CLI::Option* flag, unsigned flag_value) {
    if (flag->count() > 0) return std::max(1u, flag_value);
    if (const char* env = std::getenv("NMSQ_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw nmsq::ConfigError("NMSQ_WORKERS", std::string("must be a positive integer (got '") + env + "')");
    }
    return 1;
}

nmsq::RunManifest new_manifest(const Source& src, const fs::path& out, const nmsq::ScenarioConfig& cfg) {
    return {src.label(), out.generic_string(), {}, cfg.clamp_eps, nmsq::kNormTolerance, nmsq::utc_timestamp(),
            nmsq::config_to_json(cfg), nmsq::code_version()};
}

void emit(const nmsq::TrajectoryReport& rep, const fs::path& out, const std::string& stem, nmsq::RunManifest& m) {
    const auto& policy = rep.metadata.config.output;
    const auto csv = out / (stem + ".csv");
    if (policy.csv || policy.plots) m.files.push_back(nmsq::emit_csv(rep, csv));
    if (policy.plots) m.files.push_back(nmsq::emit_plot_script(rep, out / (stem + ".gp"), csv));
}

void write_manifest(const nmsq::RunManifest& m, const fs::path& out) {
    nmsq::write_file(out / "manifest.json", nmsq::manifest_to_json(m).dump(2) + "\n");
}

void prepare(const fs::path& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw nmsq::OutputError(out.string() + ": " + ec.message());
}

std::string value_tag(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact non-Markovian entanglement dynamics of a two-mode squeezed state"};
    app.require_subcommand(1);

    Source sim_src;
    std::string sim_out = "out";
    auto* simulate = app.add_subcommand("simulate", "Run one scenario and write CSV, plot script and manifest");
    add_source(simulate, sim_src);
    simulate->add_option("--out", sim_out, "Output directory");

    Source sweep_src;
    std::string sweep_out = "out", axis;
    std::vector<double> values;
    unsigned workers = 1;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario over a list of parameter values");
    add_source(sweep_cmd, sweep_src);
    sweep_cmd->add_option("--axis", axis, "Parameter to sweep")->required()->check(
        CLI::IsMember({"eta", "omega_c", "r"}));
    sweep_cmd->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
    sweep_cmd->add_option("--out", sweep_out, "Output directory");
    auto* workers_opt = sweep_cmd->add_option("--workers", workers, "Concurrent runs (default: NMSQ_WORKERS or 1)");

    std::string level = "quick";
    auto* verify_cmd = app.add_subcommand("verify", "Run the self-verification suite");
    verify_cmd->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

    Source markov_src;
    auto* markov = app.add_subcommand("markov", "Print the Markov-limit decay rate and frequency");
    add_source(markov, markov_src);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*simulate) {
            const auto cfg = sim_src.load();
            const auto rep = nmsq::run_scenario(cfg);
            const fs::path out(sim_out);
            prepare(out);
            auto manifest = new_manifest(sim_src, out, cfg);
            emit(rep, out, sim_src.name(), manifest);
            write_manifest(manifest, out);
            std::cout << "wrote " << manifest.files.size() << " files to " << out.string() << "\n";
        } else if (*sweep_cmd) {
            const auto base = sweep_src.load();
            const auto ax = nmsq::parse_sweep_axis(axis);
            const auto reports = nmsq::sweep(base, ax, values, worker_count(workers_opt, workers));
            const fs::path out(sweep_out);
            prepare(out);
            auto manifest = new_manifest(sweep_src, out, base);
            for (std::size_t i = 0; i < reports.size(); ++i)
                emit(reports[i], out, sweep_src.name() + "_" + axis + "_" + value_tag(values[i]), manifest);
            write_manifest(manifest, out);
            std::cout << "wrote " << manifest.files.size() << " files to " << out.string() << "\n";
        } else if (*verify_cmd) {
            const auto summary = nmsq::verify(nmsq::parse_verify_level(level), &std::cout);
            std::size_t failed = 0;
            for (const auto& r : summary.results) failed += !r.check.passed;
            std::cout << (summary.results.size() - failed) << "/" << summary.results.size() << " checks passed in "
                      << summary.seconds << " s\n";
            return summary.passed() ? kOk : kVerification;
        } else if (*markov) {
            const auto cfg = markov_src.load();
            const auto m = nmsq::markov_coefficients(cfg.spectral);
            std::cout.precision(12);
            std::cout << "gamma_markov " << m.gamma_m << "\n"
                      << "omega_markov " << m.omega_m << "\n"
                      << "regime " << nmsq::to_string(nmsq::regime_classify(cfg.spectral)) << "\n";
        }
    } catch (const nmsq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const nmsq::OutputError& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kUsage;
    } catch (const nmsq::SweepError& e) {
        std::cerr << "sweep error: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical fault: " << e.what() << "\n";
        return kNumerical;
    }
    return kOk;
}
