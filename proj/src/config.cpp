#include "nmsq/config.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace nmsq {

namespace {

using json = nlohmann::json;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string show(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

const json* section(const json& doc, const std::string& name, const std::set<std::string>& keys) {
    if (!doc.contains(name)) return nullptr;
    const json& s = doc.at(name);
    if (!s.is_object()) throw ConfigError(name, "must be an object");
    for (const auto& [key, value] : s.items())
        if (!keys.count(key)) throw ConfigError(name + "." + key, "unknown key");
    return &s;
}

std::optional<double> number(const json* s, const std::string& sec, const std::string& key) {
    if (!s || !s->contains(key)) return std::nullopt;
    const json& v = s->at(key);
    if (!v.is_number()) throw ConfigError(sec + "." + key, "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(sec + "." + key, "must be finite");
    return d;
}

std::optional<bool> flag(const json* s, const std::string& sec, const std::string& key) {
    if (!s || !s->contains(key)) return std::nullopt;
    const json& v = s->at(key);
    if (!v.is_boolean()) throw ConfigError(sec + "." + key, "must be true or false");
    return v.get<bool>();
}

double require(std::optional<double> v, const std::string& path) {
    if (!v) throw ConfigError(path, "missing required key");
    return *v;
}

void check(bool ok, const std::string& path, const std::string& what, double value) {
    if (!ok) throw ConfigError(path, what + " (got " + show(value) + ")");
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error&) {
        // A bare preset name is a valid document.
        const std::string name = trim(text);
        for (const auto& p : preset_names())
            if (name == p) return ScenarioConfig::from_preset(name);
        throw ConfigError("", "not a JSON document or preset name");
    }
    if (doc.is_string()) {
        const auto name = doc.get<std::string>();
        try {
            return ScenarioConfig::from_preset(name);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("preset", e.what());
        }
    }
    if (!doc.is_object()) throw ConfigError("", "document must be an object");

    static const std::set<std::string> top{"preset", "spectral", "state", "grid", "solver", "output"};
    for (const auto& [key, value] : doc.items())
        if (!top.count(key)) throw ConfigError(key, "unknown key");

    std::optional<ScenarioConfig> base;
    if (doc.contains("preset")) {
        if (!doc["preset"].is_string()) throw ConfigError("preset", "must be a string");
        try {
            base = ScenarioConfig::from_preset(doc["preset"].get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError("preset", e.what());
        }
    }

    const json* spectral = section(doc, "spectral", {"eta", "omega_c", "n"});
    const json* state = section(doc, "state", {"r"});
    const json* grid = section(doc, "grid", {"t_end", "steps"});
    const json* solver = section(doc, "solver", {"clamp_eps"});
    const json* output = section(doc, "output", {"markov_reference", "csv", "plots"});

    auto eta = number(spectral, "spectral", "eta");
    auto omega_c = number(spectral, "spectral", "omega_c");
    auto n = number(spectral, "spectral", "n");
    auto r = number(state, "state", "r");
    auto t_end = number(grid, "grid", "t_end");
    auto clamp = number(solver, "solver", "clamp_eps");

    std::optional<std::size_t> steps;
    if (grid && grid->contains("steps")) {
        const json& v = grid->at("steps");
        if (!v.is_number_integer()) throw ConfigError("grid.steps", "must be an integer");
        if (v.is_number_unsigned() ? v.get<std::uint64_t>() < 2 : v.get<std::int64_t>() < 2)
            throw ConfigError("grid.steps", "must be >= 2 (got " + v.dump() + ")");
        steps = v.get<std::size_t>();
    }

    if (!base) {
        eta = require(eta, "spectral.eta");
        omega_c = require(omega_c, "spectral.omega_c");
        r = require(r, "state.r");
        t_end = require(t_end, "grid.t_end");
    }
    const double eta_v = eta.value_or(base ? base->spectral.eta() : 0.0);
    const double wc_v = omega_c.value_or(base ? base->spectral.omega_c() : 1.0);
    const double n_v = n.value_or(base ? base->spectral.n() : 1.0);
    const double r_v = r.value_or(base ? base->squeeze.r() : 0.0);
    check(eta_v >= 0.0, "spectral.eta", "must be >= 0", eta_v);
    check(wc_v > 0.0, "spectral.omega_c", "must be > 0", wc_v);
    check(n_v > 0.0, "spectral.n", "must be > 0", n_v);
    check(r_v >= 0.0, "state.r", "must be >= 0", r_v);
    if (t_end) check(*t_end > 0.0, "grid.t_end", "must be > 0", *t_end);
    if (clamp) check(*clamp >= 0.0, "solver.clamp_eps", "must be >= 0", *clamp);

    const SpectralParams sp(eta_v, wc_v, n_v);
    const SqueezeParam sq(r_v);

    const double t_end_v = t_end.value_or(base ? base->grid.t_end() : 0.0);
    std::optional<EvolutionGrid> g;
    if (steps) {
        g = EvolutionGrid(t_end_v, *steps);
    } else if (base && !t_end && sp == base->spectral) {
        g = base->grid;
    } else {
        g = EvolutionGrid::resolving(MemoryKernel::ohmic_family(sp), t_end_v);
    }

    ScenarioConfig cfg = base ? *base : ScenarioConfig{"", sp, sq, *g, Regime::Custom, true, kDefaultClampEps, OutputPolicy{}};
    const bool same_physics = base && sp == base->spectral && sq == base->squeeze;
    if (!same_physics) {
        cfg.preset.clear();
        cfg.regime_label = Regime::Custom;
    }
    cfg.spectral = sp;
    cfg.squeeze = sq;
    cfg.grid = *g;
    if (clamp) cfg.clamp_eps = *clamp;
    if (auto v = flag(output, "output", "markov_reference")) cfg.include_markov_reference = *v;
    if (auto v = flag(output, "output", "csv")) cfg.output.csv = *v;
    if (auto v = flag(output, "output", "plots")) cfg.output.plots = *v;
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open config file", path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(e.key_path(), e.message(), path.string());
    }
}

nlohmann::ordered_json config_to_json(const ScenarioConfig& cfg) {
    nlohmann::ordered_json doc;
    if (!cfg.preset.empty()) doc["preset"] = cfg.preset;
    doc["spectral"] = {{"eta", cfg.spectral.eta()}, {"omega_c", cfg.spectral.omega_c()}, {"n", cfg.spectral.n()}};
    doc["state"] = {{"r", cfg.squeeze.r()}};
    doc["grid"] = {{"t_end", cfg.grid.t_end()}, {"steps", cfg.grid.steps()}};
    doc["solver"] = {{"clamp_eps", cfg.clamp_eps}};
    doc["output"] = {{"markov_reference", cfg.include_markov_reference},
                     {"csv", cfg.output.csv},
                     {"plots", cfg.output.plots}};
    return doc;
}

}  // namespace nmsq
