// config.hpp: scenario documents.
//
// JSON schema (unknown keys are rejected):
//
//   {
//     "preset":  "fig1" | "fig2" | "fig3",             optional, other sections override it
//     "spectral": {"eta": >=0, "omega_c": >0, "n": >0 (default 1)},
//     "state":    {"r": >=0},
//     "grid":     {"t_end": >0, "steps": integer >= 2 (default: resolves the kernel)},
//     "solver":   {"clamp_eps": >=0 (default 1e-8)},
//     "output":   {"markov_reference": bool, "csv": bool, "plots": bool}
//   }
//
// Without a preset, spectral.eta, spectral.omega_c, state.r and grid.t_end are required.
// A bare preset name ("fig2") is also accepted as a document.

#pragma once

#include "nmsq/scenarios.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nmsq {

// what() reads "[file: ][key.path: ]message".
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key_path, const std::string& message, const std::string& file = {})
        : std::runtime_error(compose(key_path, message, file)),
          key_path_(key_path),
          message_(message),
          file_(file) {}

    const std::string& key_path() const noexcept { return key_path_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& file() const noexcept { return file_; }

private:
    static std::string compose(const std::string& key, const std::string& msg, const std::string& file) {
        std::string out;
        if (!file.empty()) out += file + ": ";
        if (!key.empty()) out += key + ": ";
        return out + msg;
    }

    std::string key_path_;
    std::string message_;
    std::string file_;
};

ScenarioConfig parse_config(std::string_view text);

// Errors are prefixed with the file path.
ScenarioConfig load_config(const std::filesystem::path& path);

// Full document that parse_config maps back to an equal ScenarioConfig.
nlohmann::ordered_json config_to_json(const ScenarioConfig& cfg);

}  // namespace nmsq
