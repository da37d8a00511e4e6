// report_io.hpp: CSV and plot-script emission plus the run manifest.

#pragma once

#include "nmsq/scenarios.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nmsq {

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 12 fractional digits, exponent without sign padding: 2.885390081777e0, 1.000000000000e-3.
// NaN is written as "nan"; -0 as 0.
std::string format_scientific(double v);

inline constexpr std::string_view kCsvHeader = "t_omega0,re_u,im_u,abs_u,gamma,omega,e_n";

std::string csv_header(const TrajectoryReport& rep);

// LF line endings, comma separated, undefined rates as nan.
std::string csv_text(const TrajectoryReport& rep);

struct ManifestEntry {
    std::string file;    // relative to the output directory
    std::string sha256;  // lowercase hex
    std::size_t bytes;
};

std::string sha256_hex(std::string_view data);

// Writes `text` to `dest` byte for byte; entry.file is the file name.
ManifestEntry write_file(const std::filesystem::path& dest, std::string_view text);

ManifestEntry emit_csv(const TrajectoryReport& rep, const std::filesystem::path& dest);

// gnuplot script: Gamma(t) panel above E_N(t), Markov curves dashed.
// `csv_name` is the CSV path relative to the script.
std::string plot_script_text(const TrajectoryReport& rep, const std::string& csv_name, const std::string& image_name);

ManifestEntry emit_plot_script(const TrajectoryReport& rep, const std::filesystem::path& dest,
                               const std::filesystem::path& csv_path);

struct RunManifest {
    std::string source;  // preset name or config path
    std::string output_dir;
    std::vector<ManifestEntry> files;
    double clamp_eps;
    double norm_tolerance;
    std::string timestamp;  // UTC, ISO 8601
    nlohmann::ordered_json config;
    std::string code_version;
};

nlohmann::ordered_json manifest_to_json(const RunManifest& m);

std::string utc_timestamp();

}  // namespace nmsq
