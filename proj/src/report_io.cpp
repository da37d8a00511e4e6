#include "nmsq/report_io.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace nmsq {

std::string format_scientific(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    std::string s(buf);
    const auto e = s.find('e');
    std::string mantissa = s.substr(0, e);
    const int exponent = std::stoi(s.substr(e + 1));
    return mantissa + "e" + std::to_string(exponent);
}

std::string csv_header(const TrajectoryReport& rep) {
    std::string h(kCsvHeader);
    if (rep.e_n_markov) h += ",e_n_markov";
    if (rep.gamma_markov) h += ",gamma_markov";
    return h;
}

std::string csv_text(const TrajectoryReport& rep) {
    std::string out = csv_header(rep);
    out += '\n';
    const auto opt = [](const std::optional<double>& v) { return format_scientific(v ? *v : std::nan("")); };
    for (std::size_t j = 0; j < rep.size(); ++j) {
        out += format_scientific(rep.times[j]);
        out += ',' + format_scientific(rep.u[j].real());
        out += ',' + format_scientific(rep.u[j].imag());
        out += ',' + format_scientific(std::abs(rep.u[j]));
        out += ',' + opt(rep.gamma_exact[j]);
        out += ',' + opt(rep.omega_exact[j]);
        out += ',' + format_scientific(rep.e_n_exact[j]);
        if (rep.e_n_markov) out += ',' + format_scientific((*rep.e_n_markov)[j]);
        if (rep.gamma_markov) out += ',' + format_scientific(*rep.gamma_markov);
        out += '\n';
    }
    return out;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

ManifestEntry write_file(const std::filesystem::path& dest, std::string_view text) {
    std::ofstream out(dest, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError(dest.string() + ": cannot open for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw OutputError(dest.string() + ": write failed");
    return {dest.filename().string(), sha256_hex(text), text.size()};
}

ManifestEntry emit_csv(const TrajectoryReport& rep, const std::filesystem::path& dest) {
    return write_file(dest, csv_text(rep));
}

std::string plot_script_text(const TrajectoryReport& rep, const std::string& csv_name,
                             const std::string& image_name) {
    const auto& cfg = rep.metadata.config;
    const bool markov = rep.e_n_markov.has_value();
    std::ostringstream os;
    os.precision(17);
    os << "# Gamma(t) and E_N(t) against omega_0 t\n"
       << "# eta = " << cfg.spectral.eta() << ", omega_c/omega_0 = " << cfg.spectral.omega_c()
       << ", n = " << cfg.spectral.n() << ", r = " << cfg.squeeze.r() << "\n"
       << "set datafile separator ','\n"
       << "set terminal pngcairo size 800,900 enhanced\n"
       << "set output '" << image_name << "'\n"
       << "set multiplot layout 2,1\n"
       << "set xrange [0:" << rep.times.back() << "]\n"
       << "set xlabel '{/Symbol w}_0 t'\n"
       << "set key top right\n"
       << "\n"
       << "set ylabel '{/Symbol G}(t)/{/Symbol w}_0'\n"
       << "plot '" << csv_name << "' using 1:5 with lines lw 2 lc rgb 'black' title 'exact'";
    if (markov)
        os << ", \\\n     '' using 1:9 with lines lw 2 dt 2 lc rgb 'black' title 'Markov'";
    os << "\n\n"
       << "set ylabel 'E_N(t)'\n"
       << "plot '" << csv_name << "' using 1:7 with lines lw 2 lc rgb 'black' title 'exact'";
    if (markov)
        os << ", \\\n     '' using 1:8 with lines lw 2 dt 2 lc rgb 'black' title 'Markov'";
    os << "\n\n"
       << "unset multiplot\n";
    return os.str();
}

ManifestEntry emit_plot_script(const TrajectoryReport& rep, const std::filesystem::path& dest,
                               const std::filesystem::path& csv_path) {
    const auto base = dest.parent_path().empty() ? std::filesystem::path(".") : dest.parent_path();
    const auto csv_rel = std::filesystem::path(csv_path).lexically_proximate(base).generic_string();
    auto image = dest.filename();
    image.replace_extension(".png");
    return write_file(dest, plot_script_text(rep, csv_rel, image.string()));
}

nlohmann::ordered_json manifest_to_json(const RunManifest& m) {
    nlohmann::ordered_json doc;
    doc["source"] = m.source;
    doc["output_dir"] = m.output_dir;
    doc["code_version"] = m.code_version;
    doc["timestamp"] = m.timestamp;
    doc["tolerances"] = {{"clamp_eps", m.clamp_eps}, {"norm_tolerance", m.norm_tolerance}};
    doc["config"] = m.config;
    auto files = nlohmann::ordered_json::array();
    for (const auto& f : m.files) files.push_back({{"file", f.file}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    doc["files"] = files;
    return doc;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace nmsq
