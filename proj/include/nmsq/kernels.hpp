// kernels.hpp: spectral densities, bath memory kernels and Markov-limit coefficients.
//
// Units: the system frequency omega_0 is fixed to 1. Frequencies and rates are
// in units of omega_0, times in units of 1/omega_0.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

namespace nmsq {

using cplx = std::complex<double>;

inline constexpr double kSystemFrequency = 1.0;

enum class BathClass { SubOhmic, Ohmic, SuperOhmic };

std::string to_string(BathClass c);

// J(w) = eta * w * (w / omega_c)^(n-1) * exp(-w / omega_c)
class SpectralParams {
public:
    SpectralParams(double eta, double omega_c, double n = 1.0);

    double eta() const noexcept { return eta_; }
    double omega_c() const noexcept { return omega_c_; }
    double n() const noexcept { return n_; }
    double omega_0() const noexcept { return kSystemFrequency; }

    BathClass classify() const noexcept;

    bool operator==(const SpectralParams&) const = default;

private:
    double eta_;
    double omega_c_;
    double n_;
};

double spectral_density(const SpectralParams& p, double omega);

// Verification-only kernel: mu(t) = (gamma*lambda/2) exp(-lambda t) exp(-i omega_0 t).
// The propagator equation has a closed-form solution for it.
struct LorentzianParams {
    double gamma;
    double lambda;
    double omega_0 = kSystemFrequency;

    bool operator==(const LorentzianParams&) const = default;
};

class MemoryKernel {
public:
    static MemoryKernel ohmic_family(const SpectralParams& p);
    static MemoryKernel lorentzian(double gamma, double lambda, double omega_0 = kSystemFrequency);

    // mu(t) = int_0^inf J(w) exp(-i w t) dw, t >= 0.
    cplx operator()(double t) const;

    double system_frequency() const noexcept;

    // Shortest time scale of the memory (1/omega_c or 1/lambda).
    double memory_time() const noexcept;

    bool is_lorentzian() const noexcept { return std::holds_alternative<LorentzianParams>(spec_); }
    const SpectralParams* spectral() const noexcept { return std::get_if<SpectralParams>(&spec_); }
    const LorentzianParams* lorentzian_params() const noexcept {
        return std::get_if<LorentzianParams>(&spec_);
    }

    // Same kernel with mu -> conj(mu) and omega_0 -> -omega_0.
    // Maps the propagator onto its complex conjugate.
    MemoryKernel conjugated() const;

private:
    using Spec = std::variant<SpectralParams, LorentzianParams>;
    explicit MemoryKernel(Spec s, bool conj = false) : spec_(s), conjugate_(conj) {}

    Spec spec_;
    bool conjugate_ = false;
};

inline cplx memory_kernel(const MemoryKernel& k, double t) { return k(t); }

struct MarkovCoefficients {
    double gamma_m;  // pi J(omega_0)
    double omega_m;  // omega_0 - P int J(w)/(w - omega_0) dw
};

struct MarkovOptions {
    double rel_tol = 1e-12;
    // Truncation of the principal-value integral, as multiples of max(omega_c, omega_0).
    double truncation_factor = 50.0;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double error_estimate)
        : std::runtime_error(what), error_estimate_(error_estimate) {}
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

// P int_0^inf J(w) / (w - w0) dw by singularity subtraction on [0, Lambda] plus
// the log term and an incomplete-gamma tail.
double principal_value_shift(const SpectralParams& p, const MarkovOptions& opt = {});

MarkovCoefficients markov_coefficients(const SpectralParams& p, const MarkovOptions& opt = {});

}  // namespace nmsq
