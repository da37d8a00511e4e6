#include "nmsq/kernels.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace nmsq {

std::string to_string(BathClass c) {
    switch (c) {
        case BathClass::SubOhmic: return "sub-ohmic";
        case BathClass::Ohmic: return "ohmic";
        case BathClass::SuperOhmic: return "super-ohmic";
    }
    return "unknown";
}

SpectralParams::SpectralParams(double eta, double omega_c, double n)
    : eta_(eta), omega_c_(omega_c), n_(n) {
    if (!(std::isfinite(eta) && eta >= 0.0))
        throw std::invalid_argument("spectral.eta must be finite and >= 0");
    if (!(std::isfinite(omega_c) && omega_c > 0.0))
        throw std::invalid_argument("spectral.omega_c must be finite and > 0");
    if (!(std::isfinite(n) && n > 0.0))
        throw std::invalid_argument("spectral.n must be finite and > 0");
}

BathClass SpectralParams::classify() const noexcept {
    if (n_ == 1.0) return BathClass::Ohmic;
    return n_ < 1.0 ? BathClass::SubOhmic : BathClass::SuperOhmic;
}

double spectral_density(const SpectralParams& p, double omega) {
    if (!(omega >= 0.0)) throw std::invalid_argument("spectral_density: omega must be >= 0");
    if (p.eta() == 0.0 || omega == 0.0) {
        // w^n vanishes at 0 for every n > 0
        return 0.0;
    }
    const double x = omega / p.omega_c();
    return p.eta() * omega * std::pow(x, p.n() - 1.0) * std::exp(-x);
}

MemoryKernel MemoryKernel::ohmic_family(const SpectralParams& p) { return MemoryKernel(p); }

MemoryKernel MemoryKernel::lorentzian(double gamma, double lambda, double omega_0) {
    if (!(std::isfinite(gamma) && gamma > 0.0))
        throw std::invalid_argument("lorentzian kernel: gamma must be > 0");
    if (!(std::isfinite(lambda) && lambda > 0.0))
        throw std::invalid_argument("lorentzian kernel: lambda must be > 0");
    if (!std::isfinite(omega_0)) throw std::invalid_argument("lorentzian kernel: omega_0 must be finite");
    return MemoryKernel(LorentzianParams{gamma, lambda, omega_0});
}

cplx MemoryKernel::operator()(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("memory_kernel: t must be >= 0");
    cplx mu;
    if (const auto* p = std::get_if<SpectralParams>(&spec_)) {
        if (p->eta() == 0.0) return {0.0, 0.0};
        const double wc = p->omega_c();
        const double scale = p->eta() * wc * wc * std::tgamma(p->n() + 1.0);
        const cplx z{1.0, wc * t};
        mu = p->n() == 1.0 ? scale / (z * z) : scale * std::pow(z, -(p->n() + 1.0));
    } else {
        const auto& l = std::get<LorentzianParams>(spec_);
        mu = 0.5 * l.gamma * l.lambda * std::exp(-l.lambda * t) * std::polar(1.0, -l.omega_0 * t);
    }
    return conjugate_ ? std::conj(mu) : mu;
}

double MemoryKernel::system_frequency() const noexcept {
    double w0 = kSystemFrequency;
    if (const auto* l = std::get_if<LorentzianParams>(&spec_)) w0 = l->omega_0;
    return conjugate_ ? -w0 : w0;
}

double MemoryKernel::memory_time() const noexcept {
    if (const auto* p = std::get_if<SpectralParams>(&spec_)) return 1.0 / p->omega_c();
    return 1.0 / std::get<LorentzianParams>(spec_).lambda;
}

MemoryKernel MemoryKernel::conjugated() const { return MemoryKernel(spec_, !conjugate_); }

namespace {

using boost::math::quadrature::gauss_kronrod;

double checked(double value, double err, double tol, const char* what) {
    if (!std::isfinite(value) || err > tol) {
        std::ostringstream os;
        os << what << ": quadrature did not converge (error estimate " << err << ", tolerance " << tol
           << ")";
        throw QuadratureError(os.str(), err);
    }
    return value;
}

}  // namespace

double principal_value_shift(const SpectralParams& p, const MarkovOptions& opt) {
    if (p.eta() == 0.0) return 0.0;
    const double w0 = p.omega_0();
    const double j0 = spectral_density(p, w0);
    const double wc = p.omega_c();

    // Derivative of J at w0 for the removable point of the subtracted integrand.
    const double dj0 = j0 * (p.n() / w0 - 1.0 / wc);
    auto subtracted = [&](double w) {
        const double h = w - w0;
        if (std::abs(h) < 1e-10 * w0) return dj0;
        return (spectral_density(p, w) - j0) / h;
    };

    double lambda = opt.truncation_factor * std::max(wc, w0);
    for (int attempt = 0;; ++attempt) {
        // Leading-order tail: int_Lambda^inf J(w)/w dw = eta wc Gamma(n, Lambda/wc).
        const double tail = p.eta() * wc * boost::math::tgamma(p.n(), lambda / wc) * lambda / (lambda - w0);

        double err_lo = 0.0;
        boost::math::quadrature::tanh_sinh<double> ts;
        const double lower = ts.integrate(subtracted, 0.0, w0, std::sqrt(opt.rel_tol), &err_lo);

        double err_hi = 0.0;
        double upper = 0.0;
        // Piecewise over [w0, Lambda] in panels of max(wc, w0).
        double a = w0;
        double step = std::max(wc, w0);
        while (a < lambda) {
            const double b = std::min(lambda, a + step);
            double e = 0.0;
            upper += gauss_kronrod<double, 31>::integrate(subtracted, a, b, 15, opt.rel_tol, &e);
            err_hi += e;
            a = b;
        }

        const double log_term = j0 * std::log((lambda - w0) / w0);
        const double total = lower + upper + log_term + tail;
        const double scale = std::max(std::abs(total), p.eta() * wc);
        checked(total, err_lo + err_hi, 1e-8 * scale, "markov_coefficients");

        if (std::abs(tail) <= 1e-10 * scale || attempt >= 4) return total;
        lambda *= 2.0;
    }
}

MarkovCoefficients markov_coefficients(const SpectralParams& p, const MarkovOptions& opt) {
    const double w0 = p.omega_0();
    MarkovCoefficients m;
    m.gamma_m = std::numbers::pi * spectral_density(p, w0);
    m.omega_m = w0 - principal_value_shift(p, opt);
    return m;
}

}  // namespace nmsq
