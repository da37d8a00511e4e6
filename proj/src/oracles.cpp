#include "nmsq/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>

namespace nmsq::oracle {

namespace {

using boost::math::quadrature::gauss_kronrod;

// Integrates f over [0, upper] in panels of width `panel`; tanh-sinh on the first
// panel handles the w^(n-1) endpoint behaviour of sub-Ohmic densities.
template <class F>
double integrate_panels(F f, double lower, double upper, double panel) {
    double total = 0.0;
    double a = lower;
    bool first = true;
    while (a < upper) {
        const double b = std::min(upper, a + panel);
        if (first && lower == 0.0) {
            boost::math::quadrature::tanh_sinh<double> ts;
            total += ts.integrate(f, a, b, 1e-13);
        } else {
            total += gauss_kronrod<double, 61>::integrate(f, a, b, 10, 1e-14);
        }
        first = false;
        a = b;
    }
    return total;
}

double density(const SpectralParams& p, double w) {
    if (w <= 0.0) return 0.0;
    return p.eta() * w * std::pow(w / p.omega_c(), p.n() - 1.0) * std::exp(-w / p.omega_c());
}

}  // namespace

cplx ohmic_kernel_quadrature(const SpectralParams& p, double t) {
    const double wc = p.omega_c();
    // Drop the part of the band carrying less than 1e-17 of the total coupling.
    const double upper = wc * boost::math::gamma_q_inv(p.n() + 1.0, 1e-17);
    // Panels short enough to hold a few oscillations of exp(-i w t).
    double panel = wc;
    if (t > 0.0) panel = std::min(panel, 2.0 * M_PI / t);
    const double re = integrate_panels([&](double w) { return density(p, w) * std::cos(w * t); }, 0.0, upper, panel);
    const double im = integrate_panels([&](double w) { return -density(p, w) * std::sin(w * t); }, 0.0, upper, panel);
    return {re, im};
}

cplx lorentzian_propagator(double gamma, double lambda, double omega_0, double t) {
    const cplx kappa = std::sqrt(cplx{lambda * lambda - 2.0 * gamma * lambda, 0.0});
    const cplx envelope = std::exp(-cplx{0.5 * lambda, omega_0} * t);
    if (std::abs(kappa) < 1e-12) return envelope * (1.0 + 0.5 * lambda * t);
    const cplx arg = 0.5 * kappa * t;
    return envelope * (std::cosh(arg) + (lambda / kappa) * std::sinh(arg));
}

double principal_value_folded(const SpectralParams& p) {
    const double w0 = p.omega_0();
    auto folded = [&](double s) {
        if (s == 0.0) return 0.0;
        return (density(p, w0 + s) - density(p, w0 - s)) / s;
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    const double inner = ts.integrate(folded, 0.0, w0, 1e-13);
    const double upper = 2.0 * w0 + 80.0 * p.omega_c() * std::max(1.0, p.n());
    const double outer = integrate_panels([&](double w) { return density(p, w) / (w - w0); }, 2.0 * w0, upper,
                                          std::max(p.omega_c(), w0));
    return inner + outer;
}

double principal_value_ohmic_ei(const SpectralParams& p) {
    const double b = p.omega_0() / p.omega_c();
    return p.eta() * p.omega_c() - p.eta() * p.omega_0() * std::exp(-b) * boost::math::expint(b);
}

BoundState bound_state(const SpectralParams& p) {
    const double w0 = p.omega_0();
    const double upper = 80.0 * p.omega_c() * std::max(1.0, p.n());
    auto shift = [&](double e) {
        return integrate_panels([&](double w) { return density(p, w) / (w - e); }, 0.0, upper, p.omega_c());
    };
    // g(E) = E - w0 + int J/(w - E); g(0-) > 0 is the existence condition.
    auto g = [&](double e) { return e - w0 + shift(e); };
    const double at_zero = -w0 + p.eta() * p.omega_c() * std::tgamma(p.n());
    if (!(at_zero > 0.0)) return {false, 0.0, 0.0};

    double lo = -1.0;
    while (g(lo) > 0.0) lo *= 2.0;
    double hi = -1e-12;
    std::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
    const double e = 0.5 * (a + b);
    const double z = 1.0 / (1.0 + integrate_panels([&](double w) { return density(p, w) / ((w - e) * (w - e)); },
                                                    0.0, upper, p.omega_c()));
    return {true, e, z};
}

Eigen::Matrix4d two_mode_squeezed_vacuum(double r) {
    const double c = 0.5 * std::cosh(2.0 * r);
    const double s = 0.5 * std::sinh(2.0 * r);
    Eigen::Matrix4d v;
    // clang-format off
    v << c,   0.0, -s,  0.0,
         0.0, c,   0.0, s,
         -s,  0.0, c,   0.0,
         0.0, s,   0.0, c;
    // clang-format on
    return v;
}

Eigen::Matrix4d random_physical_covariance(std::mt19937_64& rng, double max_squeeze) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> squeeze(-max_squeeze, max_squeeze);
    std::uniform_real_distribution<double> excess(0.0, 1.5);

    auto rotation = [](int mode, double th) {
        Eigen::Matrix4d s = Eigen::Matrix4d::Identity();
        const int i = 2 * mode;
        s(i, i) = std::cos(th);
        s(i, i + 1) = std::sin(th);
        s(i + 1, i) = -std::sin(th);
        s(i + 1, i + 1) = std::cos(th);
        return s;
    };
    auto squeezer = [](int mode, double r) {
        Eigen::Matrix4d s = Eigen::Matrix4d::Identity();
        s(2 * mode, 2 * mode) = std::exp(-r);
        s(2 * mode + 1, 2 * mode + 1) = std::exp(r);
        return s;
    };
    auto beam_splitter = [](double th) {
        Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
        const double c = std::cos(th), sn = std::sin(th);
        for (int k = 0; k < 2; ++k) {
            s(k, k) = c;
            s(k, k + 2) = sn;
            s(k + 2, k) = -sn;
            s(k + 2, k + 2) = c;
        }
        return s;
    };

    Eigen::Matrix4d sym = Eigen::Matrix4d::Identity();
    for (int layer = 0; layer < 3; ++layer) {
        sym = rotation(0, angle(rng)) * rotation(1, angle(rng)) * sym;
        sym = squeezer(0, squeeze(rng)) * squeezer(1, squeeze(rng)) * sym;
        sym = beam_splitter(angle(rng)) * sym;
    }
    const double nu1 = 0.5 + excess(rng);
    const double nu2 = 0.5 + excess(rng);
    const Eigen::Vector4d thermal(nu1, nu1, nu2, nu2);
    Eigen::Matrix4d v = sym * thermal.asDiagonal() * sym.transpose();
    return 0.5 * (v + v.transpose());
}

}  // namespace nmsq::oracle
