#include "nmsq/gaussian.hpp"

#include <quadmath.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nmsq {

SqueezeParam::SqueezeParam(double r) : r_(r) {
    if (!(std::isfinite(r) && r >= 0.0)) throw std::invalid_argument("state.r must be finite and >= 0");
}

StateCoefficients state_coefficients(cplx u, SqueezeParam s) {
    double mod = std::abs(u);
    if (!(mod <= 1.0 + kNormTolerance)) {
        std::ostringstream os;
        os << "state_coefficients: |u| = " << mod << " exceeds 1";
        throw std::invalid_argument(os.str());
    }
    if (mod > 1.0) {
        u /= mod;
        mod = 1.0;
    }
    const double th = std::tanh(s.r());
    const double ch = std::cosh(s.r());
    const double mod2 = mod * mod;
    const double loss = 1.0 - mod2;
    const double denom = 1.0 - th * th * loss * loss;
    return {1.0 / (ch * ch * denom), -th * u * u / denom, th * th * loss * mod2 / denom};
}

CovarianceMatrix::CovarianceMatrix(const Matrix& v, bool partially_transposed)
    : v_(v), transposed_(partially_transposed) {
    if (!v.allFinite()) throw std::invalid_argument("covariance matrix has non-finite entries");
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
    if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("covariance matrix is not symmetric");
}

CovarianceMatrix CovarianceMatrix::vacuum() { return CovarianceMatrix(0.5 * Matrix::Identity()); }

CovarianceMatrix covariance(const StateCoefficients& sc) {
    const double one_c = 1.0 - sc.c;
    const double b2 = std::norm(sc.b);
    if (!(one_c > 0.0)) throw DegenerateStateError("covariance: 1 - c must be positive");
    const double gap = one_c * one_c - b2;
    const double x = gap * gap;
    const double y = sc.a / one_c;
    const double d = sc.c + b2 / one_c;
    if (!(x > 0.0) || !(d < 1.0))
        throw DegenerateStateError("covariance: degenerate coefficients (x -> 0 or d -> 1)");

    const double s = y * (1.0 + d) / (2.0 * (1.0 - d) * (1.0 - d));
    const double re = sc.a * sc.b.real() / x;
    const double im = sc.a * sc.b.imag() / x;

    CovarianceMatrix::Matrix v;
    // clang-format off
    v << s,   0.0, re,  im,
         0.0, s,   im,  -re,
         re,  im,  s,   0.0,
         im,  -re, 0.0, s;
    // clang-format on
    return CovarianceMatrix(v);
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& v) {
    const Eigen::Vector4d lambda(1.0, 1.0, 1.0, -1.0);
    CovarianceMatrix::Matrix t = lambda.asDiagonal() * v.matrix() * lambda.asDiagonal();
    return CovarianceMatrix(t, !v.partially_transposed());
}

Eigen::Matrix4d symplectic_form() {
    Eigen::Matrix4d u = Eigen::Matrix4d::Zero();
    u(0, 1) = 1.0;
    u(1, 0) = -1.0;
    u(2, 3) = 1.0;
    u(3, 2) = -1.0;
    return u;
}

namespace {

using quad = __float128;

quad det2(const CovarianceMatrix::Matrix& m, int r, int c) {
    return quad(m(r, c)) * m(r + 1, c + 1) - quad(m(r, c + 1)) * m(r + 1, c);
}

// Laplace expansion along the first two rows.
quad det4(const CovarianceMatrix::Matrix& m) {
    const auto minor = [&m](int row, int c0, int c1) {
        return quad(m(row, c0)) * m(row + 1, c1) - quad(m(row, c1)) * m(row + 1, c0);
    };
    constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    constexpr int sign[6] = {1, -1, 1, 1, -1, 1};
    quad det = 0;
    for (int i = 0; i < 6; ++i) {
        const int* comp = pairs[5 - i];
        det += sign[i] * minor(0, pairs[i][0], pairs[i][1]) * minor(2, comp[0], comp[1]);
    }
    return det;
}

}  // namespace

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& v) {
    // The discriminant cancels catastrophically for (nearly) degenerate spectra,
    // so the invariants are accumulated in quad precision.
    const auto& m = v.matrix();
    const quad det_a = det2(m, 0, 0);
    const quad det_b = det2(m, 2, 2);
    const quad det_c = det2(m, 0, 2);
    const quad det_v = det4(m);
    const quad delta = det_a + det_b + 2 * det_c;

    quad disc = delta * delta - 4 * det_v;
    const quad scale = std::max(quad(1), delta * delta);
    if (disc < -1e-10 * scale) {
        std::ostringstream os;
        os << "symplectic_spectrum: negative discriminant " << static_cast<double>(disc) << " (unphysical input)";
        throw std::domain_error(os.str());
    }
    if (disc < 0) disc = 0;

    const quad large2 = (delta + sqrtq(disc)) / 2;
    if (!(large2 > 0) || !(det_v > 0))
        throw std::domain_error("symplectic_spectrum: covariance matrix is not positive definite");
    // nu_-^2 nu_+^2 = det V avoids the cancellation in (delta - sqrt(disc)) / 2.
    const quad small2 = det_v / large2;
    return {{static_cast<double>(sqrtq(small2)), static_cast<double>(sqrtq(large2))}, v.partially_transposed()};
}

SymplecticSpectrum symplectic_spectrum_eigen(const CovarianceMatrix& v) {
    const Eigen::Matrix4d uv = symplectic_form() * v.matrix();
    Eigen::EigenSolver<Eigen::Matrix4d> solver(uv, false);
    if (solver.info() != Eigen::Success) throw std::domain_error("symplectic_spectrum_eigen: no convergence");
    std::array<double, 4> mod;
    for (int i = 0; i < 4; ++i) mod[i] = std::abs(solver.eigenvalues()[i]);
    std::sort(mod.begin(), mod.end());
    return {{0.5 * (mod[0] + mod[1]), 0.5 * (mod[2] + mod[3])}, v.partially_transposed()};
}

double log_negativity(const SymplecticSpectrum& spectrum) {
    if (!spectrum.tilde)
        throw std::invalid_argument("log_negativity: spectrum must come from a partially transposed matrix");
    return std::max(0.0, -std::log2(2.0 * spectrum.min()));
}

double log_negativity(cplx u, SqueezeParam s) {
    return log_negativity(symplectic_spectrum(partial_transpose(covariance(state_coefficients(u, s)))));
}

bool is_physical(const CovarianceMatrix& v, double tol) {
    if (v.partially_transposed()) return is_physical(partial_transpose(v), tol);
    try {
        return symplectic_spectrum(v).min() >= 0.5 - tol;
    } catch (const std::domain_error&) {
        return false;
    }
}

CovarianceMatrix covariance_from_moments(double n, cplx m) {
    const double s = 0.5 + n;
    const double re = m.real();
    const double im = m.imag();
    CovarianceMatrix::Matrix v;
    // clang-format off
    v << s,   0.0, re,  im,
         0.0, s,   im,  -re,
         re,  im,  s,   0.0,
         im,  -re, 0.0, s;
    // clang-format on
    return CovarianceMatrix(v);
}

std::vector<double> moment_ode_crosscheck(const PropagatorTrajectory& traj, SqueezeParam s) {
    if (!traj.has_rates()) throw std::invalid_argument("moment_ode_crosscheck: trajectory has no rates");
    const double dt = traj.grid.dt();
    const double sh = std::sinh(s.r());
    double n = sh * sh;
    cplx m = -sh * std::cosh(s.r());

    std::vector<double> errors;
    errors.reserve(traj.u.size());
    for (std::size_t j = 0; j < traj.u.size(); ++j) {
        if (!traj.gamma[j] || !traj.omega[j]) break;
        if (j > 0) {
            // Trapezoidal integral of the rates over [t_{j-1}, t_j].
            const cplx prev{*traj.gamma[j - 1], *traj.omega[j - 1]};
            const cplx curr{*traj.gamma[j], *traj.omega[j]};
            const cplx integral = 0.5 * dt * (prev + curr);
            n *= std::exp(-2.0 * integral.real());
            m *= std::exp(-2.0 * integral);
        }
        const auto ode = covariance_from_moments(n, m);
        const auto closed = covariance(state_coefficients(traj.u[j], s));
        errors.push_back((ode.matrix() - closed.matrix()).norm());
    }
    return errors;
}

}  // namespace nmsq
