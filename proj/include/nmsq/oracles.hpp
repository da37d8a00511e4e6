// oracles.hpp: independent reference computations used to check the main
// pipeline. None of these share code paths with kernels/volterra/gaussian.

#pragma once

#include "nmsq/kernels.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace nmsq::oracle {

// int_0^inf J(w) exp(-i w t) dw by adaptive quadrature.
cplx ohmic_kernel_quadrature(const SpectralParams& p, double t);

// Closed-form propagator for the Lorentzian kernel:
// exp(-(lambda/2 + i w0) t) [cosh(kappa t/2) + (lambda/kappa) sinh(kappa t/2)],
// kappa = sqrt(lambda^2 - 2 gamma lambda).
cplx lorentzian_propagator(double gamma, double lambda, double omega_0, double t);

// P int J/(w - w0) by folding the interval [0, 2 w0] onto itself:
// int_0^w0 [J(w0 + s) - J(w0 - s)]/s ds + int_{2 w0}^inf J/(w - w0) dw.
double principal_value_folded(const SpectralParams& p);

// Ohmic (n = 1) principal value in closed form: eta wc - eta w0 exp(-w0/wc) Ei(w0/wc).
double principal_value_ohmic_ei(const SpectralParams& p);

// Bound (non-decaying) pole of the propagator: E < 0 solving
// E = w0 - int J(w)/(w - E) dw, with residue Z = 1 / (1 + int J/(w - E)^2 dw).
struct BoundState {
    bool exists;
    double energy;
    double residue;
};
BoundState bound_state(const SpectralParams& p);

// Covariance of the two-mode squeezed vacuum from its second moments
// <x^2> = cosh(2r)/2, <x1 x2> = -sinh(2r)/2, <p1 p2> = +sinh(2r)/2.
Eigen::Matrix4d two_mode_squeezed_vacuum(double r);

// V = S diag(nu1, nu1, nu2, nu2) S^T with a random symplectic S built from local
// rotations, single-mode squeezers and beam splitters; nu_i >= 1/2.
Eigen::Matrix4d random_physical_covariance(std::mt19937_64& rng, double max_squeeze = 1.0);

}  // namespace nmsq::oracle
