// gaussian.hpp: evolved two-mode squeezed state, covariance matrix, symplectic
// spectrum and logarithmic negativity.
//
// Quadratures x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)), ordered
// (x1, p1, x2, p2); the vacuum has V = diag(1/2, 1/2, 1/2, 1/2).

#pragma once

#include "nmsq/kernels.hpp"
#include "nmsq/volterra.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace nmsq {

class SqueezeParam {
public:
    explicit SqueezeParam(double r);
    double r() const noexcept { return r_; }
    bool operator==(const SqueezeParam&) const = default;

private:
    double r_;
};

// Coefficients of the evolved density matrix in the coherent-state representation.
struct StateCoefficients {
    double a;
    cplx b;
    double c;
};

StateCoefficients state_coefficients(cplx u, SqueezeParam s);

class CovarianceMatrix {
public:
    using Matrix = Eigen::Matrix4d;

    // Rejects matrices that are not symmetric to 1e-12 (relative to the largest entry).
    explicit CovarianceMatrix(const Matrix& v, bool partially_transposed = false);

    static CovarianceMatrix vacuum();

    const Matrix& matrix() const noexcept { return v_; }
    double operator()(int i, int j) const { return v_(i, j); }
    bool partially_transposed() const noexcept { return transposed_; }

    Eigen::Matrix2d block_a() const { return v_.topLeftCorner<2, 2>(); }
    Eigen::Matrix2d block_b() const { return v_.bottomRightCorner<2, 2>(); }
    Eigen::Matrix2d block_c() const { return v_.topRightCorner<2, 2>(); }

private:
    Matrix v_;
    bool transposed_;
};

class DegenerateStateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Closed-form covariance built from (a, b, c).
CovarianceMatrix covariance(const StateCoefficients& sc);

// Lambda V Lambda with Lambda = diag(1, 1, 1, -1); toggles the transposed flag.
CovarianceMatrix partial_transpose(const CovarianceMatrix& v);

// Symplectic form U = J (+) J, J = [[0, 1], [-1, 0]].
Eigen::Matrix4d symplectic_form();

struct SymplecticSpectrum {
    std::array<double, 2> nu;  // ascending
    bool tilde;                // computed on a partially transposed matrix

    double min() const noexcept { return nu[0]; }
};

// Two-mode formula nu^2 = (D -+ sqrt(D^2 - 4 det V)) / 2, D = det A + det B + 2 det C.
SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& v);

// Moduli of the eigenvalues of i U V from a general eigensolver.
SymplecticSpectrum symplectic_spectrum_eigen(const CovarianceMatrix& v);

// E_N = max{0, -log2(2 nu_min)}; requires spectrum.tilde.
double log_negativity(const SymplecticSpectrum& spectrum);

// u -> coefficients -> V -> Lambda V Lambda -> spectrum -> E_N.
double log_negativity(cplx u, SqueezeParam s);

bool is_physical(const CovarianceMatrix& v, double tol = 1e-9);

// Covariance of the state obtained from the second moments
//   <a_k^dag a_k> = n, <a_1 a_2> = m  (first moments vanish).
CovarianceMatrix covariance_from_moments(double n, cplx m);

// Integrates d<a^dag a>/dt = -2 Gamma <a^dag a>, d<a1 a2>/dt = -2 (Gamma + i Omega) <a1 a2>
// on the trajectory grid, starting from the two-mode squeezed vacuum, and returns
// |V_ode(t_j) - V(t_j)|_F for every grid point up to (excluding) the first point
// with undefined rates.
std::vector<double> moment_ode_crosscheck(const PropagatorTrajectory& traj, SqueezeParam s);

}  // namespace nmsq
