#include "nmsq/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nmsq {

EvolutionGrid::EvolutionGrid(double t_end, std::size_t steps) : t_end_(t_end), steps_(steps) {
    if (!(std::isfinite(t_end) && t_end > 0.0))
        throw std::invalid_argument("grid.t_end must be finite and > 0");
    if (steps < 2) throw std::invalid_argument("grid.steps must be >= 2");
}

EvolutionGrid EvolutionGrid::resolving(const MemoryKernel& k, double t_end) {
    const double w0 = std::abs(k.system_frequency());
    double dt_max = 0.1 * k.memory_time();
    if (w0 > 0.0) dt_max = std::min(dt_max, 0.01 / w0);
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt_max - 1e-9));
    return {t_end, std::max<std::size_t>(steps, 2)};
}

namespace {

[[noreturn]] void fault(const std::string& what, std::size_t j, double t) {
    std::ostringstream os;
    os << "solve_u: " << what << " at step " << j << " (t = " << t << ")";
    throw SolverFault(os.str(), j);
}

}  // namespace

PropagatorTrajectory solve_u(const MemoryKernel& k, const EvolutionGrid& g) {
    const std::size_t n = g.size();
    const double dt = g.dt();
    const double w0 = k.system_frequency();

    // Rotating-frame kernel K(t) = mu(t) exp(i w0 t), split into re/im for the
    // O(N^2) history sums.
    std::vector<double> kr(n), ki(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double t = g.time(m);
        const cplx km = k(t) * std::polar(1.0, w0 * t);
        kr[m] = km.real();
        ki[m] = km.imag();
    }
    const cplx k0{kr[0], ki[0]};

    std::vector<double> vr(n), vi(n);
    std::vector<cplx> vdot(n);
    vr[0] = 1.0;
    vi[0] = 0.0;
    vdot[0] = {0.0, 0.0};

    for (std::size_t j = 1; j < n; ++j) {
        // dt * [ K_j v_0 / 2 + sum_{l=1}^{j-1} K_{j-l} v_l ]
        double hr = 0.5 * (kr[j] * vr[0] - ki[j] * vi[0]);
        double hi = 0.5 * (kr[j] * vi[0] + ki[j] * vr[0]);
        for (std::size_t l = 1; l < j; ++l) {
            const double a = kr[j - l], b = ki[j - l];
            hr += a * vr[l] - b * vi[l];
            hi += a * vi[l] + b * vr[l];
        }
        const cplx history{dt * hr, dt * hi};

        const cplx prev{vr[j - 1], vi[j - 1]};
        const cplx slope = j >= 2 ? 1.5 * vdot[j - 1] - 0.5 * vdot[j - 2] : vdot[j - 1];
        const cplx predicted = prev + dt * slope;
        const cplx dpred = -(history + 0.5 * dt * k0 * predicted);
        const cplx corrected = prev + 0.5 * dt * (vdot[j - 1] + dpred);
        const cplx dcorr = -(history + 0.5 * dt * k0 * corrected);

        if (!std::isfinite(corrected.real()) || !std::isfinite(corrected.imag()) ||
            !std::isfinite(dcorr.real()) || !std::isfinite(dcorr.imag()))
            fault("non-finite propagator", j, g.time(j));
        if (std::abs(corrected) > 1.0 + kNormTolerance)
            fault("discretization fault, |u| exceeds 1", j, g.time(j));

        vr[j] = corrected.real();
        vi[j] = corrected.imag();
        vdot[j] = dcorr;
    }

    PropagatorTrajectory traj{g, w0, {}, {}, {}, {}, {}, {}, kDefaultClampEps};
    traj.u.resize(n);
    traj.u_dot.resize(n);
    traj.v.resize(n);
    traj.v_dot = std::move(vdot);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx v{vr[j], vi[j]};
        const cplx phase = std::polar(1.0, -w0 * g.time(j));
        traj.v[j] = v;
        traj.u[j] = j == 0 ? cplx{1.0, 0.0} : phase * v;
        traj.u_dot[j] = phase * (traj.v_dot[j] - cplx{0.0, w0} * v);
    }
    return traj;
}

PropagatorTrajectory extract_rates(PropagatorTrajectory traj, double clamp_eps) {
    if (!(clamp_eps >= 0.0)) throw std::invalid_argument("extract_rates: clamp_eps must be >= 0");
    const std::size_t n = traj.u.size();
    const bool rotating = traj.v.size() == n && traj.v_dot.size() == n;
    traj.clamp_eps = clamp_eps;
    traj.gamma.assign(n, std::nullopt);
    traj.omega.assign(n, std::nullopt);
    for (std::size_t j = 0; j < n; ++j) {
        if (!(std::abs(traj.u[j]) >= clamp_eps)) continue;
        // -u'/u = i w0 - v'/v
        double gamma, omega;
        if (rotating) {
            const cplx r = traj.v_dot[j] / traj.v[j];
            gamma = -r.real();
            omega = traj.omega_0 - r.imag();
        } else {
            const cplx r = traj.u_dot[j] / traj.u[j];
            gamma = -r.real();
            omega = -r.imag();
        }
        traj.gamma[j] = gamma + 0.0;
        traj.omega[j] = omega + 0.0;
    }
    return traj;
}

double convergence_order(const MemoryKernel& k, const EvolutionGrid& g) {
    if (g.steps() % 4 != 0)
        throw std::invalid_argument("convergence_order: grid steps must be divisible by 4");
    const auto coarse = solve_u(k, g);
    const auto half = solve_u(k, g.refined(2));
    const auto quarter = solve_u(k, g.refined(4));
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        d1 = std::max(d1, std::abs(coarse.u[j] - half.u[2 * j]));
        d2 = std::max(d2, std::abs(half.u[2 * j] - quarter.u[4 * j]));
    }
    if (d2 == 0.0) return kExactConvergence;
    return std::log2(d1 / d2);
}

}  // namespace nmsq
