#include "quatern/signal.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace quatern {

namespace {

std::array<double, 3> lorenz_rhs(const LorenzParams& p, const std::array<double, 3>& y) {
    return {p.sigma * (y[1] - y[0]), y[0] * (p.gamma - y[2]) - y[1], y[0] * y[1] - p.delta * y[2]};
}

std::array<double, 3> saxpy3(const std::array<double, 3>& y, double h,
                             const std::array<double, 3>& k) {
    return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
}

}  // namespace

LorenzTrajectory lorenz_integrate(const LorenzParams& p) {
    if (p.dt <= 0.0 || p.t1 <= p.t0) throw std::invalid_argument("lorenz_integrate: bad grid");
    const long steps = std::lround((p.t1 - p.t0) / p.dt);

    LorenzTrajectory traj;
    traj.t.reserve(steps + 1);
    traj.u.reserve(steps + 1);
    traj.v.reserve(steps + 1);
    traj.w.reserve(steps + 1);

    std::array<double, 3> y = p.y0;
    for (long i = 0; i <= steps; ++i) {
        traj.t.push_back(p.t0 + i * p.dt);
        traj.u.push_back(y[0]);
        traj.v.push_back(y[1]);
        traj.w.push_back(y[2]);
        if (i == steps) break;
        const auto k1 = lorenz_rhs(p, y);
        const auto k2 = lorenz_rhs(p, saxpy3(y, 0.5 * p.dt, k1));
        const auto k3 = lorenz_rhs(p, saxpy3(y, 0.5 * p.dt, k2));
        const auto k4 = lorenz_rhs(p, saxpy3(y, p.dt, k3));
        for (int c = 0; c < 3; ++c)
            y[c] += p.dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    return traj;
}

SignalFrame make_signal_frame(const LorenzTrajectory& traj, long tau_samples, double noise_rel,
                              std::uint64_t seed) {
    const long n = static_cast<long>(traj.t.size());
    if (n == 0) throw std::invalid_argument("make_signal_frame: empty trajectory");
    if (tau_samples < 0) throw std::invalid_argument("make_signal_frame: negative delay");

    double rms = 0.0;
    for (long i = 0; i < n; ++i)
        rms += traj.u[i] * traj.u[i] + traj.v[i] * traj.v[i] + traj.w[i] * traj.w[i];
    rms = std::sqrt(rms / n);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_rel * rms);

    SignalFrame frame;
    frame.t = traj.t;
    frame.s.resize(n);
    frame.x.resize(n);
    for (long i = 0; i < n; ++i) {
        frame.s[i] = Quat(0.0, traj.u[i], traj.v[i], traj.w[i]);
        const long d = std::max(i - tau_samples, 0L);  // clamp to earliest sample
        frame.x[i] = Quat(0.0, traj.u[d] + noise(rng), traj.v[d] + noise(rng),
                          traj.w[d] + noise(rng));
    }
    return frame;
}

FilterSystem build_filter_system(const SignalFrame& frame, int order) {
    if (order < 0) throw std::invalid_argument("build_filter_system: negative order");
    const long p = order;
    const long n = static_cast<long>(frame.x.size());
    if (n < 2 * p + 1)
        throw std::invalid_argument("build_filter_system: insufficient samples (need " +
                                    std::to_string(2 * p + 1) + ", have " + std::to_string(n) +
                                    ")");
    const long t_base = p;
    FilterSystem sys{QMat(p + 1, p + 1), QMat(p + 1, 1)};
    for (long r = 0; r <= p; ++r) {
        for (long c = 0; c <= p; ++c) {
            const long idx = std::max(t_base + r - c, 0L);
            sys.X(r, c) = frame.x[idx];
        }
        sys.s(r, 0) = frame.s[t_base + r];
    }
    return sys;
}

FilterResult solve_filter(const FilterSystem& sys, PinvBackend backend, double pinv_tol,
                          int pinv_max_iters) {
    const QMat x_pinv = backend_pinv(sys.X, backend, pinv_tol, pinv_max_iters);
    FilterResult res;
    res.h = mat_mul(x_pinv, sys.s);
    const QMat fitted = mat_mul(sys.X, res.h);
    res.epsilon = fro_dist(fitted, sys.s) / frobenius(sys.s);
    return res;
}

}  // namespace quatern
