#pragma once

#include <cstdint>
#include <vector>

#include "quatern/cur.hpp"
#include "quatern/qmat.hpp"

namespace quatern {

struct LorenzParams {
    double sigma = 10.0;
    double delta = 8.0 / 3.0;
    double gamma = 28.0;
    std::array<double, 3> y0{1.0, 1.0, 1.0};
    double t0 = 0.0;
    double t1 = 40.0;
    double dt = 0.02;
};

struct LorenzTrajectory {
    std::vector<double> t, u, v, w;
};

/// Classical fixed-step RK4 on du = sigma(v-u), dv = u(gamma-w) - v,
/// dw = uv - delta w over the grid t0, t0+dt, ..., t1.
LorenzTrajectory lorenz_integrate(const LorenzParams& p);

/// Clean target s(t) = u i + v j + w k and observed input x(t) =
/// s(t - tau samples) + purely imaginary Gaussian noise. The noise standard
/// deviation per component is noise_rel times the RMS magnitude of s.
struct SignalFrame {
    std::vector<double> t;
    std::vector<Quat> s;  // scalar parts exactly 0
    std::vector<Quat> x;
};

SignalFrame make_signal_frame(const LorenzTrajectory& traj, long tau_samples, double noise_rel,
                              std::uint64_t seed);

/// Square (p+1)x(p+1) system X h = s from shifted samples: X(r,c) =
/// x(t_base + r - c) and s(r) = s(t_base + r), anchored at t_base = p so the
/// window excludes the first p samples; earlier indices clamp to sample 0.
/// Throws when the frame is shorter than 2p+1 samples.
struct FilterSystem {
    QMat X;  // (p+1) x (p+1)
    QMat s;  // (p+1) x 1
};

FilterSystem build_filter_system(const SignalFrame& frame, int order);

/// h = pinv(X) s through the chosen backend; the filtered signal is X h
/// (coefficients act by right multiplication) and epsilon = |Xh - s|/|s|.
struct FilterResult {
    QMat h;
    double epsilon = 0.0;
};

FilterResult solve_filter(const FilterSystem& sys, PinvBackend backend, double pinv_tol = 1e-10,
                          int pinv_max_iters = 500);

}  // namespace quatern
