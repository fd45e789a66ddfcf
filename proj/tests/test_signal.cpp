#include <doctest.h>

#include <cmath>

#include "quatern/signal.hpp"

using namespace quatern;

TEST_CASE("decoupled linear decay integrates to the exponential") {
    LorenzParams p;
    p.sigma = 0.0;
    p.gamma = 0.0;
    p.delta = 1.0;  // dw/dt = -w
    p.y0 = {0.0, 0.0, 1.0};
    p.t0 = 0.0;
    p.t1 = 1.0;
    p.dt = 0.01;
    const LorenzTrajectory traj = lorenz_integrate(p);
    CHECK(traj.u.back() == 0.0);
    CHECK(traj.v.back() == 0.0);
    CHECK(traj.w.back() == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
}

TEST_CASE("the origin is a fixed point") {
    LorenzParams p;
    p.y0 = {0.0, 0.0, 0.0};
    p.t1 = 2.0;
    const LorenzTrajectory traj = lorenz_integrate(p);
    for (double v : traj.u) CHECK(v == 0.0);
    for (double v : traj.w) CHECK(v == 0.0);
}

TEST_CASE("halving the step leaves the short-horizon trajectory unchanged") {
    LorenzParams coarse;
    coarse.t1 = 1.0;
    coarse.dt = 0.01;
    LorenzParams fine = coarse;
    fine.dt = 0.005;
    const LorenzTrajectory tc = lorenz_integrate(coarse);
    const LorenzTrajectory tf = lorenz_integrate(fine);
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < tc.t.size(); ++i) {
        diff = std::max({diff, std::abs(tc.u[i] - tf.u[2 * i]), std::abs(tc.v[i] - tf.v[2 * i]),
                         std::abs(tc.w[i] - tf.w[2 * i])});
        scale = std::max({scale, std::abs(tc.u[i]), std::abs(tc.v[i]), std::abs(tc.w[i])});
    }
    CHECK(diff <= 1e-3 * scale);
}

TEST_CASE("filter system takes the displayed shifted-sample layout") {
    LorenzParams p;
    p.t1 = 1.0;
    p.dt = 0.01;
    const SignalFrame frame = make_signal_frame(lorenz_integrate(p), 1, 0.0, 1);

    const FilterSystem order0 = build_filter_system(frame, 0);
    CHECK(order0.X.rows() == 1);
    CHECK(order0.X(0, 0) == frame.x[0]);
    CHECK(order0.s(0, 0) == frame.s[0]);

    const FilterSystem sys = build_filter_system(frame, 3);
    // base index is p = 3: entry (1,0) holds x(t+1), entry (0,1) holds x(t-1)
    CHECK(sys.X(1, 0) == frame.x[4]);
    CHECK(sys.X(0, 1) == frame.x[2]);
    CHECK(sys.X(0, 0) == frame.x[3]);
    CHECK(sys.s(2, 0) == frame.s[5]);

    SignalFrame tiny = frame;
    tiny.s.resize(4);
    tiny.x.resize(4);
    tiny.t.resize(4);
    CHECK_THROWS_AS(build_filter_system(tiny, 3), std::invalid_argument);
}

TEST_CASE("constant signal fills the system with that constant") {
    SignalFrame frame;
    const Quat q0(0.0, 0.3, -0.2, 0.9);
    frame.t.assign(9, 0.0);
    frame.s.assign(9, q0);
    frame.x.assign(9, q0);
    const FilterSystem sys = build_filter_system(frame, 2);
    for (long r = 0; r < 3; ++r)
        for (long c = 0; c < 3; ++c) CHECK(sys.X(r, c) == q0);
}

TEST_CASE("identity filter on a noiseless undelayed signal") {
    LorenzParams p;
    p.t1 = 1.0;
    p.dt = 0.01;
    const SignalFrame frame = make_signal_frame(lorenz_integrate(p), 0, 0.0, 2);
    const FilterSystem sys = build_filter_system(frame, 0);
    const FilterResult res = solve_filter(sys, PinvBackend::Qsvd);
    CHECK(abs(res.h(0, 0) - Quat(1.0)) <= 1e-12);
    CHECK(res.epsilon <= 1e-12);
}

TEST_CASE("delayed noisy chaotic signal is recovered by every backend") {
    for (const double dt : {0.02, 0.05}) {
        LorenzParams p;
        p.dt = dt;
        const SignalFrame frame = make_signal_frame(lorenz_integrate(p), 1, 1e-3, 77);
        const FilterSystem sys = build_filter_system(frame, 31);
        double eps_qsvd = 0.0, eps_qsai = 0.0;
        for (const auto backend : {PinvBackend::Qsvd, PinvBackend::Qns, PinvBackend::Qsai}) {
            const FilterResult res = solve_filter(sys, backend);
            CHECK(res.epsilon <= 1e-8);
            if (backend == PinvBackend::Qsvd) eps_qsvd = res.epsilon;
            if (backend == PinvBackend::Qsai) eps_qsai = res.epsilon;
        }
        CHECK(std::abs(eps_qsvd - eps_qsai) <= 1e-8);
    }
}

TEST_CASE("scaling the target scales the fit and keeps epsilon") {
    LorenzParams p;
    p.dt = 0.05;
    p.t1 = 10.0;
    const SignalFrame frame = make_signal_frame(lorenz_integrate(p), 1, 1e-3, 12);
    FilterSystem sys = build_filter_system(frame, 15);
    const FilterResult base = solve_filter(sys, PinvBackend::Qsvd);

    FilterSystem scaled = sys;
    for (long i = 0; i < scaled.s.size(); ++i) scaled.s.data()[i] *= 3.5;
    const FilterResult res = solve_filter(scaled, PinvBackend::Qsvd);
    const QMat fitted = mat_mul(scaled.X, res.h);
    const QMat base_fitted = mat_mul(sys.X, base.h);
    CHECK(fro_dist(fitted, base_fitted * 3.5) <= 1e-10 * frobenius(fitted));
    CHECK(res.epsilon == doctest::Approx(base.epsilon).epsilon(1e-10));
}
