#include "quatern/pinv.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "quatern/random.hpp"

namespace quatern {

const HyperCoeffs& HyperCoeffs::values() {
    static const HyperCoeffs c = [] {
        HyperCoeffs h{};
        const double r93 = std::sqrt(93.0);
        h.a1 = 5.0 / 496.0 * (31.0 + r93);
        h.a2 = (3.0 + r93) / 8.0;
        h.a3 = 0.5;
        h.b1 = -5.0 / 496.0 * (r93 - 31.0);
        h.b2 = (3.0 - r93) / 8.0;
        h.b3 = 0.5;
        h.c1 = 3.0 / 8.0;
        h.c2 = 321.0 / 1984.0;
        const double rin = std::sqrt(27.0 - 2.0 * r93);
        h.d1 = (rin + 1.0) / 4.0;
        h.d2 = (1.0 - rin) / 4.0;
        h.d3 = (5.0 * r93 - 93.0) / 496.0;
        h.e1 = (-93.0 - 5.0 * r93) / 496.0;
        h.e2 = -r93 / 4.0;
        const double r5 = std::sqrt(5.0);
        h.beta1 = (1.0 + r5) / 2.0;
        h.beta2 = (1.0 - r5) / 2.0;
        return h;
    }();
    return c;
}

const char* method_name(PinvMethod m) {
    switch (m) {
        case PinvMethod::Qns: return "qns";
        case PinvMethod::Hyperpower: return "hyperpower";
        case PinvMethod::Qrapid: return "qrapid";
        case PinvMethod::Qsai: return "qsai";
        case PinvMethod::Qhpi19: return "qhpi19";
        case PinvMethod::Qhon: return "qhon";
    }
    return "?";
}

void PinvConfig::validate() const {
    if (tol <= 0.0) throw std::invalid_argument("PinvConfig: tol must be positive");
    if (max_iters <= 0) throw std::invalid_argument("PinvConfig: max_iters must be positive");
    if ((method == PinvMethod::Qhon || method == PinvMethod::Hyperpower) && order < 2)
        throw std::invalid_argument("PinvConfig: hyperpower order must be >= 2");
    if (method == PinvMethod::Qrapid && order < 0)
        throw std::invalid_argument("PinvConfig: QRAPID step parameter must be >= 0");
    if (alpha_value && *alpha_value <= 0.0)
        throw std::invalid_argument("PinvConfig: explicit alpha must be positive");
}

std::array<double, 4> penrose_errors(const QMat& a, const QMat& x) {
    if (x.rows() != a.cols() || x.cols() != a.rows())
        throw ShapeError("penrose_errors", a.rows(), a.cols(), x.rows(), x.cols());
    const QMat ax = mat_mul(a, x);
    const QMat xa = mat_mul(x, a);
    const double e1 = fro_dist(mat_mul(ax, a), a);
    const double e2 = fro_dist(mat_mul(x, ax), x);
    const double e3 = fro_dist(adjoint(ax), ax);
    const double e4 = fro_dist(adjoint(xa), xa);
    return {e1, e2, e3, e4};
}

QMat hyperpower_step(const QMat& a, const QMat& x, int k, MulCounter* tally) {
    if (k < 2) throw std::invalid_argument("hyperpower_step: order must be >= 2");
    const long m = a.rows();
    const QMat eye = QMat::Identity(m);
    const QMat r = eye - mat_mul(a, x, tally);
    QMat s = eye + r;  // degree 1
    for (int t = 3; t <= k; ++t) s = eye + mat_mul(r, s, tally);
    return mat_mul(x, s, tally);
}

namespace {

QMat step_qsai(const QMat& a, const QMat& x, MulCounter* tally) {
    const HyperCoeffs& h = HyperCoeffs::values();
    const long m = a.rows();
    const QMat eye = QMat::Identity(m);
    const QMat r = eye - mat_mul(a, x, tally);
    const QMat r2 = mat_mul(r, r, tally);
    const QMat r4 = mat_mul(r2, r2, tally);
    const QMat q = mat_mul(eye + r2 * h.beta1 + r4, eye + r2 * h.beta2 + r4, tally);
    const QMat t = mat_mul(x, eye + r, tally);
    return mat_mul(t, q, tally);
}

QMat step_qhpi19(const QMat& a, const QMat& x, MulCounter* tally) {
    const HyperCoeffs& h = HyperCoeffs::values();
    const long m = a.rows();
    const QMat eye = QMat::Identity(m);
    const QMat r = eye - mat_mul(a, x, tally);
    const QMat r2 = mat_mul(r, r, tally);
    const QMat r4 = mat_mul(r2, r2, tally);
    const QMat u = mat_mul(eye + r2 * h.d1 + r4, eye + r2 * h.d2 + r4, tally);
    const QMat v = u + r2 * h.d3;
    const QMat w = u + r2 * h.e1 + r4 * h.e2;
    const QMat gamma = mat_mul(v, w, tally) + r2 * h.c1 + r4 * h.c2;
    const QMat s = mat_mul(r + r2, gamma, tally);
    return mat_mul(x, eye + s, tally);
}

QMat step_qrapid(const QMat& a, const QMat& x, int n_steps, MulCounter* tally) {
    const long m = a.rows();
    const QMat eye = QMat::Identity(m);
    const QMat p = mat_mul(a, x, tally);

    QMat t = eye * 7.0 - p;
    t = eye * 15.0 - mat_mul(p, t, tally);
    t = eye * 13.0 - mat_mul(p, t, tally);
    const QMat u = mat_mul(x, t, tally) * 0.25;
    const QMat v = u + mat_mul(x, eye - mat_mul(a, u, tally), tally);

    QMat z = v;
    if (n_steps > 0) {
        QMat y = u, w = v;
        for (int l = 1; l <= n_steps; ++l) {
            z = w + mat_mul(y, eye - mat_mul(a, w, tally), tally);
            y = w;
            w = z;
        }
    }
    return z + mat_mul(x, eye - mat_mul(a, z, tally), tally);
}

}  // namespace

QMat pinv_step(const QMat& a, const QMat& x, PinvMethod method, int order, MulCounter* tally) {
    switch (method) {
        case PinvMethod::Qns: return hyperpower_step(a, x, 2, tally);
        case PinvMethod::Hyperpower: return hyperpower_step(a, x, order, tally);
        case PinvMethod::Qhon: return hyperpower_step(a, x, order, tally);
        case PinvMethod::Qsai: return step_qsai(a, x, tally);
        case PinvMethod::Qhpi19: return step_qhpi19(a, x, tally);
        case PinvMethod::Qrapid: return step_qrapid(a, x, order, tally);
    }
    throw std::logic_error("pinv_step: unknown method");
}

namespace {

double resolve_alpha(const QMat& a, const PinvConfig& cfg) {
    if (cfg.alpha_value) return *cfg.alpha_value;
    return scaling_alpha(a, cfg.alpha_mode, cfg.sigma_max_iters, cfg.sigma_max_seed);
}

// Iterates from the given X until the step norm drops below tol, the
// iteration cap is hit, or a roundoff plateau is detected: five consecutive
// iterations without a new minimum step norm while already in the endgame
// (best step below 1e-6 relative to the iterate scale). The endgame clause
// keeps the guard away from the slow-start phase of low-order methods, where
// step norms legitimately grow for many consecutive iterations.
void iterate(const QMat& a, const PinvConfig& cfg, QMat x, MulCounter* tally, PinvReport& rep) {
    double best_step = std::numeric_limits<double>::infinity();
    int no_decrease = 0;
    for (int j = 0; j < cfg.max_iters; ++j) {
        QMat next = pinv_step(a, x, cfg.method, cfg.order, tally);
        double step = fro_dist(next, x);
        rep.step_history.push_back(step);
        ++rep.iterations;
        if (cfg.relative_tol) step /= std::max(frobenius(next), 1e-300);
        x = std::move(next);
        if (cfg.keep_iterates) rep.iterates.push_back(x);

        if (step < cfg.tol) {
            rep.converged = true;
            rep.stop_reason = StopReason::Converged;
            break;
        }
        if (step < best_step) {
            best_step = step;
            no_decrease = 0;
        } else if (best_step <= 1e-6 * (1.0 + frobenius(x))) {
            ++no_decrease;
        }
        if (no_decrease >= 5) {
            rep.stop_reason = StopReason::Stagnated;
            break;
        }
    }
    rep.X = std::move(x);
}

}  // namespace

PinvReport run_pinv(const QMat& a, const PinvConfig& cfg) {
    cfg.validate();
    if (squared_frobenius(a) == 0.0) throw NumericError("run_pinv: zero operator");

    PinvReport rep;
    rep.alpha_used = resolve_alpha(a, cfg);

    MulCounter tally;
    QMat x0 = adjoint(a) * rep.alpha_used;
    if (cfg.keep_iterates) rep.iterates.push_back(x0);
    iterate(a, cfg, std::move(x0), cfg.count_matmuls ? &tally : nullptr, rep);

    rep.matmuls = tally.count;
    rep.penrose = penrose_errors(a, rep.X);
    return rep;
}

PinvReport qns(const QMat& a, PinvConfig cfg) {
    cfg.method = PinvMethod::Qns;
    return run_pinv(a, cfg);
}

PinvReport qrapid(const QMat& a, int n_steps, PinvConfig cfg) {
    cfg.method = PinvMethod::Qrapid;
    cfg.order = n_steps;
    return run_pinv(a, cfg);
}

PinvReport qsai(const QMat& a, PinvConfig cfg) {
    cfg.method = PinvMethod::Qsai;
    return run_pinv(a, cfg);
}

PinvReport qhpi19(const QMat& a, PinvConfig cfg) {
    cfg.method = PinvMethod::Qhpi19;
    return run_pinv(a, cfg);
}

PinvReport qhon(const QMat& a, int p, PinvConfig cfg) {
    cfg.method = PinvMethod::Qhon;
    cfg.order = p;
    return run_pinv(a, cfg);
}

double cei(int order, int matmuls_per_iter) {
    if (order < 2 || matmuls_per_iter < 1)
        throw std::invalid_argument("cei: need order >= 2 and matmuls >= 1");
    return std::pow(static_cast<double>(order), 1.0 / matmuls_per_iter);
}

PerturbationRecord perturbation_probe(const QMat& a, const PinvConfig& cfg, int j_inject,
                                      double magnitude, std::uint64_t seed) {
    cfg.validate();
    PerturbationRecord rec;
    rec.matrix_norm = frobenius(a);

    const double alpha = resolve_alpha(a, cfg);
    QMat x = adjoint(a) * alpha;
    for (int j = 0; j < j_inject; ++j) x = pinv_step(a, x, cfg.method, cfg.order, nullptr);

    rec.iterate_norm = frobenius(x);
    rec.residual_norm = frobenius(QMat::Identity(a.rows()) - mat_mul(a, x));

    QMat delta = random_qmat(x.rows(), x.cols(), seed);
    const double dn = frobenius(delta);
    delta = magnitude > 0.0 && dn > 0.0 ? delta * (magnitude / dn) : QMat::Zero(x.rows(), x.cols());
    rec.delta_in = frobenius(delta);

    const QMat next = pinv_step(a, x, cfg.method, cfg.order, nullptr);
    const QMat next_pert = pinv_step(a, x + delta, cfg.method, cfg.order, nullptr);
    rec.delta_out = fro_dist(next_pert, next);
    rec.growth_ratio = rec.delta_in > 0.0 ? rec.delta_out / rec.delta_in : 0.0;

    PinvReport tail;
    tail.alpha_used = alpha;
    iterate(a, cfg, next_pert, nullptr, tail);
    rec.converged_after = tail.converged;
    rec.final_penrose = penrose_errors(a, tail.X);
    rec.iterations_after = tail.iterations;
    return rec;
}

}  // namespace quatern
