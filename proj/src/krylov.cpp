#include "quatern/krylov.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace quatern {

void KrylovConfig::validate() const {
    if (rr_tol <= 0.0) throw std::invalid_argument("KrylovConfig: rr_tol must be positive");
    if (k_max <= 0) throw std::invalid_argument("KrylovConfig: k_max must be positive");
    if (restart && *restart < 1) throw std::invalid_argument("KrylovConfig: restart must be >= 1");
}

double global_dot(const QMat& x, const QMat& y) {
    detail::require_same_shape("global_dot", x, y);
    double acc = 0.0;
    const Quat* px = x.data();
    const Quat* py = y.data();
    for (long i = 0; i < x.size(); ++i)
        acc += px[i].s * py[i].s + px[i].x * py[i].x + px[i].y * py[i].y + px[i].z * py[i].z;
    return acc;
}

namespace {

void axpy(QMat& y, double alpha, const QMat& x) {
    Quat* py = y.data();
    const Quat* px = x.data();
    for (long i = 0; i < y.size(); ++i) py[i] += px[i] * alpha;
}

void scale(QMat& y, double alpha) {
    Quat* py = y.data();
    for (long i = 0; i < y.size(); ++i) py[i] *= alpha;
}

QMat apply_operator(const QMat& a, const QMat* m, const QMat& v, MulCounter* tally) {
    QMat av = mat_mul(a, v, tally);
    return m ? mat_mul(*m, av, tally) : std::move(av);
}

}  // namespace

std::vector<double> global_arnoldi_step(const QMat& a, const QMat* m, std::vector<QMat>& basis,
                                        MulCounter* tally) {
    if (basis.empty()) throw std::invalid_argument("global_arnoldi_step: empty basis");
    QMat w = apply_operator(a, m, basis.back(), tally);
    const double scale_ref = frobenius(w);

    std::vector<double> h(basis.size() + 1, 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        h[i] = global_dot(basis[i], w);
        axpy(w, -h[i], basis[i]);
    }
    const double wn = frobenius(w);
    h.back() = wn;
    if (wn > 1e-14 * scale_ref && wn > 0.0) {
        scale(w, 1.0 / wn);
        basis.push_back(std::move(w));
    } else {
        h.back() = 0.0;  // happy breakdown: Krylov space is invariant
    }
    return h;
}

PrecondResult precondition_qsai(const QMat& a, const QsaiPrecondConfig& cfg) {
    if (a.rows() != a.cols())
        throw ShapeError("precondition_qsai", a.rows(), a.cols(), a.rows(), a.rows());
    PinvConfig pc;
    pc.method = PinvMethod::Qsai;
    pc.tol = cfg.tol;
    pc.relative_tol = true;  // scale-free: an approximate inverse is all we need
    pc.max_iters = cfg.max_iters;
    PinvReport rep = run_pinv(a, pc);
    return PrecondResult{rep.X, std::move(rep)};
}

namespace {

struct GivensState {
    std::vector<std::vector<double>> r_cols;  // triangular columns after all rotations
    std::vector<double> cs, sn;
    std::vector<double> g;  // rotated right-hand side beta*e1
    // FOM bookkeeping: diagonal and rhs entry seen before the newest rotation.
    double fom_den = 0.0, fom_rhs = 0.0;
    int last_valid_fom = 0;
    std::vector<double> valid_den, valid_rhs;  // indexed by step-1
};

// Back-substitution for the k-step small system. For FOM the diagonal of the
// last column and the last rhs entry are the pre-rotation values.
std::vector<double> small_solve(const GivensState& st, int k, bool fom, double den, double rhs) {
    std::vector<double> y(k, 0.0);
    for (int i = k - 1; i >= 0; --i) {
        double acc = i == k - 1 && fom ? rhs : st.g[i];
        for (int t = i + 1; t < k; ++t) acc -= st.r_cols[t][i] * y[t];
        const double diag = (i == k - 1 && fom) ? den : st.r_cols[i][i];
        y[i] = acc / diag;
    }
    return y;
}

QMat combine(const std::vector<QMat>& basis, const std::vector<double>& y) {
    QMat x = QMat::Zero(basis[0].rows(), basis[0].cols());
    for (std::size_t i = 0; i < y.size(); ++i) axpy(x, y[i], basis[i]);
    return x;
}

KrylovReport gl_solve(const QMat& a, const QMat& b, KrylovConfig cfg) {
    cfg.validate();
    if (a.rows() != a.cols()) throw ShapeError("gl_solve", a.rows(), a.cols(), b.rows(), b.cols());
    if (a.rows() != b.rows()) throw ShapeError("gl_solve", a.rows(), a.cols(), b.rows(), b.cols());

    using Clock = std::chrono::steady_clock;
    KrylovReport rep;

    std::optional<QMat> m;
    if (cfg.precond) {
        const auto t0 = Clock::now();
        PrecondResult pr = precondition_qsai(a, *cfg.precond);
        rep.precond_build_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        rep.precond_iterations = pr.build_report.iterations;
        m = std::move(pr.M);
    }
    const QMat* mp = m ? &*m : nullptr;

    const auto t1 = Clock::now();
    const QMat bhat = mp ? mat_mul(*mp, b) : b;
    const double beta0 = frobenius(bhat);
    QMat x_total = QMat::Zero(b.rows(), b.cols());

    if (beta0 == 0.0) {
        rep.X = x_total;
        rep.converged = true;
        rep.solve_seconds = std::chrono::duration<double>(Clock::now() - t1).count();
        return rep;
    }

    const bool fom = cfg.solver == KrylovSolver::GlQfom;
    const int cycle_cap = cfg.restart ? *cfg.restart : cfg.k_max;

    QMat residual = bhat;  // B^ - A^ X_total, maintained across restarts
    bool done = false;
    while (!done && rep.iterations < cfg.k_max) {
        const double beta = frobenius(residual);
        if (beta == 0.0) {
            rep.converged = true;
            break;
        }

        std::vector<QMat> basis;
        QMat v0 = residual;
        scale(v0, 1.0 / beta);
        basis.push_back(std::move(v0));

        GivensState st;
        st.g.assign(1, beta);

        int k = 0;
        bool breakdown = false;
        double rr = std::numeric_limits<double>::infinity();
        while (k < cycle_cap && rep.iterations < cfg.k_max) {
            std::vector<double> h = global_arnoldi_step(a, mp, basis, nullptr);
            ++k;
            ++rep.iterations;
            breakdown = h.back() == 0.0;

            for (int i = 0; i + 1 < k; ++i) {
                const double t1v = h[i], t2v = h[i + 1];
                h[i] = st.cs[i] * t1v + st.sn[i] * t2v;
                h[i + 1] = -st.sn[i] * t1v + st.cs[i] * t2v;
            }
            const double den = h[k - 1], sub = h[k];
            st.fom_den = den;
            st.fom_rhs = st.g[k - 1];
            const bool fom_ok = std::abs(den) > 1e-14 * (std::abs(den) + std::abs(sub));
            if (fom_ok) {
                st.last_valid_fom = k;
                st.valid_den.push_back(den);
                st.valid_rhs.push_back(st.g[k - 1]);
            } else {
                st.valid_den.push_back(0.0);
                st.valid_rhs.push_back(0.0);
            }

            const double r = std::hypot(den, sub);
            const double c = r > 0.0 ? den / r : 1.0;
            const double s = r > 0.0 ? sub / r : 0.0;
            st.cs.push_back(c);
            st.sn.push_back(s);
            h[k - 1] = r;
            h.resize(k);
            st.r_cols.push_back(std::move(h));

            st.g.push_back(-s * st.g[k - 1]);
            st.g[k - 1] = c * st.g[k - 1];

            double rr_abs;
            if (fom) {
                rr_abs = fom_ok ? std::abs(sub) * std::abs(st.fom_rhs / den)
                                : (rep.rr_history.empty() ? beta : rep.rr_history.back() * beta0);
            } else {
                rr_abs = std::abs(st.g[k]);
            }
            rr = rr_abs / beta0;
            rep.rr_history.push_back(rr);

            if (rr <= cfg.rr_tol || breakdown) {
                done = true;
                break;
            }
        }

        // Correction from this cycle. FOM falls back to the last nonsingular
        // step; GMRES always solves at the current step.
        int ks = k;
        double den = st.fom_den, rhs = st.fom_rhs;
        if (fom) {
            ks = st.last_valid_fom;
            if (ks == 0) break;  // nothing solvable in this cycle
            den = st.valid_den[ks - 1];
            rhs = st.valid_rhs[ks - 1];
        }
        const std::vector<double> y = small_solve(st, ks, fom, den, rhs);
        std::vector<QMat> used(basis.begin(), basis.begin() + ks);
        axpy(x_total, 1.0, combine(used, y));

        if (done || rep.iterations >= cfg.k_max) break;
        // Restart: recompute the true preconditioned residual.
        residual = bhat - apply_operator(a, mp, x_total, nullptr);
    }

    rep.X = std::move(x_total);
    rep.final_rr = rep.rr_history.empty() ? 0.0 : rep.rr_history.back();
    rep.converged = rep.converged || (!rep.rr_history.empty() && rep.final_rr <= cfg.rr_tol);
    rep.true_rr = fro_dist(b, mat_mul(a, rep.X)) / frobenius(b);
    rep.solve_seconds = std::chrono::duration<double>(Clock::now() - t1).count();
    return rep;
}

}  // namespace

KrylovReport gl_qfom(const QMat& a, const QMat& b, KrylovConfig cfg) {
    cfg.solver = KrylovSolver::GlQfom;
    return gl_solve(a, b, cfg);
}

KrylovReport gl_qgmres(const QMat& a, const QMat& b, KrylovConfig cfg) {
    cfg.solver = KrylovSolver::GlQgmres;
    return gl_solve(a, b, cfg);
}

}  // namespace quatern
