#pragma once

#include <optional>
#include <vector>

#include "quatern/pinv.hpp"
#include "quatern/qmat.hpp"

namespace quatern {

enum class KrylovSolver { GlQfom, GlQgmres };

/// Loose QSAI run that produces an approximate inverse, not a full
/// pseudoinverse: step tolerance 1e-2, at most 10 iterations.
struct QsaiPrecondConfig {
    double tol = 1e-2;
    int max_iters = 10;
};

struct KrylovConfig {
    KrylovSolver solver = KrylovSolver::GlQgmres;
    double rr_tol = 1e-6;
    int k_max = 3000;
    std::optional<int> restart;  // cycle length; absent = never restart
    std::optional<QsaiPrecondConfig> precond;

    void validate() const;
};

struct KrylovReport {
    QMat X;
    int iterations = 0;
    std::vector<double> rr_history;  // preconditioned residual when M is used
    double precond_build_seconds = 0.0;
    double solve_seconds = 0.0;
    bool converged = false;
    double final_rr = 0.0;       // last entry of rr_history
    double true_rr = 0.0;        // |B - A X|_F / |B - A X0|_F, always unpreconditioned
    int precond_iterations = 0;  // QSAI iterations spent building M
};

/// Real-valued global inner product Re(trace(X^H Y)) over quaternion blocks;
/// equals the plain dot product of the stacked real components.
double global_dot(const QMat& x, const QMat& y);

/// One global Arnoldi step for the operator V -> (M*)A*V. Orthogonalizes the
/// new block against `basis` by modified Gram-Schmidt under global_dot and
/// appends it normalized. Returns the Hessenberg column (h_{1..j+1,j}); a
/// happy breakdown leaves the basis unextended and the last entry at zero.
std::vector<double> global_arnoldi_step(const QMat& a, const QMat* m, std::vector<QMat>& basis,
                                        MulCounter* tally = nullptr);

/// QSAI-based approximate inverse used as a left preconditioner M A X = M B.
struct PrecondResult {
    QMat M;
    PinvReport build_report;
};
PrecondResult precondition_qsai(const QMat& a, const QsaiPrecondConfig& cfg = {});

/// Global quaternion FOM / GMRES for AX = B with X0 = 0. FOM solves the
/// square Hessenberg system (skipping steps where it is singular); GMRES
/// minimizes the residual through a Givens recurrence. Iteration stops when
/// the tracked relative residual falls below rr_tol or k_max is exhausted.
KrylovReport gl_qfom(const QMat& a, const QMat& b, KrylovConfig cfg = {});
KrylovReport gl_qgmres(const QMat& a, const QMat& b, KrylovConfig cfg = {});

}  // namespace quatern
