#pragma once

#include <cstdint>

#include "quatern/embed.hpp"
#include "quatern/qmat.hpp"

namespace quatern {

/// Thin complex SVD, C = U * diag(sigma) * V^H with sigma nonincreasing.
/// U and V have orthonormal columns (k = min(rows, cols) of them).
struct SvdResult {
    CMat U;
    Eigen::VectorXd sigma;
    CMat V;
};

/// One-sided Jacobi SVD on the columns of C. Sweeps until every off-diagonal
/// Gram entry |c_p^H c_q| falls below 1e-12 * |C|_F^2; throws NumericError
/// with the residual off-diagonal mass if 60 sweeps do not get there.
/// Zero singular directions get an orthonormal completion so U, V stay
/// column-orthonormal even for rank-deficient input.
SvdResult jacobi_svd(const CMat& c);

/// Largest singular value of A, estimated by power iteration on the Gram
/// operator of the complex embedding from a seeded random start. The Rayleigh
/// estimate is a lower bound on sigma_1 and nondecreasing in the iteration
/// count; iteration stops at relative change 1e-10 or after `iters` steps.
double sigma_max(const QMat& a, int iters = 200, std::uint64_t seed = 42);

enum class AlphaMode { Spectral, Frobenius };

/// Scaling for the X0 = alpha * A^H initialization:
/// Spectral mode returns 1/sigma_max^2, Frobenius mode 1/|A|_F^2.
/// Either choice puts alpha inside (0, 2/sigma_1^2), so the initial residual
/// has spectral radius below one. Zero matrices are rejected.
double scaling_alpha(const QMat& a, AlphaMode mode, int sigma_iters = 200,
                     std::uint64_t seed = 42);

/// Moore-Penrose pseudoinverse through the complex embedding: Jacobi SVD,
/// reciprocate singular values above rank_tol * sigma_1, un-embed.
QMat qsvd_pinv(const QMat& a, double rank_tol = 1e-10);

}  // namespace quatern
