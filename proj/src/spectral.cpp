#include "quatern/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>

namespace quatern {

using Cplx = std::complex<double>;

namespace {

// Unitary 2x2 that diagonalizes the Hermitian Gram block [[app, apq],
// [conj(apq), aqq]]. Columns p, q are updated as
//   cp' = cp*cs - cq*sn,   cq' = cp*conj(sn) + cq*conj(cs).
void jacobi_rotation(double app, double aqq, Cplx apq, double& cs, Cplx& sn) {
    const double absq = std::abs(apq);
    const double zeta = (app - aqq) / (2.0 * absq);
    const double w = std::sqrt(zeta * zeta + 1.0);
    const double t = zeta > 0.0 ? 1.0 / (zeta + w) : 1.0 / (zeta - w);
    cs = 1.0 / std::sqrt(t * t + 1.0);
    sn = -t * cs * (std::conj(apq) / absq);
}

SvdResult jacobi_svd_tall(const CMat& input) {
    CMat a = input;  // columns get rotated in place; U comes from them
    const long m = a.rows(), n = a.cols();
    CMat v = CMat::Identity(n, n);

    const double fro2 = a.squaredNorm();
    const double off_tol = 1e-12 * fro2;
    const int max_sweeps = 60;

    // Pairs are rotated down to the dot-product rounding floor, well below
    // off_tol; sweeps end on a rotation-free pass or when the worst Gram
    // entry stalls at that floor.
    const double eps = std::numeric_limits<double>::epsilon();
    const double pair_floor = 32.0 * eps * std::sqrt(static_cast<double>(m));
    double worst = 0.0;
    double prev_worst = std::numeric_limits<double>::infinity();
    int stalled = 0;
    bool converged = fro2 == 0.0;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        worst = 0.0;
        long rotations = 0;
        for (long p = 0; p < n - 1; ++p)
            for (long q = p + 1; q < n; ++q) {
                const Cplx apq = a.col(p).dot(a.col(q));  // c_p^H c_q
                worst = std::max(worst, std::abs(apq));
                const double app = a.col(p).squaredNorm();
                const double aqq = a.col(q).squaredNorm();
                const double scale = std::sqrt(app * aqq);
                if (scale == 0.0 || std::abs(apq) <= pair_floor * scale) continue;
                ++rotations;

                double cs;
                Cplx sn;
                jacobi_rotation(app, aqq, apq, cs, sn);

                Eigen::VectorXcd cp = a.col(p) * cs - a.col(q) * sn;
                Eigen::VectorXcd cq = a.col(p) * std::conj(sn) + a.col(q) * std::conj(cs);
                a.col(p) = cp;
                a.col(q) = cq;
                Eigen::VectorXcd vp = v.col(p) * cs - v.col(q) * sn;
                Eigen::VectorXcd vq = v.col(p) * std::conj(sn) + v.col(q) * std::conj(cs);
                v.col(p) = vp;
                v.col(q) = vq;
            }
        if (rotations == 0) {
            converged = worst <= off_tol;
            break;
        }
        stalled = worst >= 0.25 * prev_worst ? stalled + 1 : 0;
        if (stalled >= 2 && worst <= off_tol) {
            converged = true;
            break;
        }
        prev_worst = worst;
    }
    if (!converged)
        throw NumericError("jacobi_svd: sweep cap reached, off-diagonal mass " +
                           std::to_string(worst));

    Eigen::VectorXd sigma(n);
    for (long j = 0; j < n; ++j) sigma(j) = a.col(j).norm();

    std::vector<long> order(n);
    std::iota(order.begin(), order.end(), 0L);
    std::stable_sort(order.begin(), order.end(),
                     [&](long i, long j) { return sigma(i) > sigma(j); });

    SvdResult out;
    out.U = CMat(m, n);
    out.V = CMat(n, n);
    out.sigma = Eigen::VectorXd(n);
    for (long j = 0; j < n; ++j) {
        out.sigma(j) = sigma(order[j]);
        out.V.col(j) = v.col(order[j]);
        out.U.col(j) = a.col(order[j]);
    }

    // Normalize the range directions; complete an orthonormal basis where the
    // column collapsed to (numerically) zero so U keeps orthonormal columns.
    const double tiny = out.sigma(0) > 0.0 ? 1e-14 * out.sigma(0) : 0.0;
    for (long j = 0; j < n; ++j) {
        if (out.sigma(j) > tiny && out.sigma(j) > 0.0) {
            out.U.col(j) /= out.sigma(j);
            continue;
        }
        // Gram-Schmidt a canonical basis vector against the columns built so far.
        for (long e = 0; e < m; ++e) {
            Eigen::VectorXcd cand = Eigen::VectorXcd::Zero(m);
            cand(e) = 1.0;
            for (long t = 0; t < j; ++t) cand -= out.U.col(t) * out.U.col(t).dot(cand);
            const double nrm = cand.norm();
            if (nrm > 0.5) {
                out.U.col(j) = cand / nrm;
                break;
            }
        }
    }
    return out;
}

}  // namespace

SvdResult jacobi_svd(const CMat& c) {
    if (c.rows() >= c.cols()) return jacobi_svd_tall(c);
    SvdResult t = jacobi_svd_tall(c.adjoint());
    return SvdResult{t.V, t.sigma, t.U};
}

double sigma_max(const QMat& a, int iters, std::uint64_t seed) {
    if (squared_frobenius(a) == 0.0) throw NumericError("sigma_max: zero operator");

    const CMat c = embed(a);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::VectorXcd v(c.rows());
    for (long i = 0; i < v.size(); ++i) v(i) = Cplx(dist(rng), dist(rng));
    v /= v.norm();

    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        Eigen::VectorXcd w = c * (c.adjoint() * v);
        const double next = std::real(v.dot(w));  // Rayleigh quotient, v unit
        const double nrm = w.norm();
        if (nrm == 0.0) return 0.0;  // v fell in the null space: lower bound 0
        v = w / nrm;
        if (it > 0 && std::abs(next - lambda) <= 1e-10 * std::abs(next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

double scaling_alpha(const QMat& a, AlphaMode mode, int sigma_iters, std::uint64_t seed) {
    const double fro2 = squared_frobenius(a);
    if (fro2 == 0.0) throw NumericError("scaling_alpha: zero operator");
    if (mode == AlphaMode::Frobenius) return 1.0 / fro2;
    const double s1 = sigma_max(a, sigma_iters, seed);
    return 1.0 / (s1 * s1);
}

QMat qsvd_pinv(const QMat& a, double rank_tol) {
    const long m = a.rows(), n = a.cols();
    if (squared_frobenius(a) == 0.0) return QMat::Zero(n, m);

    const SvdResult svd = jacobi_svd(embed(a));
    const double cut = rank_tol * svd.sigma(0);
    long k = 0;
    while (k < svd.sigma.size() && svd.sigma(k) > cut) ++k;

    CMat pinv_c = CMat::Zero(2 * n, 2 * m);
    if (k > 0) {
        Eigen::VectorXd inv_sigma(k);
        for (long j = 0; j < k; ++j) inv_sigma(j) = 1.0 / svd.sigma(j);
        pinv_c = svd.V.leftCols(k) * inv_sigma.asDiagonal() * svd.U.leftCols(k).adjoint();
    }
    return unembed(pinv_c);
}

}  // namespace quatern
