#include "gen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "quatern/random.hpp"
#include "quatern/spectral.hpp"

namespace quatern::testgen {

QMat with_spectrum(long m, long n, const std::vector<double>& sigmas, std::uint64_t seed) {
    const long k = std::min(m, n);
    if (static_cast<long>(sigmas.size()) != k)
        throw std::invalid_argument("with_spectrum: need min(m,n) singular values");

    // The embedding doubles each quaternion singular value, so the sorted
    // complex spectrum pairs up adjacently for a generic seed matrix. A seed
    // that happens to produce a near-degenerate cross-pair fails the unembed
    // structure check; retry deterministically.
    for (int attempt = 0; attempt < 8; ++attempt) {
        const QMat g = random_qmat(m, n, seed + 1000 * attempt);
        const SvdResult svd = jacobi_svd(embed(g));
        Eigen::VectorXd fresh(2 * k);
        for (long t = 0; t < k; ++t) fresh(2 * t) = fresh(2 * t + 1) = sigmas[t];
        const CMat rebuilt = svd.U.leftCols(2 * k) * fresh.asDiagonal() *
                             svd.V.leftCols(2 * k).adjoint();
        try {
            return unembed(rebuilt);
        } catch (const StructureError&) {
            continue;
        }
    }
    throw NumericError("with_spectrum: no structure-preserving seed found");
}

QMat near_unitary(long n, std::uint64_t seed) {
    return with_spectrum(n, n, std::vector<double>(n, 1.0), seed);
}

QMat rank_deficient(long m, long n, long r, std::uint64_t seed) {
    return mat_mul(random_qmat(m, r, seed), random_qmat(r, n, seed + 1));
}

double condition_number(const QMat& a) {
    const SvdResult svd = jacobi_svd(embed(a));
    return svd.sigma(0) / svd.sigma(svd.sigma.size() - 1);
}

double fit_order_slope(const std::vector<double>& errors, double floor, int max_pairs) {
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        if (errors[i] > floor && errors[i + 1] > floor)
            pairs.emplace_back(std::log(errors[i]), std::log(errors[i + 1]));
    if (static_cast<int>(pairs.size()) > max_pairs)
        pairs.erase(pairs.begin(), pairs.end() - max_pairs);
    if (pairs.size() < 2) throw std::invalid_argument("fit_order_slope: too few usable pairs");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pairs) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pairs.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RecurrenceState half_radius_state(long n, std::uint64_t seed) {
    RecurrenceState st;
    std::vector<double> sig(n);
    for (long i = 0; i < n; ++i) sig[i] = 2.0 - static_cast<double>(i) / n;
    st.A = with_spectrum(n, n, sig, seed);
    const QMat target = near_unitary(n, seed + 500) * 0.5;
    st.X = mat_mul(qsvd_pinv(st.A), QMat::Identity(n) - target);
    st.R = QMat::Identity(n) - mat_mul(st.A, st.X);
    return st;
}

QMat matrix_power(const QMat& r, int k) {
    QMat acc = QMat::Identity(r.rows());
    for (int i = 0; i < k; ++i) acc = mat_mul(acc, r);
    return acc;
}

QMat planted_rank5_image(long h, long w, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Eigen::MatrixXd left(h, 5);
    for (long r = 0; r < h; ++r)
        for (long c = 0; c < 5; ++c) left(r, c) = u01(rng);
    Eigen::MatrixXd vx(5, w), vy(5, w), vz(5, w);
    for (long r = 0; r < 5; ++r)
        for (long c = 0; c < w; ++c) {
            vx(r, c) = u01(rng);
            vy(r, c) = u01(rng);
            vz(r, c) = u01(rng);
        }
    Eigen::MatrixXd red = left * vx, green = left * vy, blue = left * vz;
    const double peak = std::max({red.maxCoeff(), green.maxCoeff(), blue.maxCoeff()});
    return QMat::from_planes(Eigen::MatrixXd::Zero(h, w), red / peak, green / peak, blue / peak);
}

}  // namespace quatern::testgen
