#include "quatern/random.hpp"

#include <algorithm>
#include <numeric>

namespace quatern {

QMat random_qmat(long rows, long cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    QMat a(rows, cols);
    for (long i = 0; i < a.size(); ++i)
        a.data()[i] = Quat(dist(rng), dist(rng), dist(rng), dist(rng));
    return a;
}

QMat random_uniform_qmat(long rows, long cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    QMat a(rows, cols);
    for (long i = 0; i < a.size(); ++i)
        a.data()[i] = Quat(dist(rng), dist(rng), dist(rng), dist(rng));
    return a;
}

QMat random_imaginary_qmat(long rows, long cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    QMat a(rows, cols);
    for (long i = 0; i < a.size(); ++i)
        a.data()[i] = Quat(0.0, dist(rng), dist(rng), dist(rng));
    return a;
}

std::vector<long> sample_without_replacement(long n, long k, std::uint64_t seed) {
    std::vector<long> all(n);
    std::iota(all.begin(), all.end(), 0L);
    std::mt19937_64 rng(seed);
    for (long i = 0; i < k; ++i) {
        std::uniform_int_distribution<long> pick(i, n - 1);
        std::swap(all[i], all[pick(rng)]);
    }
    all.resize(k);
    return all;
}

Eigen::MatrixXd random_mask(long rows, long cols, double missing_fraction, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Eigen::MatrixXd mask(rows, cols);
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < cols; ++c) mask(r, c) = dist(rng) < missing_fraction ? 0.0 : 1.0;
    return mask;
}

}  // namespace quatern
