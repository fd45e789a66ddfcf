#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "quatern/qmat.hpp"

namespace quatern {

/// Seeded quaternion matrix with i.i.d. standard normal components.
QMat random_qmat(long rows, long cols, std::uint64_t seed);

/// Seeded quaternion matrix with all four components uniform on [0, 1).
QMat random_uniform_qmat(long rows, long cols, std::uint64_t seed);

/// Purely imaginary seeded matrix (scalar parts exactly zero).
QMat random_imaginary_qmat(long rows, long cols, std::uint64_t seed);

/// k distinct indices drawn uniformly from [0, n) without replacement.
std::vector<long> sample_without_replacement(long n, long k, std::uint64_t seed);

/// Random 0/1 mask with roughly missing_fraction zeros (each entry kept
/// independently with probability 1 - missing_fraction).
Eigen::MatrixXd random_mask(long rows, long cols, double missing_fraction, std::uint64_t seed);

}  // namespace quatern
