#pragma once

#include <array>
#include <string>
#include <vector>

#include "quatern/pinv.hpp"

namespace quatern {

/// Built-in 3x3 verification problem with a known pseudoinverse.
QMat selftest_matrix();

/// Reference pseudoinverse entries, rounded to 4 decimal places.
QMat selftest_expected_pinv();

/// Reference scaling parameter 1/sigma_1^2 for the matrix above.
double selftest_expected_alpha();

struct SelftestEntry {
    std::string method;
    int iterations = 0;
    int expected_iterations = 0;  // 0 = no iteration requirement (direct solver)
    std::array<double, 4> penrose{};
    double max_entry_dev = 0.0;  // worst |computed - reference| over components
    bool entries_ok = false;
    bool iterations_ok = false;
};

struct SelftestResult {
    double alpha = 0.0;
    double alpha_rel_err = 0.0;
    bool alpha_ok = false;
    std::vector<SelftestEntry> entries;
    bool passed = false;
};

/// Runs QSAI, QRAPID, QHPI19 and the QSVD route on the verification problem
/// and checks alpha, the 4-decimal entry agreement, and the iteration counts
/// (QSAI 4, QRAPID 4, QHPI19 3 at tol 1e-10).
SelftestResult run_selftest();

}  // namespace quatern
