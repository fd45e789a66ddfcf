#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "quatern/qmat.hpp"

namespace quatern {

/// Matrix Market "matrix coordinate real {general|symmetric}" reader.
/// 1-based indices become 0-based, symmetric entries are mirrored, duplicate
/// coordinates are summed, and the result is materialized densely. Any other
/// header or a malformed body raises ParseError with the line number.
Eigen::MatrixXd parse_matrix_market(std::istream& is, const std::string& name = "<stream>");
Eigen::MatrixXd parse_matrix_market_file(const std::string& path);

/// Quaternion test system used by the preconditioning experiment: the real
/// seed matrix S becomes A = S (1 - i + 2j + 1.5k) componentwise, and B is an
/// n x m block with all four components uniform on [0,1) from the given seed.
struct QuatSystem {
    QMat A;
    QMat B;
};

QuatSystem build_saylr1_system(const Eigen::MatrixXd& seed_matrix, long m, std::uint64_t seed);

/// Stand-in for the reservoir test matrix when the real file is absent: an
/// anisotropic 5-point convection-diffusion operator on an ny x nx grid with
/// coefficient contrast of about 1e3. Deterministic, no RNG involved.
Eigen::MatrixXd synthetic_reservoir_matrix(long ny = 14, long nx = 17);

}  // namespace quatern
