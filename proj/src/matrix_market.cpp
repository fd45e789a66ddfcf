#include "quatern/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "quatern/random.hpp"

namespace quatern {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

Eigen::MatrixXd parse_matrix_market(std::istream& is, const std::string& name) {
    std::string line;
    long lineno = 0;

    if (!std::getline(is, line)) throw ParseError(name + ": empty file", 1);
    ++lineno;
    std::istringstream head(line);
    std::string banner, object, format, field, symmetry;
    head >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") throw ParseError(name + ": missing %%MatrixMarket banner", 1);
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix" || format != "coordinate" || field != "real" ||
        (symmetry != "general" && symmetry != "symmetric"))
        throw ParseError(name + ": only 'matrix coordinate real {general|symmetric}' supported, got '" +
                             object + " " + format + " " + field + " " + symmetry + "'",
                         1);
    const bool symmetric = symmetry == "symmetric";

    long rows = -1, cols = -1, nnz = -1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream sz(line);
        if (!(sz >> rows >> cols >> nnz)) throw ParseError(name + ": bad size line", lineno);
        break;
    }
    if (rows <= 0 || cols <= 0 || nnz < 0)
        throw ParseError(name + ": missing or invalid size line", lineno);

    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(rows, cols);
    long seen = 0;
    while (seen < nnz) {
        if (!std::getline(is, line))
            throw ParseError(name + ": truncated body, expected " + std::to_string(nnz) +
                                 " entries, got " + std::to_string(seen),
                             lineno + 1);
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream es(line);
        long r, c;
        double v;
        if (!(es >> r >> c >> v)) throw ParseError(name + ": bad entry line", lineno);
        if (r < 1 || r > rows || c < 1 || c > cols)
            throw ParseError(name + ": index (" + std::to_string(r) + "," + std::to_string(c) +
                                 ") out of range",
                             lineno);
        dense(r - 1, c - 1) += v;  // duplicates sum
        if (symmetric && r != c) dense(c - 1, r - 1) += v;
        ++seen;
    }
    return dense;
}

Eigen::MatrixXd parse_matrix_market_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return parse_matrix_market(is, path);
}

QuatSystem build_saylr1_system(const Eigen::MatrixXd& seed_matrix, long m, std::uint64_t seed) {
    if (seed_matrix.rows() != seed_matrix.cols())
        throw std::invalid_argument("build_saylr1_system: seed matrix must be square");
    const Eigen::MatrixXd& s = seed_matrix;
    QuatSystem sys;
    sys.A = QMat::from_planes(s, -s, 2.0 * s, 1.5 * s);
    sys.B = random_uniform_qmat(s.rows(), m, seed);
    return sys;
}

Eigen::MatrixXd synthetic_reservoir_matrix(long ny, long nx) {
    const long n = ny * nx;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    const auto id = [nx](long iy, long ix) { return iy * nx + ix; };
    // Smoothly varying permeability with large contrast plus a mild
    // nonsymmetric convection term; condition number around 2e5 at the
    // default grid, enough that a loose approximate inverse is useful but
    // not exact.
    const auto perm = [&](double fy, double fx) {
        return std::exp(11.0 * std::sin(2.7 * fy + 0.4) * std::cos(1.9 * fx - 0.3));
    };
    for (long iy = 0; iy < ny; ++iy)
        for (long ix = 0; ix < nx; ++ix) {
            const long c = id(iy, ix);
            const double fy = static_cast<double>(iy) / ny;
            const double fx = static_cast<double>(ix) / nx;
            const double k0 = perm(fy, fx);
            double diag = 0.0;
            const long neigh[4][2] = {{iy - 1, ix}, {iy + 1, ix}, {iy, ix - 1}, {iy, ix + 1}};
            for (auto& nb : neigh) {
                if (nb[0] < 0 || nb[0] >= ny || nb[1] < 0 || nb[1] >= nx) {
                    diag += k0;
                    continue;
                }
                const double kn =
                    0.5 * (k0 + perm(static_cast<double>(nb[0]) / ny,
                                     static_cast<double>(nb[1]) / nx));
                a(c, id(nb[0], nb[1])) = -kn;
                diag += kn;
            }
            const double convection = 0.15 * k0;
            if (ix + 1 < nx) a(c, id(iy, ix + 1)) -= convection;
            if (ix > 0) a(c, id(iy, ix - 1)) += convection;
            a(c, c) = diag + 1e-4;
        }
    return a;
}

}  // namespace quatern
