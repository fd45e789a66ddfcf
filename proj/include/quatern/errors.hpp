#pragma once

#include <stdexcept>
#include <string>

namespace quatern {

/// Incompatible matrix shapes. The message names both operand shapes.
class ShapeError : public std::invalid_argument {
public:
    ShapeError(const std::string& op, long ar, long ac, long br, long bc)
        : std::invalid_argument(op + ": shape mismatch " + std::to_string(ar) + "x" +
                                std::to_string(ac) + " vs " + std::to_string(br) + "x" +
                                std::to_string(bc)),
          lhs_rows(ar), lhs_cols(ac), rhs_rows(br), rhs_cols(bc) {}

    long lhs_rows, lhs_cols, rhs_rows, rhs_cols;
};

/// Malformed input file; carries the 1-based line number where parsing failed.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line(line) {}

    long line;
};

/// A complex matrix fails the block symmetry required of a quaternion embedding.
class StructureError : public std::runtime_error {
public:
    StructureError(const std::string& what, double deviation)
        : std::runtime_error(what + " (deviation " + std::to_string(deviation) + ")"),
          deviation(deviation) {}

    double deviation;
};

/// Numerical failure: zero operator, SVD sweep cap, diverged backend, ...
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace quatern
