#pragma once

#include <iosfwd>
#include <string>

#include "quatern/qmat.hpp"

namespace quatern {

/// Shortest decimal string that round-trips the double exactly.
/// Negative zero is canonicalized to "0".
std::string format_double(double v);

/// QMAT text format, v1:
///   line 1:  QMAT v1 <rows> <cols>
///   then rows*cols lines, row-major, each "s x y z" at full precision.
void write_qmat(std::ostream& os, const QMat& a);
void write_qmat_file(const std::string& path, const QMat& a);

/// Throws ParseError with the offending 1-based line number on any defect:
/// bad magic, bad counts, non-numeric fields, missing or surplus lines.
QMat read_qmat(std::istream& is);
QMat read_qmat_file(const std::string& path);

}  // namespace quatern
