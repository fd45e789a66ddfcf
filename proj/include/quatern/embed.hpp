#pragma once

#include "quatern/qmat.hpp"

namespace quatern {

/// Complex representation of A = S + Xi + Yj + Zk, a 2m x 2n complex matrix
///
///     [  S + Xi   Y + Zi ]
///     [ -Y + Zi   S - Xi ]
///
/// The map is a ring homomorphism: embed(A*B) = embed(A)*embed(B) and
/// embed(A^H) = embed(A)^H, which is what lets all spectral work happen
/// in the complex domain.
CMat embed(const QMat& a);

/// Left inverse of embed. The input must carry the block symmetry of a
/// quaternion embedding to within tau = 1e-8 * (1 + |C|_F); anything worse
/// throws StructureError with the measured deviation.
QMat unembed(const CMat& c);

/// Frobenius distance from C to the embedding manifold (0 for exact images).
double embed_structure_deviation(const CMat& c);

}  // namespace quatern
