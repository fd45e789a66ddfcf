#include "quatern/embed.hpp"

#include <complex>

namespace quatern {

using Cplx = std::complex<double>;

CMat embed(const QMat& a) {
    const long m = a.rows(), n = a.cols();
    CMat c(2 * m, 2 * n);
    for (long r = 0; r < m; ++r)
        for (long t = 0; t < n; ++t) {
            const Quat& q = a(r, t);
            c(r, t) = Cplx(q.s, q.x);
            c(r, t + n) = Cplx(q.y, q.z);
            c(r + m, t) = Cplx(-q.y, q.z);
            c(r + m, t + n) = Cplx(q.s, -q.x);
        }
    return c;
}

namespace {

QMat unembed_unchecked(const CMat& c) {
    const long m = c.rows() / 2, n = c.cols() / 2;
    QMat a(m, n);
    for (long r = 0; r < m; ++r)
        for (long t = 0; t < n; ++t) {
            const Cplx tl = c(r, t), tr = c(r, t + n);
            const Cplx bl = c(r + m, t), br = c(r + m, t + n);
            a(r, t) = Quat(0.5 * (tl.real() + br.real()), 0.5 * (tl.imag() - br.imag()),
                           0.5 * (tr.real() - bl.real()), 0.5 * (tr.imag() + bl.imag()));
        }
    return a;
}

}  // namespace

double embed_structure_deviation(const CMat& c) {
    if (c.rows() % 2 != 0 || c.cols() % 2 != 0)
        throw StructureError("unembed: dimensions must be even", 0.0);
    return (c - embed(unembed_unchecked(c))).norm();
}

QMat unembed(const CMat& c) {
    const double dev = embed_structure_deviation(c);
    const double tau = 1e-8 * (1.0 + c.norm());
    if (dev > tau) throw StructureError("unembed: block symmetry violated", dev);
    return unembed_unchecked(c);
}

}  // namespace quatern
