#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <vector>

#include "quatern/errors.hpp"
#include "quatern/quaternion.hpp"

namespace quatern {

/// Tally of quaternion matrix-matrix products. Solvers own one per run and
/// thread it explicitly; there is no global counter.
struct MulCounter {
    std::int64_t count = 0;
};

/// Dense row-major quaternion matrix: one contiguous array of 4-component
/// entries. Immutable by convention once built; all operations below are
/// pure functions returning fresh values.
template <class T>
class QuatMatrix {
public:
    using Scalar = Quaternion<T>;
    using RealMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

    QuatMatrix() = default;
    QuatMatrix(long rows, long cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QuatMatrix Zero(long rows, long cols) { return QuatMatrix(rows, cols); }

    static QuatMatrix Identity(long n) {
        QuatMatrix m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = Scalar(T(1));
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    long size() const { return rows_ * cols_; }

    Scalar& operator()(long r, long c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(long r, long c) const { return data_[r * cols_ + c]; }

    Scalar* data() { return data_.data(); }
    const Scalar* data() const { return data_.data(); }

    /// Splits into the four real component planes (s, x, y, z).
    std::array<RealMatrix, 4> to_planes() const {
        std::array<RealMatrix, 4> p{RealMatrix(rows_, cols_), RealMatrix(rows_, cols_),
                                    RealMatrix(rows_, cols_), RealMatrix(rows_, cols_)};
        for (long r = 0; r < rows_; ++r)
            for (long c = 0; c < cols_; ++c) {
                const Scalar& q = (*this)(r, c);
                p[0](r, c) = q.s;
                p[1](r, c) = q.x;
                p[2](r, c) = q.y;
                p[3](r, c) = q.z;
            }
        return p;
    }

    static QuatMatrix from_planes(const RealMatrix& s, const RealMatrix& x, const RealMatrix& y,
                                  const RealMatrix& z) {
        QuatMatrix m(s.rows(), s.cols());
        for (long r = 0; r < m.rows_; ++r)
            for (long c = 0; c < m.cols_; ++c) m(r, c) = Scalar(s(r, c), x(r, c), y(r, c), z(r, c));
        return m;
    }

    friend bool operator==(const QuatMatrix& a, const QuatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    long rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

namespace detail {

template <class T>
void require_same_shape(const char* op, const QuatMatrix<T>& a, const QuatMatrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError(op, a.rows(), a.cols(), b.rows(), b.cols());
}

}  // namespace detail

template <class T>
QuatMatrix<T> operator+(const QuatMatrix<T>& a, const QuatMatrix<T>& b) {
    detail::require_same_shape("operator+", a, b);
    QuatMatrix<T> out(a.rows(), a.cols());
    for (long i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
    return out;
}

template <class T>
QuatMatrix<T> operator-(const QuatMatrix<T>& a, const QuatMatrix<T>& b) {
    detail::require_same_shape("operator-", a, b);
    QuatMatrix<T> out(a.rows(), a.cols());
    for (long i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
    return out;
}

template <class T>
QuatMatrix<T> operator-(const QuatMatrix<T>& a) {
    QuatMatrix<T> out(a.rows(), a.cols());
    for (long i = 0; i < a.size(); ++i) out.data()[i] = -a.data()[i];
    return out;
}

template <class T>
QuatMatrix<T> operator*(const QuatMatrix<T>& a, T c) {
    QuatMatrix<T> out(a.rows(), a.cols());
    for (long i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] * c;
    return out;
}

template <class T>
QuatMatrix<T> operator*(T c, const QuatMatrix<T>& a) {
    return a * c;
}

/// Entrywise right scalar multiplication A(r,c) * q.
template <class T>
QuatMatrix<T> operator*(const QuatMatrix<T>& a, const Quaternion<T>& q) {
    QuatMatrix<T> out(a.rows(), a.cols());
    for (long i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] * q;
    return out;
}

/// Entrywise left scalar multiplication q * A(r,c).
template <class T>
QuatMatrix<T> operator*(const Quaternion<T>& q, const QuatMatrix<T>& a) {
    QuatMatrix<T> out(a.rows(), a.cols());
    for (long i = 0; i < a.size(); ++i) out.data()[i] = q * a.data()[i];
    return out;
}

/// Conjugate transpose: (A^H)(r,c) = conj(A(c,r)).
template <class T>
QuatMatrix<T> adjoint(const QuatMatrix<T>& a) {
    QuatMatrix<T> out(a.cols(), a.rows());
    for (long r = 0; r < a.rows(); ++r)
        for (long c = 0; c < a.cols(); ++c) out(c, r) = conj(a(r, c));
    return out;
}

template <class T>
T squared_frobenius(const QuatMatrix<T>& a) {
    T acc = T(0);
    for (long i = 0; i < a.size(); ++i) acc += squared_norm(a.data()[i]);
    return acc;
}

template <class T>
T frobenius(const QuatMatrix<T>& a) {
    return std::sqrt(squared_frobenius(a));
}

template <class T>
T fro_dist(const QuatMatrix<T>& a, const QuatMatrix<T>& b) {
    detail::require_same_shape("fro_dist", a, b);
    T acc = T(0);
    for (long i = 0; i < a.size(); ++i) acc += squared_norm(a.data()[i] - b.data()[i]);
    return std::sqrt(acc);
}

template <class T>
QuatMatrix<T> hadamard(const QuatMatrix<T>& a, const QuatMatrix<T>& b) {
    detail::require_same_shape("hadamard", a, b);
    QuatMatrix<T> out(a.rows(), a.cols());
    for (long i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] * b.data()[i];
    return out;
}

template <class T>
QuatMatrix<T> identity(long n) {
    return QuatMatrix<T>::Identity(n);
}

/// Keeps observed entries of M and fills the rest from X:
/// mask (.) M + (1 - mask) (.) X, with mask a real 0/1 matrix broadcast over
/// all four quaternion components.
template <class T>
QuatMatrix<T> real_mask_apply(const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& mask,
                              const QuatMatrix<T>& m, const QuatMatrix<T>& x) {
    detail::require_same_shape("real_mask_apply", m, x);
    if (mask.rows() != m.rows() || mask.cols() != m.cols())
        throw ShapeError("real_mask_apply(mask)", mask.rows(), mask.cols(), m.rows(), m.cols());
    QuatMatrix<T> out(m.rows(), m.cols());
    for (long r = 0; r < m.rows(); ++r)
        for (long c = 0; c < m.cols(); ++c) {
            const T w = mask(r, c);
            out(r, c) = m(r, c) * w + x(r, c) * (T(1) - w);
        }
    return out;
}

/// Matrix product with quaternion products taken in left-to-right order:
/// (A*B)(r,c) = sum_t A(r,t) * B(t,c). Counts one multiplication on the
/// tally when one is supplied.
///
/// Larger products are evaluated as 16 real GEMMs on the component planes,
/// which encodes the Hamilton sign table explicitly and rides Eigen's kernels.
template <class T>
QuatMatrix<T> mat_mul(const QuatMatrix<T>& a, const QuatMatrix<T>& b, MulCounter* tally = nullptr) {
    if (a.cols() != b.rows()) throw ShapeError("mat_mul", a.rows(), a.cols(), b.rows(), b.cols());
    if (tally) ++tally->count;

    const long m = a.rows(), p = a.cols(), n = b.cols();
    QuatMatrix<T> out(m, n);

    if (m * p * n < 4096) {
        for (long r = 0; r < m; ++r)
            for (long t = 0; t < p; ++t) {
                const Quaternion<T> art = a(r, t);
                for (long c = 0; c < n; ++c) out(r, c) += art * b(t, c);
            }
        return out;
    }

    const auto ap = a.to_planes();
    const auto bp = b.to_planes();
    const auto& as = ap[0]; const auto& ax = ap[1]; const auto& ay = ap[2]; const auto& az = ap[3];
    const auto& bs = bp[0]; const auto& bx = bp[1]; const auto& by = bp[2]; const auto& bz = bp[3];

    using RM = typename QuatMatrix<T>::RealMatrix;
    RM cs = as * bs - ax * bx - ay * by - az * bz;
    RM cx = as * bx + ax * bs + ay * bz - az * by;
    RM cy = as * by - ax * bz + ay * bs + az * bx;
    RM cz = as * bz + ax * by - ay * bx + az * bs;
    return QuatMatrix<T>::from_planes(cs, cx, cy, cz);
}

template <class T>
QuatMatrix<T> operator*(const QuatMatrix<T>& a, const QuatMatrix<T>& b) {
    return mat_mul(a, b);
}

template <class T>
QuatMatrix<T> select_rows(const QuatMatrix<T>& a, const std::vector<long>& idx) {
    QuatMatrix<T> out(static_cast<long>(idx.size()), a.cols());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        if (idx[r] < 0 || idx[r] >= a.rows())
            throw std::out_of_range("select_rows: index " + std::to_string(idx[r]));
        for (long c = 0; c < a.cols(); ++c) out(static_cast<long>(r), c) = a(idx[r], c);
    }
    return out;
}

template <class T>
QuatMatrix<T> select_cols(const QuatMatrix<T>& a, const std::vector<long>& idx) {
    QuatMatrix<T> out(a.rows(), static_cast<long>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) {
        if (idx[c] < 0 || idx[c] >= a.cols())
            throw std::out_of_range("select_cols: index " + std::to_string(idx[c]));
        for (long r = 0; r < a.rows(); ++r) out(r, static_cast<long>(c)) = a(r, idx[c]);
    }
    return out;
}

using QMat = QuatMatrix<double>;
using CMat = Eigen::MatrixXcd;

}  // namespace quatern
