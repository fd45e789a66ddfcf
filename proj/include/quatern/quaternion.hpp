#pragma once

#include <cmath>
#include <iosfwd>
#include <ostream>

namespace quatern {

/// One quaternion q = s + x i + y j + z k over a real scalar type.
///
/// Multiplication follows the Hamilton convention i^2 = j^2 = k^2 = ijk = -1,
/// so ij = k and ji = -k; products are written left to right everywhere.
template <class T>
struct Quaternion {
    T s{}, x{}, y{}, z{};

    constexpr Quaternion() = default;
    constexpr Quaternion(T real) : s(real) {}
    constexpr Quaternion(T s_, T x_, T y_, T z_) : s(s_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion unit_i() { return {T(0), T(1), T(0), T(0)}; }
    static constexpr Quaternion unit_j() { return {T(0), T(0), T(1), T(0)}; }
    static constexpr Quaternion unit_k() { return {T(0), T(0), T(0), T(1)}; }

    constexpr Quaternion& operator+=(const Quaternion& r) {
        s += r.s; x += r.x; y += r.y; z += r.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& r) {
        s -= r.s; x -= r.x; y -= r.y; z -= r.z;
        return *this;
    }
    constexpr Quaternion& operator*=(T c) {
        s *= c; x *= c; y *= c; z *= c;
        return *this;
    }
    constexpr Quaternion& operator/=(T c) {
        s /= c; x /= c; y /= c; z /= c;
        return *this;
    }

    friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
    friend constexpr Quaternion operator-(const Quaternion& a) { return {-a.s, -a.x, -a.y, -a.z}; }

    /// Hamilton product; not commutative.
    friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.s * b.s - a.x * b.x - a.y * b.y - a.z * b.z,
                a.s * b.x + a.x * b.s + a.y * b.z - a.z * b.y,
                a.s * b.y - a.x * b.z + a.y * b.s + a.z * b.x,
                a.s * b.z + a.x * b.y - a.y * b.x + a.z * b.s};
    }

    friend constexpr Quaternion operator*(Quaternion a, T c) { return a *= c; }
    friend constexpr Quaternion operator*(T c, Quaternion a) { return a *= c; }
    friend constexpr Quaternion operator/(Quaternion a, T c) { return a /= c; }

    friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
        return a.s == b.s && a.x == b.x && a.y == b.y && a.z == b.z;
    }
    friend constexpr bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }
};

template <class T>
constexpr Quaternion<T> conj(const Quaternion<T>& q) {
    return {q.s, -q.x, -q.y, -q.z};
}

template <class T>
constexpr T squared_norm(const Quaternion<T>& q) {
    return q.s * q.s + q.x * q.x + q.y * q.y + q.z * q.z;
}

template <class T>
T abs(const Quaternion<T>& q) {
    return std::sqrt(squared_norm(q));
}

/// Multiplicative inverse conj(q)/|q|^2; undefined for q = 0.
template <class T>
constexpr Quaternion<T> inverse(const Quaternion<T>& q) {
    const T n2 = squared_norm(q);
    return conj(q) / n2;
}

/// Right division a * inverse(b). Order matters: this is not inverse(b) * a.
template <class T>
constexpr Quaternion<T> operator/(const Quaternion<T>& a, const Quaternion<T>& b) {
    return a * inverse(b);
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Quaternion<T>& q) {
    return os << "(" << q.s << ", " << q.x << ", " << q.y << ", " << q.z << ")";
}

using Quat = Quaternion<double>;

}  // namespace quatern
