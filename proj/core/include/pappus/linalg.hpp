#pragma once

#include <array>
#include <cmath>

#include "pappus/scalar.hpp"

namespace pappus {

template <class T>
using Vec3 = std::array<T, 3>;

template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;
using Vec3q = Vec3<Rational>;
using Mat3q = Mat3<Rational>;

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return {T(a[1] * b[2] - a[2] * b[1]), T(a[2] * b[0] - a[0] * b[2]), T(a[0] * b[1] - a[1] * b[0])};
}

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return T(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
}

template <class T>
Vec3<T> scaled(const Vec3<T>& a, const T& k) {
    return {T(a[0] * k), T(a[1] * k), T(a[2] * k)};
}

template <class T>
Vec3<T> add(const Vec3<T>& a, const Vec3<T>& b) {
    return {T(a[0] + b[0]), T(a[1] + b[1]), T(a[2] + b[2])};
}

template <class T>
Vec3<T> sub(const Vec3<T>& a, const Vec3<T>& b) {
    return {T(a[0] - b[0]), T(a[1] - b[1]), T(a[2] - b[2])};
}

template <class T>
bool is_zero_vec(const Vec3<T>& v, double scale = 1.0) {
    return ScalarTraits<T>::is_zero(v[0], scale) && ScalarTraits<T>::is_zero(v[1], scale) &&
           ScalarTraits<T>::is_zero(v[2], scale);
}

template <class T>
double norm_d(const Vec3<T>& v) {
    double s = 0;
    for (const auto& x : v) {
        double d = ScalarTraits<T>::to_double(x);
        s += d * d;
    }
    return std::sqrt(s);
}

template <class T>
Mat3<T> identity3() {
    Mat3<T> m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = T(i == j ? 1 : 0);
    return m;
}

template <class T>
Mat3<T> diag3(const Vec3<T>& d) {
    Mat3<T> m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = i == j ? d[i] : T(0);
    return m;
}

template <class T>
Mat3<T> from_columns(const Vec3<T>& c0, const Vec3<T>& c1, const Vec3<T>& c2) {
    Mat3<T> m{};
    for (int i = 0; i < 3; ++i) {
        m[i][0] = c0[i];
        m[i][1] = c1[i];
        m[i][2] = c2[i];
    }
    return m;
}

template <class T>
Vec3<T> column(const Mat3<T>& m, int j) {
    return {m[0][j], m[1][j], m[2][j]};
}

template <class T>
Vec3<T> mul(const Mat3<T>& m, const Vec3<T>& v) {
    Vec3<T> r{};
    for (int i = 0; i < 3; ++i) r[i] = T(m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2]);
    return r;
}

template <class T>
Mat3<T> mul(const Mat3<T>& a, const Mat3<T>& b) {
    Mat3<T> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = T(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j]);
    return r;
}

template <class T>
Mat3<T> transpose(const Mat3<T>& a) {
    Mat3<T> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
    return r;
}

template <class T>
Mat3<T> scaled(const Mat3<T>& a, const T& k) {
    Mat3<T> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = T(a[i][j] * k);
    return r;
}

template <class T>
Mat3<T> add(const Mat3<T>& a, const Mat3<T>& b) {
    Mat3<T> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = T(a[i][j] + b[i][j]);
    return r;
}

template <class T>
Mat3<T> sub(const Mat3<T>& a, const Mat3<T>& b) {
    Mat3<T> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = T(a[i][j] - b[i][j]);
    return r;
}

template <class T>
T det(const Mat3<T>& m) {
    return T(m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]));
}

// adj(m) with m * adj(m) = det(m) * I.
template <class T>
Mat3<T> adjugate(const Mat3<T>& m) {
    Mat3<T> r{};
    r[0][0] = T(m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    r[0][1] = T(m[0][2] * m[2][1] - m[0][1] * m[2][2]);
    r[0][2] = T(m[0][1] * m[1][2] - m[0][2] * m[1][1]);
    r[1][0] = T(m[1][2] * m[2][0] - m[1][0] * m[2][2]);
    r[1][1] = T(m[0][0] * m[2][2] - m[0][2] * m[2][0]);
    r[1][2] = T(m[0][2] * m[1][0] - m[0][0] * m[1][2]);
    r[2][0] = T(m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    r[2][1] = T(m[0][1] * m[2][0] - m[0][0] * m[2][1]);
    r[2][2] = T(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    return r;
}

template <class T>
Mat3<T> inverse(const Mat3<T>& m) {
    T d = det(m);
    T inv = T(1) / d;
    return scaled(adjugate(m), inv);
}

template <class T>
double max_abs(const Mat3<T>& m) {
    double r = 0;
    for (const auto& row : m)
        for (const auto& x : row) r = std::fmax(r, ScalarTraits<T>::magnitude(x));
    return r;
}

template <class T>
Vec3d to_double(const Vec3<T>& v) {
    return {ScalarTraits<T>::to_double(v[0]), ScalarTraits<T>::to_double(v[1]), ScalarTraits<T>::to_double(v[2])};
}

template <class T>
Mat3d to_double(const Mat3<T>& m) {
    Mat3d r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = ScalarTraits<T>::to_double(m[i][j]);
    return r;
}

// Two matrices agree up to a nonzero scalar factor.
template <class T>
bool proportional(const Mat3<T>& a, const Mat3<T>& b) {
    // find a reference entry where b is largest
    int bi = 0, bj = 0;
    double best = -1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (ScalarTraits<T>::magnitude(b[i][j]) > best) {
                best = ScalarTraits<T>::magnitude(b[i][j]);
                bi = i;
                bj = j;
            }
    if (ScalarTraits<T>::is_zero(b[bi][bj])) return false;
    double scale = max_abs(a) * best;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!ScalarTraits<T>::is_zero(T(a[i][j] * b[bi][bj] - a[bi][bj] * b[i][j]), scale)) return false;
    return !ScalarTraits<T>::is_zero(a[bi][bj], max_abs(a));
}

}  // namespace pappus
