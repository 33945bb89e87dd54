#pragma once

// Points, lines and flags of the projective plane over either scalar
// backend.  Points and lines are homogeneous vectors; a line's vector is
// the functional that vanishes on it.

#include <array>
#include <string>

#include "pappus/errors.hpp"
#include "pappus/linalg.hpp"

namespace pappus {

// Exact: divide by the first nonzero coordinate.
// Float: unit Euclidean norm, first nonzero coordinate positive.
template <class T>
Vec3<T> canonical(const Vec3<T>& v) {
    if constexpr (ScalarTraits<T>::exact) {
        for (int i = 0; i < 3; ++i)
            if (sgn(v[i]) != 0) {
                T inv = T(1) / v[i];
                return scaled(v, inv);
            }
        throw GeometryError(ErrorCode::OutOfRange, "zero homogeneous vector");
    } else {
        double n = norm_d(v);
        if (n == 0) throw GeometryError(ErrorCode::OutOfRange, "zero homogeneous vector");
        Vec3<T> r = scaled(v, T(1.0 / n));
        for (int i = 0; i < 3; ++i)
            if (!ScalarTraits<T>::is_zero(r[i])) {
                if (r[i] < 0) r = scaled(r, T(-1));
                break;
            }
        return r;
    }
}

// Same projective class.
template <class T>
bool same_class(const Vec3<T>& a, const Vec3<T>& b) {
    return is_zero_vec(cross(a, b), norm_d(a) * norm_d(b));
}

template <class T>
struct HomVec {
    Vec3<T> v;
};

template <class T>
struct ProjPoint {
    Vec3<T> v;
    ProjPoint() = default;
    explicit ProjPoint(const Vec3<T>& w) : v(w) {}
    ProjPoint(T a, T b, T c) : v{a, b, c} {}
    ProjPoint canonical_form() const { return ProjPoint(canonical(v)); }
    friend bool operator==(const ProjPoint& p, const ProjPoint& q) { return same_class(p.v, q.v); }
};

template <class T>
struct ProjLine {
    Vec3<T> v;
    ProjLine() = default;
    explicit ProjLine(const Vec3<T>& w) : v(w) {}
    ProjLine(T a, T b, T c) : v{a, b, c} {}
    ProjLine canonical_form() const { return ProjLine(canonical(v)); }
    friend bool operator==(const ProjLine& p, const ProjLine& q) { return same_class(p.v, q.v); }
};

template <class T>
bool incident(const ProjPoint<T>& p, const ProjLine<T>& l) {
    return ScalarTraits<T>::is_zero(dot(p.v, l.v), norm_d(p.v) * norm_d(l.v));
}

template <class T>
struct Flag {
    ProjPoint<T> point;
    ProjLine<T> line;
    friend bool operator==(const Flag& f, const Flag& g) { return f.point == g.point && f.line == g.line; }
};

template <class T>
struct ProjMap {
    Mat3<T> m;
};

template <class T>
struct Polarity {
    Mat3<T> q;
};

template <class T>
ProjLine<T> join(const ProjPoint<T>& p, const ProjPoint<T>& q) {
    Vec3<T> l = cross(p.v, q.v);
    if (is_zero_vec(l, norm_d(p.v) * norm_d(q.v))) throw GeometryError(ErrorCode::CoincidentPoints, "join");
    return ProjLine<T>(l);
}

template <class T>
ProjPoint<T> meet(const ProjLine<T>& a, const ProjLine<T>& b) {
    Vec3<T> p = cross(a.v, b.v);
    if (is_zero_vec(p, norm_d(a.v) * norm_d(b.v))) throw GeometryError(ErrorCode::CoincidentLines, "meet");
    return ProjPoint<T>(p);
}

template <class T>
bool collinear(const ProjPoint<T>& a, const ProjPoint<T>& b, const ProjPoint<T>& c) {
    Mat3<T> m = from_columns(a.v, b.v, c.v);
    return ScalarTraits<T>::is_zero(det(m), norm_d(a.v) * norm_d(b.v) * norm_d(c.v));
}

// (a-b)(c-d) / ((a-c)(b-d)), evaluated entrywise on cross products; the
// first entry with a nonzero denominator is returned.
template <class T>
T cross_ratio(const ProjPoint<T>& a, const ProjPoint<T>& b, const ProjPoint<T>& c, const ProjPoint<T>& d) {
    // collinearity of all four: some pair spans the common line
    const ProjPoint<T>* pts[4] = {&a, &b, &c, &d};
    int distinct = 0;
    for (int i = 0; i < 4; ++i) {
        bool fresh = true;
        for (int j = 0; j < i; ++j)
            if (*pts[i] == *pts[j]) fresh = false;
        distinct += fresh;
    }
    if (distinct < 3) throw GeometryError(ErrorCode::DegenerateQuadruple, "fewer than three distinct points");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                if (!collinear(*pts[i], *pts[j], *pts[k]))
                    throw GeometryError(ErrorCode::NotCollinear, "cross_ratio");

    Vec3<T> ab = cross(a.v, b.v), cd = cross(c.v, d.v), ac = cross(a.v, c.v), bd = cross(b.v, d.v);
    double scale = norm_d(a.v) * norm_d(b.v) * norm_d(c.v) * norm_d(d.v);
    for (int k = 0; k < 3; ++k) {
        T den = T(ac[k] * bd[k]);
        if (!ScalarTraits<T>::is_zero(den, scale)) return T(T(ab[k] * cd[k]) / den);
    }
    throw GeometryError(ErrorCode::DegenerateQuadruple, "no defined entry");
}

// Triple product of three flags (P_i, L_i):
//   (P1.L2)(P2.L3)(P3.L1) / ((P2.L1)(P3.L2)(P1.L3))
template <class T>
T triple_product(const std::array<Flag<T>, 3>& J) {
    auto pl = [&](int i, int j) { return dot(J[i].point.v, J[j].line.v); };
    T den = T(pl(1, 0) * pl(2, 1) * pl(0, 2));
    double scale = 1;
    for (const auto& f : J) scale *= norm_d(f.point.v) * norm_d(f.line.v);
    if (ScalarTraits<T>::is_zero(den, scale)) throw GeometryError(ErrorCode::DegenerateFlags, "triple_product");
    return T(T(pl(0, 1) * pl(1, 2) * pl(2, 0)) / den);
}

template <class T>
ProjPoint<T> apply_map(const ProjMap<T>& f, const ProjPoint<T>& p) {
    return ProjPoint<T>(mul(f.m, p.v));
}

// Lines transform by the inverse transpose; the adjugate transpose is the
// same projective map and avoids a division.
template <class T>
ProjLine<T> apply_map(const ProjMap<T>& f, const ProjLine<T>& l) {
    return ProjLine<T>(mul(transpose(adjugate(f.m)), l.v));
}

template <class T>
Flag<T> apply_map(const ProjMap<T>& f, const Flag<T>& fl) {
    return {apply_map(f, fl.point), apply_map(f, fl.line)};
}

template <class T>
ProjMap<T> compose(const ProjMap<T>& a, const ProjMap<T>& b) {
    return {mul(a.m, b.m)};
}

template <class T>
ProjLine<T> apply_duality(const Polarity<T>& d, const ProjPoint<T>& p) {
    return ProjLine<T>(mul(d.q, p.v));
}

template <class T>
ProjPoint<T> apply_duality(const Polarity<T>& d, const ProjLine<T>& l) {
    return ProjPoint<T>(mul(adjugate(d.q), l.v));
}

template <class T>
Flag<T> apply_duality(const Polarity<T>& d, const Flag<T>& f) {
    return {apply_duality(d, f.line), apply_duality(d, f.point)};
}

template <class T>
bool is_identity_map(const ProjMap<T>& f) {
    return proportional(f.m, identity3<T>());
}

// The unique map sending src[k] to dst[k] for k = 0..3.  Columns of the
// basis matrix are scaled so the fourth point lands correctly.
template <class T>
ProjMap<T> transform_from_correspondence(const std::array<ProjPoint<T>, 4>& src, const std::array<ProjPoint<T>, 4>& dst) {
    auto frame = [](const std::array<ProjPoint<T>, 4>& q) {
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int k = j + 1; k < 4; ++k)
                    if (collinear(q[i], q[j], q[k]))
                        throw GeometryError(ErrorCode::DegenerateQuadruple, "three collinear points");
        Mat3<T> b = from_columns(q[0].v, q[1].v, q[2].v);
        Vec3<T> c = mul(adjugate(b), q[3].v);
        Mat3<T> r = b;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i][j] = T(b[i][j] * c[j]);
        return r;
    };
    Mat3<T> a = frame(src), b = frame(dst);
    ProjMap<T> f{mul(b, adjugate(a))};
    if constexpr (!ScalarTraits<T>::exact) {
        double s = max_abs(f.m);
        f.m = scaled(f.m, T(1.0 / s));
    }
    return f;
}

// q or -q positive definite.
// Exact: leading principal minors.  Float: eigenvalue signs.
bool is_elliptic(const Polarity<Rational>& d);
bool is_elliptic(const Polarity<double>& d);

template <class T>
std::string to_string(const Vec3<T>& v) {
    return "[" + ScalarTraits<T>::str(v[0]) + ":" + ScalarTraits<T>::str(v[1]) + ":" + ScalarTraits<T>::str(v[2]) + "]";
}

}  // namespace pappus
