#include "pappus/symmspace.hpp"

#include <algorithm>
#include <cmath>

namespace pappus {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt6 = 2.449489742783178;

// Lower-triangular L with L Lᵀ = a; returns false unless a is positive definite.
bool cholesky(const Mat3d& a, Mat3d& l) {
    l = Mat3d{};
    for (int j = 0; j < 3; ++j) {
        double d = a[j][j];
        for (int k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
        if (!(d > 0)) return false;
        l[j][j] = std::sqrt(d);
        for (int i = j + 1; i < 3; ++i) {
            double s = a[i][j];
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            l[i][j] = s / l[j][j];
        }
    }
    return true;
}

Mat3d symmetrized(const Mat3d& m) {
    Mat3d r = m;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) r[i][j] = r[j][i] = 0.5 * (m[i][j] + m[j][i]);
    return r;
}

// Rescale so |det| = 1.
Mat3d unimodular(const Mat3d& m) {
    double d = det(m);
    if (d == 0 || !std::isfinite(d)) throw GeometryError(ErrorCode::SingularMap, "singular matrix");
    return scaled(m, 1.0 / std::cbrt(std::fabs(d)));
}

Mat3d congruence(const Mat3d& g, const Vec3d& d) {
    // g diag(d) gᵀ
    Mat3d r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += g[i][k] * d[k] * g[j][k];
            r[i][j] = s;
        }
    return r;
}

Vec3d unit_zero_sum(const Vec3d& w) {
    double m = (w[0] + w[1] + w[2]) / 3.0;
    Vec3d r{w[0] - m, w[1] - m, w[2] - m};
    double n = norm_d(r);
    if (n == 0) throw GeometryError(ErrorCode::ZeroDirection, "zero direction");
    return scaled(r, 1.0 / n);
}

}  // namespace

XPoint::XPoint(const Mat3d& m) {
    Mat3d a = symmetrized(m);
    Mat3d l;
    if (!cholesky(a, l)) throw GeometryError(ErrorCode::OutOfRange, "matrix is not positive definite");
    double d = l[0][0] * l[1][1] * l[2][2];
    s = scaled(a, 1.0 / std::cbrt(d * d));
}

XPoint XGeodesic::base() const { return XPoint(mul(g, transpose(g))); }

Mat3d XGeodesic::direction() const {
    // derivative of G diag(exp(-2τv)) Gᵀ at τ = 0, expressed at the base
    // point b as b^(-1/2) (dS/dτ) b^(-1/2) / (-2): a traceless symmetric
    // matrix whose eigenvalues are v.
    Mat3d b = mul(g, transpose(g));
    SymEigen e = jacobi_eigen(b);
    Vec3d isq{1 / std::sqrt(e.values[0]), 1 / std::sqrt(e.values[1]), 1 / std::sqrt(e.values[2])};
    Mat3d bmh = congruence(e.vectors, isq);
    Mat3d q = mul(bmh, g);  // orthogonal
    return symmetrized(congruence(q, v));
}

XPoint geodesic_point(const XGeodesic& g, double tau) {
    Vec3d d{std::exp(-2 * tau * g.v[0]), std::exp(-2 * tau * g.v[1]), std::exp(-2 * tau * g.v[2])};
    return XPoint(congruence(g.g, d));
}

double metric_d(const XPoint& a, const XPoint& b) {
    Mat3d l;
    if (!cholesky(a.s, l)) throw GeometryError(ErrorCode::NumericalFailure, "cholesky failed");
    Mat3d li = inverse(l);
    Mat3d m = symmetrized(mul(li, mul(b.s, transpose(li))));
    SymEigen e = jacobi_eigen(m);
    double acc = 0;
    for (double mu : e.values) {
        if (!(mu > 0)) throw GeometryError(ErrorCode::NumericalFailure, "nonpositive generalized eigenvalue");
        double lg = std::log(mu);
        acc += lg * lg;
    }
    return 0.5 * std::sqrt(acc);
}

double lambda_norm(const XPoint& e) { return metric_d(XPoint(), e); }

XPoint group_action(const Mat3d& t, const XPoint& e) {
    Mat3d ti = inverse(unimodular(t));
    return XPoint(mul(transpose(ti), mul(e.s, ti)));
}

XGeodesic group_action(const Mat3d& t, const XGeodesic& g) {
    Mat3d ti = inverse(unimodular(t));
    return {mul(transpose(ti), g.g), g.v};
}

XPoint duality_action(const Mat3d& q, const XPoint& e) {
    Mat3d qn = unimodular(q);
    return XPoint(mul(qn, mul(inverse(e.s), qn)));
}

XGeodesic duality_action(const Mat3d& q, const XGeodesic& g) {
    Mat3d qn = unimodular(q);
    return {mul(qn, transpose(inverse(unimodular(g.g)))), {-g.v[0], -g.v[1], -g.v[2]}};
}

FrameDecomp eigen_frame(const XPoint& e) {
    SymEigen se = jacobi_eigen(e.s);
    FrameDecomp f;
    // ascending eigenvalues <-> descending lengths
    for (int k = 0; k < 3; ++k) {
        f.lengths[k] = 1.0 / std::sqrt(se.values[2 - k]);
        for (int i = 0; i < 3; ++i) f.frame[i][k] = se.vectors[i][2 - k];
    }
    double scale = std::fabs(se.values[0]);
    f.unique = std::fabs(se.values[0] - se.values[1]) > 1e-8 * scale && std::fabs(se.values[1] - se.values[2]) > 1e-8 * scale;
    return f;
}

XGeodesic geodesic_between(const XPoint& a, const XPoint& b) {
    Mat3d l;
    if (!cholesky(a.s, l)) throw GeometryError(ErrorCode::NumericalFailure, "cholesky failed");
    Mat3d li = inverse(l);
    SymEigen e = jacobi_eigen(symmetrized(mul(li, mul(b.s, transpose(li)))));
    Vec3d lg{std::log(e.values[0]), std::log(e.values[1]), std::log(e.values[2])};
    double d = 0.5 * norm_d(lg);
    if (d == 0) throw GeometryError(ErrorCode::ZeroDirection, "coincident endpoints");
    return {mul(l, e.vectors), scaled(lg, -1.0 / (2 * d))};
}

XPoint Flat::point(const Vec3d& u) const {
    Mat3d bit = transpose(inverse(basis));
    return XPoint(congruence(bit, {std::exp(-2 * u[0]), std::exp(-2 * u[1]), std::exp(-2 * u[2])}));
}

Vec3d Flat::coords(const XPoint& s, double* residual) const {
    Mat3d d = mul(transpose(basis), mul(s.s, basis));
    if (residual) {
        double r = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) r = std::max(r, std::fabs(d[i][j]) / std::sqrt(d[i][i] * d[j][j]));
        *residual = r;
    }
    Vec3d u{-0.5 * std::log(d[0][0]), -0.5 * std::log(d[1][1]), -0.5 * std::log(d[2][2])};
    double m = (u[0] + u[1] + u[2]) / 3.0;
    return {u[0] - m, u[1] - m, u[2] - m};
}

bool Flat::contains(const XPoint& s, double tol) const {
    double r;
    coords(s, &r);
    return r < tol;
}

XGeodesic Flat::geodesic(const Vec3d& u0, const Vec3d& w) const {
    Mat3d bit = transpose(inverse(basis));
    Mat3d g = bit;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) g[i][k] = bit[i][k] * std::exp(-u0[k]);
    return {g, unit_zero_sum(w)};
}

Flat flat_from_triangle(const Vec3d& p1, const Vec3d& p2, const Vec3d& p3) {
    Flat f;
    Vec3d p[3] = {scaled(p1, 1.0 / norm_d(p1)), scaled(p2, 1.0 / norm_d(p2)), scaled(p3, 1.0 / norm_d(p3))};
    f.basis = from_columns(p[0], p[1], p[2]);
    if (std::fabs(det(f.basis)) < 1e-12) throw GeometryError(ErrorCode::CollinearVertices, "flat_from_triangle");
    for (int k = 0; k < 3; ++k) {
        f.vertices[k] = ProjPoint<double>(p[k]);
        f.sides[k] = ProjLine<double>(canonical(cross(p[(k + 1) % 3], p[(k + 2) % 3])));
    }
    return f;
}

BoundaryClass boundary_ray_class(const XGeodesic& g, int direction, double threshold) {
    if (norm_d(g.v) == 0) throw GeometryError(ErrorCode::ZeroDirection, "boundary_ray_class");
    Vec3d w = unit_zero_sum(direction >= 0 ? g.v : scaled(g.v, -1.0));
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return w[a] > w[b]; });
    Vec3d sorted{w[idx[0]], w[idx[1]], w[idx[2]]};
    auto near = [&](Vec3d pat) { return norm_d(sub(sorted, pat)) < threshold; };

    Mat3d git = transpose(inverse(unimodular(g.g)));
    auto top_point = [&] { return ProjPoint<double>(canonical(column(git, idx[0]))); };
    auto bottom_line = [&] { return ProjLine<double>(canonical(column(unimodular(g.g), idx[2]))); };

    if (near({2 / kSqrt6, -1 / kSqrt6, -1 / kSqrt6})) return PointClass{top_point()};
    if (near({1 / kSqrt6, 1 / kSqrt6, -2 / kSqrt6})) return LineClass{bottom_line()};
    if (near({1 / kSqrt2, 0, -1 / kSqrt2})) return FlagClass{{top_point(), bottom_line()}};
    return GenericClass{};
}

std::array<Vec3d, 6> medial_directions() {
    const double h = 1 / kSqrt2;
    return {{{h, 0, -h}, {h, -h, 0}, {0, -h, h}, {-h, 0, h}, {-h, h, 0}, {0, h, -h}}};
}

FlatBoundary flat_boundary_data(const Flat& f) {
    FlatBoundary out;
    out.points = f.vertices;
    out.lines = f.sides;
    // direction e_i - e_j limits to (vertex i, side opposite j)
    auto dirs = medial_directions();
    for (int k = 0; k < 6; ++k) {
        int i = 0, j = 0;
        for (int c = 0; c < 3; ++c) {
            if (dirs[k][c] > 0) i = c;
            if (dirs[k][c] < 0) j = c;
        }
        out.flags[k] = {f.vertices[i], f.sides[j]};
    }
    return out;
}

XPoint polarity_fixed_point(const Mat3d& q) {
    Mat3d a = symmetrized(q);
    SymEigen e = jacobi_eigen(a);
    if (e.values[2] > 0) return XPoint(a);
    if (e.values[0] < 0) return XPoint(scaled(a, -1.0));
    throw GeometryError(ErrorCode::NonElliptic, "polarity is not elliptic");
}

}  // namespace pappus
