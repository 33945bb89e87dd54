#pragma once

// X = SL3(R)/SO(3) as unit-determinant positive definite symmetric 3x3
// matrices.  S represents the ellipsoid {v : S(v).v <= 1}.

#include <array>
#include <variant>

#include "pappus/jacobi.hpp"
#include "pappus/projective.hpp"

namespace pappus {

struct XPoint {
    Mat3d s;

    XPoint() : s(identity3<double>()) {}
    // Symmetrizes and divides by det^(1/3); throws unless positive definite.
    explicit XPoint(const Mat3d& m);
};

struct FrameDecomp {
    Mat3d frame;    // orthonormal columns
    Vec3d lengths;  // principal lengths, descending, product 1
    bool unique = true;
};

// point(τ) = G diag(exp(-2τ v)) Gᵀ (normalized), with v a unit vector of
// zero sum.  G Gᵀ is the base point; τ is arclength.
struct XGeodesic {
    Mat3d g;
    Vec3d v;

    XPoint base() const;
    Mat3d direction() const;  // tangent at the base as a symmetric traceless matrix
    XGeodesic reversed() const { return {g, {-v[0], -v[1], -v[2]}}; }
};

// Triangle (3 vertices, 3 sides) and the matching flat.  Flat points are
// B^-T diag(exp(-2u)) B^-1 for u in the zero-sum plane, where the columns
// of B are the vertices.  Distance in the flat is |u - u'|.
struct Flat {
    std::array<ProjPoint<double>, 3> vertices;
    std::array<ProjLine<double>, 3> sides;  // side k is opposite vertex k
    Mat3d basis;                            // columns = vertices (unit vectors)
    Vec3d center{0, 0, 0};                  // chart center used by samplers

    XPoint point(const Vec3d& u) const;
    // Flat coordinates of s (projected to the zero-sum plane) and the
    // relative off-diagonal residual of BᵀSB.
    Vec3d coords(const XPoint& s, double* residual = nullptr) const;
    bool contains(const XPoint& s, double tol = 1e-10) const;
    // Geodesic through point(u0) with unit flat direction w.
    XGeodesic geodesic(const Vec3d& u0, const Vec3d& w) const;
};

double lambda_norm(const XPoint& e);
double metric_d(const XPoint& a, const XPoint& b);

// (T⁻¹)ᵀ S T⁻¹ for a map T (any nonzero determinant; rescaled).
XPoint group_action(const Mat3d& t, const XPoint& e);
XGeodesic group_action(const Mat3d& t, const XGeodesic& g);

// S -> q S⁻¹ q.  Any polarity acts this way as an isometry; definiteness
// of q is not required.
XPoint duality_action(const Mat3d& q, const XPoint& e);
XGeodesic duality_action(const Mat3d& q, const XGeodesic& g);

FrameDecomp eigen_frame(const XPoint& e);

XPoint geodesic_point(const XGeodesic& g, double tau);
// Unit-speed geodesic with geodesic_point(g, 0) = a and geodesic_point(g, d(a,b)) = b.
XGeodesic geodesic_between(const XPoint& a, const XPoint& b);

Flat flat_from_triangle(const Vec3d& p1, const Vec3d& p2, const Vec3d& p3);

struct PointClass {
    ProjPoint<double> point;
};
struct LineClass {
    ProjLine<double> line;
};
struct FlagClass {
    Flag<double> flag;
};
struct GenericClass {};
using BoundaryClass = std::variant<PointClass, LineClass, FlagClass, GenericClass>;

// Limit of g in the forward (+1) or backward (-1) direction.
BoundaryClass boundary_ray_class(const XGeodesic& g, int direction, double threshold = 1e-8);

struct FlatBoundary {
    std::array<ProjPoint<double>, 3> points;
    std::array<ProjLine<double>, 3> lines;
    std::array<Flag<double>, 6> flags;  // cyclic order around the hexagon
};

FlatBoundary flat_boundary_data(const Flat& f);

// q/det(q)^(1/3) with the sign making it positive definite.
XPoint polarity_fixed_point(const Mat3d& q);

// Flat directions of the hexagon of medial rays, in the order matching
// flat_boundary_data(f).flags.
std::array<Vec3d, 6> medial_directions();

}  // namespace pappus
