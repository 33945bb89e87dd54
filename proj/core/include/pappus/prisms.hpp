#pragma once

// Prisms: the three flats of an ideal triangle of the Farey pattern, with
// their order-3 symmetry, the three polarities preserving the flag
// triple, and inflection data.  Instantiated for Rational and double.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pappus/fareypattern.hpp"

namespace pappus {

// x(1-x) / (y(1-y)), i.e. minus the triple product of the box.
template <class T>
T triple_ratio(const T& x, const T& y);

// |log(x(1-x)/(y(1-y)))|.
double triple_invariant(double x, double y);

// y on the level set x(1-x)/(y(1-y)) = ratio, upper or lower branch.
std::optional<double> level_set_y(double ratio, double x, bool upper = true);

template <class T>
struct CharacterPoint {
    T x, y;
};

// Rotation by a quarter turn about (1/2,1/2): (x,y) -> (1-y, x).
template <class T>
CharacterPoint<T> rho(const CharacterPoint<T>& c) {
    return {T(T(1) - c.y), c.x};
}

// Representative in the quadrant y - 1/2 >= |x - 1/2|, lexicographically
// smallest when several rotations land there.
template <class T>
CharacterPoint<T> canonical_character(const T& x, const T& y);

template <class T>
struct Prism {
    MarkedBox<T> box;                    // M
    std::array<MarkedBox<T>, 3> boxes;   // i(M), t(M), b(M)
    std::array<Flag<T>, 3> flags;        // top flags of boxes
    std::array<PatternGeodesic<T>, 3> geodesics;  // of boxes
    ProjMap<T> order3;                   // t(M) -> b(M) -> i(M)
    std::array<Polarity<T>, 3> polarities;  // k swaps flags k, k+1 and preserves geodesics[k]'s flat
    bool degenerate = false;             // polarities not unique (cone point)
};

// Polarity swapping flags j and k and fixing the third.  Throws
// UnityTripleProduct when the solution is not unique, DegenerateTriple
// when none exists.
template <class T>
Polarity<T> stabilizing_polarity(const std::array<Flag<T>, 3>& J, int j, int k);

// Nullity of the linear system for the pair (j,k).
template <class T>
int stabilizing_nullity(const std::array<Flag<T>, 3>& J, int j, int k);

// {ψ01, ψ12, ψ20}.
template <class T>
std::array<Polarity<T>, 3> stabilizing_polarities(const std::array<Flag<T>, 3>& J);

template <class T>
Prism<T> prism_of_triangle(const MarkedBox<T>& m, const std::string& word = "");

struct InflectionData {
    XPoint point;        // fixed point of the polarity in the flat
    Vec3d coords;        // flat coordinates of point
    XGeodesic line;      // singular geodesic through point, oriented P* -> P
    double d = 0;        // signed distance from the box fixed point to point along line
    double collinearity = 0;  // offset of the box fixed point from line
    double fixed_residual = 0;
};

// Unique fixed point in f of the isometry induced by q (q must preserve f).
InflectionData inflection_point(const Mat3d& q, const Flat& f);

// Singular geodesic of f through flat coordinates u, orthogonal to the
// medial direction of the pattern, oriented from P* to P.
XGeodesic inflection_line(const Flat& f, const Vec3d& u);

// Inflection data of flat k, measured against the pattern geodesic in it.
template <class T>
InflectionData prism_inflection(const Prism<T>& p, int k);

// Matrix with eigenvectors t=(x,1,1), b=(1-y,0,1), [1:0:0] and
// eigenvalues 1, -1, (-1+x+y)/(x-y), in the unit-square frame.
template <class T>
Mat3<T> translation_T(const T& x, const T& y);

struct Order3Axis {
    XGeodesic line;  // τ = 0 at pi, oriented P* -> P
    XPoint pi;
    double axis_residual = 0;      // max displacement of sampled points under order3
    double polarity_residual = 0;  // max displacement of pi under the polarities
};

template <class T>
Order3Axis order3_axis(const Prism<T>& p);

struct PrismReport {
    std::string word;
    double x = 0, y = 0;  // box invariant of M (raw)
    double triple_invariant = 0;
    std::array<double, 3> d{};
    std::array<double, 3> collinearity{};
    std::vector<double> distances;  // sorted pairwise distances among pi, inflection points, fixed points
    bool degenerate = false;
};

struct AdjacentReport {
    std::string parent, child;
    // The shared flat carries one inflection line for both prisms, but
    // each prism has its own inflection point on it.
    double line_offset = 0;       // distance between the two inflection lines
    double inflection_shift = 0;  // child point minus parent point, along the line
    double center_distance = 0;   // d(pi_parent, pi_child)
};

struct BendingReport {
    double x = 0, y = 0;
    int depth = 0;
    std::vector<PrismReport> prisms;
    std::vector<AdjacentReport> adjacent;
};

template <class T>
PrismReport prism_report(const Prism<T>& p);

template <class T>
BendingReport bending_report(const T& x, const T& y, int depth, unsigned workers = 1);

struct ConeMesh {
    XPoint apex;
    std::vector<XPoint> vertices;
    std::vector<std::vector<int>> polylines;  // vertex indices, boundary sample first, apex last
};

// Geodesic cone from the point at signed distance d from pi along the
// axis to n samples on each of the three pattern geodesics (|τ| <= window).
template <class T>
ConeMesh cone_fill_sample(const Prism<T>& p, double d, int n, double window = 3.0, int segment_samples = 8);

}  // namespace pappus
