#pragma once

// The Farey pattern: one medial geodesic γ_M per marked box M of an
// orbit.  γ_M lies in the flat of the triangle (t, b, T∩B), passes through
// the fixed point p_M of the box polarity, and runs from the top flag
// (t,T) to the bottom flag (b,B).
//
// Box arithmetic uses the scalar backend T (exact or float); everything
// in X is double.  Instantiated for Rational and double.

#include <string>
#include <vector>

#include "pappus/fareycomb.hpp"
#include "pappus/markedbox.hpp"
#include "pappus/symmspace.hpp"

namespace pappus {

template <class T>
struct PatternGeodesic {
    MarkedBox<T> box;
    std::string word;
    OrientedEdge edge;  // Farey edge with the same word
    Flat flat;          // basis (t, b, T∩B); center = coordinates of fixed_point
    XPoint fixed_point;
    double membership_residual = 0;  // off-flat residual of fixed_point
    XGeodesic geodesic;              // τ = 0 at fixed_point; backward -> top, forward -> bottom
    Flag<T> top;
    Flag<T> bottom;
};

template <class T>
struct FareyPattern {
    T x, y;
    int depth = 0;
    bool two_sided = false;
    OrientedEdge base;
    MarkedBox<T> base_box;
    std::vector<PatternGeodesic<T>> geodesics;  // one per unoriented geodesic
};

// Direction of γ_M in the coordinates of its flat.
Vec3d pattern_direction();

template <class T>
Flat box_flat(const MarkedBox<T>& m);

template <class T>
PatternGeodesic<T> geodesic_of_box(const MarkedBox<T>& m, const std::string& word = "");

// Orbit of the box with invariant (x,y) under words in {t,b} of length
// <= depth: 2^(depth+1) - 1 geodesics.  two_sided adds the subtree below
// i(M0); its root is γ_M0 reversed and is not repeated.
template <class T>
FareyPattern<T> build_pattern(const T& x, const T& y, int depth, bool two_sided = false, unsigned workers = 1);

// Exactly one of the two endpoint flags is shared.
template <class T>
bool one_end_asymptotic(const PatternGeodesic<T>& g1, const PatternGeodesic<T>& g2);

struct MinDistance {
    double value;
    double s1, s2;  // parameters of the minimizing pair (first two coordinates for flats)
};

// Grid search over [-window, window]^2 followed by golden-section descent
// on each axis in turn until the step is below 1e-6.
MinDistance min_distance_geodesics(const XGeodesic& g1, const XGeodesic& g2, double window, int samples);
template <class T>
MinDistance min_distance_geodesics(const PatternGeodesic<T>& g1, const PatternGeodesic<T>& g2, double window, int samples) {
    return min_distance_geodesics(g1.geodesic, g2.geodesic, window, samples);
}

// Same over a 4-dimensional grid of flat coordinates around each center.
MinDistance min_distance_flats(const Flat& f1, const Flat& f2, double window, int samples);

template <class T>
struct LimitFlag {
    Flag<T> flag;
    std::string word;  // first orbit box (breadth-first) whose top flag this is
    OrientedEdge edge;
    FareyRational vertex;  // = edge.tail
};

// Top flags of the two-sided orbit, one per Farey vertex (2^(depth+1)
// flags), sorted by the circular order of the vertices starting after ∞.
template <class T>
std::vector<LimitFlag<T>> limit_set_flags(const T& x, const T& y, int depth, unsigned workers = 1);

template <class T>
std::vector<LimitFlag<T>> limit_set_flags(const std::vector<OrbitEntry<T>>& orbit);

}  // namespace pappus
