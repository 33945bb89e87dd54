#pragma once

// Serialization helpers shared by the commands.

#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "pappus/linalg.hpp"
#include "pappus/scalar.hpp"

namespace pappus::tools {

// Exact scalars become "p/q" strings so they round-trip; doubles stay numbers.
inline nlohmann::ordered_json scalar_json(const Rational& v) { return v.get_str(); }
inline nlohmann::ordered_json scalar_json(double v) { return v; }

template <class T>
nlohmann::ordered_json vec_json(const Vec3<T>& v) {
    return nlohmann::ordered_json::array({scalar_json(v[0]), scalar_json(v[1]), scalar_json(v[2])});
}

inline nlohmann::ordered_json mat_json(const Mat3d& m) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& row : m) j.push_back(vec_json(row));
    return j;
}

// Projective equality of double vectors: |a x b| <= tol |a||b|.
bool same_direction(const Vec3d& a, const Vec3d& b, double tol = 1e-7);

struct ChartFlag {
    Vec3d point;
    Vec3d line;
};

struct Segment {
    double x0, y0, x1, y1;
};

// Part of the line a x + b y + c = 0 inside [-r, r]^2, if any.
bool clip_line(const Vec3d& line, double r, Segment& out);

// Flag points as dots and flag lines as clipped segments in the affine
// chart z = 1; the y axis points up.
void write_svg(const std::vector<ChartFlag>& flags, double viewport, std::ostream& out);

}  // namespace pappus::tools
