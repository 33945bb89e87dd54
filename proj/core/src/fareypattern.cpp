#include "pappus/fareypattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace pappus {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt6 = 2.449489742783178;
const double kInvPhi = (std::sqrt(5.0) - 1) / 2;

template <class F>
double golden_min(F f, double lo, double hi, double& arg) {
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-6) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    arg = 0.5 * (a + b);
    return f(arg);
}

// Coordinate descent from `x` over the box [-window, window]^n around 0,
// each axis searched within one grid cell of the current value.
template <std::size_t N, class F>
double refine(F f, std::array<double, N>& x, double window, double cell) {
    double best = f(x);
    for (int round = 0; round < 50; ++round) {
        double before = best;
        for (std::size_t k = 0; k < N; ++k) {
            double lo = std::max(-window, x[k] - cell), hi = std::min(window, x[k] + cell);
            auto along = [&](double s) {
                auto y = x;
                y[k] = s;
                return f(y);
            };
            double arg;
            double v = golden_min(along, lo, hi, arg);
            if (v < best) {
                best = v;
                x[k] = arg;
            }
        }
        if (before - best < 1e-12) break;
    }
    return best;
}

Vec3d flat_offset(const Flat& f, double a, double b) {
    return {f.center[0] + a / kSqrt2 + b / kSqrt6, f.center[1] - a / kSqrt2 + b / kSqrt6, f.center[2] - 2 * b / kSqrt6};
}

}  // namespace

Vec3d pattern_direction() { return {-1 / kSqrt2, 1 / kSqrt2, 0}; }

template <class T>
Flat box_flat(const MarkedBox<T>& m) {
    ProjPoint<T> corner = meet(join(m.s(), m.u()), join(m.a(), m.c()));
    return flat_from_triangle(to_double(m.t().v), to_double(m.b().v), to_double(corner.v));
}

template <class T>
PatternGeodesic<T> geodesic_of_box(const MarkedBox<T>& m, const std::string& word) {
    PatternGeodesic<T> g;
    g.box = m;
    g.word = word;
    g.edge = word_apply(word, base_edge());
    g.flat = box_flat(m);
    Polarity<T> d = box_polarity(m);
    g.fixed_point = polarity_fixed_point(to_double(d.q));
    g.flat.center = g.flat.coords(g.fixed_point, &g.membership_residual);
    if (!(g.membership_residual < 1e-8))
        throw GeometryError(ErrorCode::FixedPointOffFlat, "residual " + std::to_string(g.membership_residual));
    g.geodesic = g.flat.geodesic(g.flat.center, pattern_direction());
    g.top = top_flag(m);
    g.bottom = bottom_flag(m);
    return g;
}

template <class T>
FareyPattern<T> build_pattern(const T& x, const T& y, int depth, bool two_sided, unsigned workers) {
    FareyPattern<T> p;
    p.x = x;
    p.y = y;
    p.depth = depth;
    p.two_sided = two_sided;
    p.base = base_edge();
    p.base_box = box_from_invariant(x, y);
    auto orbit = orbit_enumerate(p.base_box, depth, workers);
    for (const auto& e : orbit) {
        bool other_side = !e.word.empty() && e.word.back() == 'i';
        if (other_side && (!two_sided || e.word == "i")) continue;
        p.geodesics.push_back(geodesic_of_box(e.box, e.word));
    }
    return p;
}

template <class T>
bool one_end_asymptotic(const PatternGeodesic<T>& g1, const PatternGeodesic<T>& g2) {
    int shared = 0;
    for (const Flag<T>* a : {&g1.top, &g1.bottom})
        for (const Flag<T>* b : {&g2.top, &g2.bottom})
            if (*a == *b) ++shared;
    return shared == 1;
}

MinDistance min_distance_geodesics(const XGeodesic& g1, const XGeodesic& g2, double window, int samples) {
    if (!(window > 0) || samples < 2) throw GeometryError(ErrorCode::OutOfRange, "window > 0 and samples >= 2 required");
    auto f = [&](const std::array<double, 2>& s) {
        return metric_d(geodesic_point(g1, s[0]), geodesic_point(g2, s[1]));
    };
    const double cell = 2 * window / (samples - 1);
    std::array<double, 2> best{0, 0};
    double bv = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i)
        for (int j = 0; j < samples; ++j) {
            std::array<double, 2> s{-window + i * cell, -window + j * cell};
            double v = f(s);
            if (v < bv) {
                bv = v;
                best = s;
            }
        }
    bv = refine<2>(f, best, window, cell);
    return {bv, best[0], best[1]};
}

MinDistance min_distance_flats(const Flat& f1, const Flat& f2, double window, int samples) {
    if (!(window > 0) || samples < 2) throw GeometryError(ErrorCode::OutOfRange, "window > 0 and samples >= 2 required");
    auto f = [&](const std::array<double, 4>& s) {
        return metric_d(f1.point(flat_offset(f1, s[0], s[1])), f2.point(flat_offset(f2, s[2], s[3])));
    };
    const double cell = 2 * window / (samples - 1);
    std::array<double, 4> best{0, 0, 0, 0};
    double bv = std::numeric_limits<double>::infinity();
    std::array<int, 4> idx{0, 0, 0, 0};
    for (;;) {
        std::array<double, 4> s;
        for (int k = 0; k < 4; ++k) s[k] = -window + idx[k] * cell;
        double v = f(s);
        if (v < bv) {
            bv = v;
            best = s;
        }
        int k = 0;
        while (k < 4 && ++idx[k] == samples) idx[k++] = 0;
        if (k == 4) break;
    }
    bv = refine<4>(f, best, window, cell);
    return {bv, best[0], best[2]};
}

template <class T>
std::vector<LimitFlag<T>> limit_set_flags(const std::vector<OrbitEntry<T>>& orbit) {
    std::vector<LimitFlag<T>> out;
    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> seen;
    for (const auto& e : orbit) {
        OrientedEdge edge = word_apply(e.word, base_edge());
        auto key = std::make_pair(edge.tail.num, edge.tail.den);
        if (seen.count(key)) continue;
        seen[key] = out.size();
        out.push_back({top_flag(e.box), e.word, edge, edge.tail});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const LimitFlag<T>& a, const LimitFlag<T>& b) { return a.vertex.value() < b.vertex.value(); });
    return out;
}

template <class T>
std::vector<LimitFlag<T>> limit_set_flags(const T& x, const T& y, int depth, unsigned workers) {
    return limit_set_flags(orbit_enumerate(box_from_invariant(x, y), depth, workers));
}

#define PAPPUS_INSTANTIATE(T)                                                                                    \
    template Flat box_flat(const MarkedBox<T>&);                                                                 \
    template PatternGeodesic<T> geodesic_of_box(const MarkedBox<T>&, const std::string&);                        \
    template FareyPattern<T> build_pattern(const T&, const T&, int, bool, unsigned);                             \
    template bool one_end_asymptotic(const PatternGeodesic<T>&, const PatternGeodesic<T>&);                      \
    template std::vector<LimitFlag<T>> limit_set_flags(const std::vector<OrbitEntry<T>>&);                       \
    template std::vector<LimitFlag<T>> limit_set_flags(const T&, const T&, int, unsigned);

PAPPUS_INSTANTIATE(Rational)
PAPPUS_INSTANTIATE(double)

}  // namespace pappus
