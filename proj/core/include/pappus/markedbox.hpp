#pragma once

// Marked boxes (s,t,u,a,b,c): a convex quadrilateral with corners s,u,a,c
// and marked points t on the top edge su and b on the bottom edge ac.

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "pappus/projective.hpp"

namespace pappus {

template <class T>
struct MarkedBox {
    std::array<ProjPoint<T>, 6> p;  // s t u a b c

    const ProjPoint<T>& s() const { return p[0]; }
    const ProjPoint<T>& t() const { return p[1]; }
    const ProjPoint<T>& u() const { return p[2]; }
    const ProjPoint<T>& a() const { return p[3]; }
    const ProjPoint<T>& b() const { return p[4]; }
    const ProjPoint<T>& c() const { return p[5]; }

    // (u,t,s,c,b,a) describes the same box.
    MarkedBox flipped() const { return {{p[2], p[1], p[0], p[5], p[4], p[3]}}; }
};

template <class T>
struct DualMarkedBox {
    std::array<ProjLine<T>, 6> l;  // S T U A B C

    DualMarkedBox flipped() const { return {{l[2], l[1], l[0], l[5], l[4], l[3]}}; }
};

template <class T>
struct EnhancedBox {
    MarkedBox<T> box;
    DualMarkedBox<T> dual;
};

// Representative of the class [(x,y)] ~ [(1-x,1-y)].
template <class T>
struct BoxInvariant {
    T x, y;
};

namespace detail {

template <class E>
bool sextuple_equal(const std::array<E, 6>& a, const std::array<E, 6>& b) {
    for (int k = 0; k < 6; ++k)
        if (!(a[k] == b[k])) return false;
    return true;
}

template <class E>
std::array<E, 6> flip6(const std::array<E, 6>& a) {
    return {a[2], a[1], a[0], a[5], a[4], a[3]};
}

// The Pappus moves act by the same cross-product formulas on point boxes
// and on their duals; `wedge` is the cross product on the raw vectors.
template <class E>
E wedge(const E& x, const E& y) {
    auto v = cross(x.v, y.v);
    if (is_zero_vec(v, norm_d(x.v) * norm_d(y.v))) throw GeometryError(ErrorCode::DegenerateBox, "coincident elements");
    return E(canonical(v));
}

template <class E>
std::array<E, 6> move_t(const std::array<E, 6>& m) {
    const E &s = m[0], &t = m[1], &u = m[2], &a = m[3], &b = m[4], &c = m[5];
    // a' = ta ∩ ub,  b' = sa ∩ uc,  c' = tc ∩ sb
    return {s, t, u, wedge(wedge(t, a), wedge(u, b)), wedge(wedge(s, a), wedge(u, c)), wedge(wedge(t, c), wedge(s, b))};
}

template <class E>
std::array<E, 6> move_b(const std::array<E, 6>& m) {
    const E &s = m[0], &t = m[1], &u = m[2], &a = m[3], &b = m[4], &c = m[5];
    // s' = bs ∩ ct,  t' = as ∩ cu,  u' = bu ∩ at
    return {wedge(wedge(b, s), wedge(c, t)), wedge(wedge(a, s), wedge(c, u)), wedge(wedge(b, u), wedge(a, t)), a, b, c};
}

template <class E>
std::array<E, 6> move_i(const std::array<E, 6>& m) {
    return {m[3], m[4], m[5], m[2], m[1], m[0]};
}

}  // namespace detail

template <class T>
bool operator==(const MarkedBox<T>& m, const MarkedBox<T>& n) {
    return detail::sextuple_equal(m.p, n.p) || detail::sextuple_equal(m.p, detail::flip6(n.p));
}

template <class T>
bool operator==(const DualMarkedBox<T>& m, const DualMarkedBox<T>& n) {
    return detail::sextuple_equal(m.l, n.l) || detail::sextuple_equal(m.l, detail::flip6(n.l));
}

template <class T>
MarkedBox<T> canonical_box(const MarkedBox<T>& m) {
    MarkedBox<T> r;
    for (int k = 0; k < 6; ++k) r.p[k] = m.p[k].canonical_form();
    return r;
}

// ((-1,1,0),(p,1,0),(1,1,0),(1,0,1),(q,0,1),(-1,0,1)), |p|,|q| < 1.
template <class T>
MarkedBox<T> model_box(const T& p, const T& q) {
    if (!(p > T(-1) && p < T(1) && q > T(-1) && q < T(1)))
        throw GeometryError(ErrorCode::OutOfRange, "model_box needs |p|,|q| < 1");
    return {{ProjPoint<T>(T(-1), T(1), T(0)), ProjPoint<T>(p, T(1), T(0)), ProjPoint<T>(T(1), T(1), T(0)),
             ProjPoint<T>(T(1), T(0), T(1)), ProjPoint<T>(q, T(0), T(1)), ProjPoint<T>(T(-1), T(0), T(1))}};
}

// Unit square with s=(0,1), t=(x,1), u=(1,1), a=(1,0), b=(1-y,0), c=(0,0).
// Its raw box invariant is exactly (x,y).
template <class T>
MarkedBox<T> unit_square_box(const T& x, const T& y) {
    if (!(x > T(0) && x < T(1) && y > T(0) && y < T(1)))
        throw GeometryError(ErrorCode::OutOfRange, "unit_square_box needs (x,y) in (0,1)^2");
    return {{ProjPoint<T>(T(0), T(1), T(1)), ProjPoint<T>(x, T(1), T(1)), ProjPoint<T>(T(1), T(1), T(1)),
             ProjPoint<T>(T(1), T(0), T(1)), ProjPoint<T>(T(T(1) - y), T(0), T(1)), ProjPoint<T>(T(0), T(0), T(1))}};
}

// model_box parameters for the box invariant (x,y).
template <class T>
std::pair<T, T> model_params(const T& x, const T& y) {
    return {T(T(2) * x - T(1)), T(T(1) - T(2) * y)};
}

template <class T>
MarkedBox<T> box_from_invariant(const T& x, const T& y) {
    auto [p, q] = model_params(x, y);
    return model_box(p, q);
}

template <class T>
MarkedBox<T> op_i(const MarkedBox<T>& m) {
    return {detail::move_i(m.p)};
}

template <class T>
MarkedBox<T> op_t(const MarkedBox<T>& m) {
    return {detail::move_t(m.p)};
}

template <class T>
MarkedBox<T> op_b(const MarkedBox<T>& m) {
    return {detail::move_b(m.p)};
}

template <class T>
DualMarkedBox<T> op_i(const DualMarkedBox<T>& m) {
    return {detail::move_i(m.l)};
}

template <class T>
DualMarkedBox<T> op_t(const DualMarkedBox<T>& m) {
    return {detail::move_t(m.l)};
}

template <class T>
DualMarkedBox<T> op_b(const DualMarkedBox<T>& m) {
    return {detail::move_b(m.l)};
}

template <class T>
MarkedBox<T> apply_map(const ProjMap<T>& f, const MarkedBox<T>& m) {
    MarkedBox<T> r;
    for (int k = 0; k < 6; ++k) r.p[k] = ProjPoint<T>(canonical(apply_map(f, m.p[k]).v));
    return r;
}

// Words act right to left: "tb" is t(b(M)).
template <class Box>
Box apply_word(std::string_view word, const Box& m) {
    Box r = m;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        switch (*it) {
            case 'i': r = op_i(r); break;
            case 't': r = op_t(r); break;
            case 'b': r = op_b(r); break;
            default: throw GeometryError(ErrorCode::OutOfRange, std::string("bad letter in word: ") + *it);
        }
    }
    return r;
}

// (x,y) = ([s,t,u,z], [a,b,c,z]) with z = su ∩ ca, without reducing
// modulo (x,y) ~ (1-x,1-y).
template <class T>
BoxInvariant<T> box_invariant_raw(const MarkedBox<T>& m) {
    ProjPoint<T> z = meet(join(m.s(), m.u()), join(m.c(), m.a()));
    return {cross_ratio(m.s(), m.t(), m.u(), z), cross_ratio(m.a(), m.b(), m.c(), z)};
}

// Lexicographically smaller of (x,y) and (1-x,1-y).
template <class T>
BoxInvariant<T> canonical_invariant(const T& x, const T& y) {
    T x2 = T(T(1) - x), y2 = T(T(1) - y);
    if (x < x2 || (x == x2 && y <= y2)) return {x, y};
    return {x2, y2};
}

template <class T>
BoxInvariant<T> box_invariant(const MarkedBox<T>& m) {
    BoxInvariant<T> r = box_invariant_raw(m);
    return canonical_invariant(r.x, r.y);
}

template <class T>
bool same_invariant(const BoxInvariant<T>& a, const BoxInvariant<T>& b) {
    auto eq = [](const T& u, const T& v) {
        return ScalarTraits<T>::is_zero(T(u - v), 1.0 + ScalarTraits<T>::magnitude(u));
    };
    return (eq(a.x, b.x) && eq(a.y, b.y)) || (eq(a.x, T(T(1) - b.x)) && eq(a.y, T(T(1) - b.y)));
}

template <class T>
Flag<T> top_flag(const MarkedBox<T>& m) {
    return {m.t(), join(m.s(), m.u())};
}

template <class T>
Flag<T> bottom_flag(const MarkedBox<T>& m) {
    return {m.b(), join(m.a(), m.c())};
}

// S=ct, T=su, U=at, A=sb, B=ac, C=ub.
template <class T>
DualMarkedBox<T> doppelganger(const MarkedBox<T>& m) {
    using detail::wedge;
    const auto &s = m.s(), &t = m.t(), &u = m.u(), &a = m.a(), &b = m.b(), &c = m.c();
    return {{ProjLine<T>(wedge(c, t).v), ProjLine<T>(wedge(s, u).v), ProjLine<T>(wedge(a, t).v),
             ProjLine<T>(wedge(s, b).v), ProjLine<T>(wedge(a, c).v), ProjLine<T>(wedge(u, b).v)}};
}

template <class T>
std::array<ProjPoint<T>, 4> corners(const MarkedBox<T>& m) {
    return {m.s(), m.u(), m.a(), m.c()};
}

// The order-3 map with t(M) -> b(M) -> i(M) -> t(M).
template <class T>
ProjMap<T> order3_transform(const MarkedBox<T>& m) {
    MarkedBox<T> tm = op_t(m), bm = op_b(m);
    for (const MarkedBox<T>& target : {bm, bm.flipped()}) {
        ProjMap<T> f = transform_from_correspondence(corners(tm), corners(target));
        if (!(apply_map(f, tm.t()) == target.t())) continue;
        if (!(apply_map(f, tm.b()) == target.b())) continue;
        if (!is_identity_map(ProjMap<T>{mul(f.m, mul(f.m, f.m))})) continue;
        return f;
    }
    throw GeometryError(ErrorCode::DegenerateBox, "no order-3 transform found");
}

// m = [[1,-p,-q],[-p,1,pq],[-q,pq,1]] is the polarity of model_box(p,q).
template <class T>
Mat3<T> model_polarity_matrix(const T& p, const T& q) {
    Mat3<T> m{};
    m[0] = {T(1), T(-p), T(-q)};
    m[1] = {T(-p), T(1), T(p * q)};
    m[2] = {T(-q), T(p * q), T(1)};
    return m;
}

// Elliptic polarity exchanging M with the dual of i(M).  Built in the
// model frame and moved by the point map N: q -> N^-T q N^-1.
template <class T>
Polarity<T> box_polarity(const MarkedBox<T>& m) {
    BoxInvariant<T> inv = box_invariant_raw(m);
    auto [p, q] = model_params(inv.x, inv.y);
    ProjMap<T> n = transform_from_correspondence(corners(model_box(p, q)), corners(m));
    Mat3<T> ninv = adjugate(n.m);
    Mat3<T> r = mul(transpose(ninv), mul(model_polarity_matrix(p, q), ninv));
    if constexpr (!ScalarTraits<T>::exact) r = scaled(r, T(1.0 / max_abs(r)));
    return {r};
}

// δ((M, M*)) = (δ(M*), δ(M)).
template <class T>
EnhancedBox<T> enhanced_duality(const Polarity<T>& d, const EnhancedBox<T>& e) {
    EnhancedBox<T> r;
    for (int k = 0; k < 6; ++k) {
        r.box.p[k] = ProjPoint<T>(canonical(apply_duality(d, e.dual.l[k]).v));
        r.dual.l[k] = ProjLine<T>(canonical(apply_duality(d, e.box.p[k]).v));
    }
    return r;
}

template <class T>
EnhancedBox<T> enhance(const MarkedBox<T>& m) {
    return {m, doppelganger(m)};
}

// Flags (τ(i(M)), τ(t(M)), τ(b(M))) where τ is the top flag.
template <class T>
std::array<Flag<T>, 3> box_flag_triple(const MarkedBox<T>& m) {
    return {top_flag(op_i(m)), top_flag(op_t(m)), top_flag(op_b(m))};
}

template <class T>
T triple_product_closed_form(const T& x, const T& y) {
    T den = T(y * (T(1) - y));
    if (ScalarTraits<T>::is_zero(den)) throw GeometryError(ErrorCode::DegenerateFlags, "y in {0,1}");
    return T(-(x * (T(1) - x)) / den);
}

template <class T>
T box_triple_product(const MarkedBox<T>& m) {
    return triple_product(box_flag_triple(m));
}

template <class T>
struct OrbitEntry {
    std::string word;
    MarkedBox<T> box;
};

// Boxes w(M0) and w(i(M0)) for words w in {t,b} of length <= depth,
// breadth-first with t before b; level k lists the M0 side first.  Each
// level is split across `workers` threads.
template <class T>
std::vector<OrbitEntry<T>> orbit_enumerate(const MarkedBox<T>& m0, int depth, unsigned workers = 1) {
    if (depth < 0) throw GeometryError(ErrorCode::OutOfRange, "depth must be >= 0");
    if (workers == 0) workers = 1;
    const std::size_t per_tree = (std::size_t(1) << (depth + 1)) - 1;
    std::array<std::vector<MarkedBox<T>>, 2> heap;
    std::array<std::vector<std::string>, 2> words;
    for (int side = 0; side < 2; ++side) {
        heap[side].resize(per_tree);
        words[side].resize(per_tree);
    }
    heap[0][0] = canonical_box(m0);
    heap[1][0] = canonical_box(op_i(m0));
    words[1][0] = "i";

    for (int level = 1; level <= depth; ++level) {
        const std::size_t first = (std::size_t(1) << level) - 1;
        const std::size_t width = std::size_t(1) << level;
        const std::size_t total = 2 * width;
        auto work = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t k = lo; k < hi; ++k) {
                int side = k < width ? 0 : 1;
                std::size_t node = first + (k % width);
                std::size_t parent = (node - 1) / 2;
                bool is_t = (node % 2) == 1;
                heap[side][node] = is_t ? op_t(heap[side][parent]) : op_b(heap[side][parent]);
                words[side][node] = (is_t ? "t" : "b") + words[side][parent];
            }
        };
        unsigned n = std::min<std::size_t>(workers, total);
        if (n <= 1) {
            work(0, total);
        } else {
            std::vector<std::thread> pool;
            std::size_t chunk = (total + n - 1) / n;
            for (unsigned w = 0; w < n; ++w) {
                std::size_t lo = w * chunk, hi = std::min(total, lo + chunk);
                if (lo < hi) pool.emplace_back(work, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
    }

    std::vector<OrbitEntry<T>> out;
    out.reserve(2 * per_tree);
    for (int level = 0; level <= depth; ++level) {
        const std::size_t first = (std::size_t(1) << level) - 1;
        const std::size_t width = std::size_t(1) << level;
        for (int side = 0; side < 2; ++side)
            for (std::size_t k = first; k < first + width; ++k) out.push_back({words[side][k], heap[side][k]});
    }
    return out;
}

// Deterministic text key; equal for flip-equivalent exact boxes.
template <class T>
std::string box_key(const MarkedBox<T>& m) {
    auto render = [](const std::array<ProjPoint<T>, 6>& pts) {
        std::string s;
        for (const auto& p : pts) s += to_string(canonical(p.v));
        return s;
    };
    std::string a = render(m.p), b = render(detail::flip6(m.p));
    return std::min(a, b);
}

}  // namespace pappus
