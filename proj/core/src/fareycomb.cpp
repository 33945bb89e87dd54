#include "pappus/fareycomb.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "pappus/errors.hpp"

namespace pappus {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw GeometryError(ErrorCode::OutOfRange, "Farey rational overflow");
    return r;
}

int sign128(FareyWide v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

FareyRational::FareyRational(std::int64_t n, std::int64_t d) {
    if (n == 0 && d == 0) throw GeometryError(ErrorCode::OutOfRange, "0/0");
    if (n == std::numeric_limits<std::int64_t>::min() || d == std::numeric_limits<std::int64_t>::min())
        throw GeometryError(ErrorCode::OutOfRange, "Farey rational overflow");
    if (d == 0) {
        num = 1;
        den = 0;
        return;
    }
    std::int64_t g = std::gcd(n, d);
    n /= g;
    d /= g;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    num = n;
    den = d;
}

double FareyRational::value() const {
    if (den == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string FareyRational::str() const {
    if (den == 0) return "1/0";
    return std::to_string(num) + "/" + std::to_string(den);
}

FareyWide farey_det(const FareyRational& a, const FareyRational& b) {
    return static_cast<FareyWide>(a.num) * b.den - static_cast<FareyWide>(b.num) * a.den;
}

bool cyclic_order(const FareyRational& a, const FareyRational& b, const FareyRational& c) {
    int s = sign128(farey_det(a, b)) * sign128(farey_det(b, c)) * sign128(farey_det(c, a));
    return s > 0;
}

OrientedEdge::OrientedEdge(const FareyRational& t, const FareyRational& h) : tail(t), head(h) {
    FareyWide d = farey_det(t, h);
    if (d != 1 && d != -1) throw GeometryError(ErrorCode::OutOfRange, "not a Farey edge: " + t.str() + " -> " + h.str());
}

std::string OrientedEdge::str() const { return tail.str() + "->" + head.str(); }

OrientedEdge base_edge() { return {FareyRational(0, 1), FareyRational::infinity()}; }

FareyRational third_vertex(const OrientedEdge& e) {
    std::int64_t c = e.head.num, d = e.head.den;
    if (farey_det(e.tail, e.head) == 1) {
        c = -c;
        d = -d;
    }
    return FareyRational(checked_add(e.tail.num, c), checked_add(e.tail.den, d));
}

OrientedEdge edge_i(const OrientedEdge& e) { return {e.head, e.tail}; }
OrientedEdge edge_t(const OrientedEdge& e) { return {e.tail, third_vertex(e)}; }
OrientedEdge edge_b(const OrientedEdge& e) { return {third_vertex(e), e.head}; }

bool arc_contains(const OrientedEdge& outer, const OrientedEdge& inner) {
    // 0 = outer tail, 1 = strictly inside, 2 = outer head, -1 = outside
    auto pos = [&](const FareyRational& x) {
        if (x == outer.tail) return 0;
        if (x == outer.head) return 2;
        return cyclic_order(outer.tail, x, outer.head) ? 1 : -1;
    };
    int pt = pos(inner.tail), ph = pos(inner.head);
    if (pt < 0 || ph < 0) return false;
    if (pt == 2 || ph == 0) return false;
    if (pt == 0 || ph == 2) return true;
    return cyclic_order(outer.tail, inner.tail, inner.head);
}

Word::Word(std::string letters) : letters_(std::move(letters)) {
    for (char c : letters_)
        if (c != 'i' && c != 't' && c != 'b')
            throw GeometryError(ErrorCode::OutOfRange, std::string("bad letter in word: ") + c);
}

std::string Word::normal_form() const {
    // t = i r and b = i r^2, with r = it of order 3.
    std::string expanded;
    for (char c : letters_) {
        if (c == 'i') expanded += "i";
        else if (c == 't') expanded += "ir";
        else expanded += "iR";
    }
    std::string st;
    for (char c : expanded) {
        if (c == 'i') {
            if (!st.empty() && st.back() == 'i') st.pop_back();
            else st.push_back('i');
            continue;
        }
        int e = c == 'r' ? 1 : 2;
        if (!st.empty() && st.back() != 'i') {
            int f = (st.back() == 'r' ? 1 : 2) + e;
            st.pop_back();
            f %= 3;
            if (f == 1) st.push_back('r');
            else if (f == 2) st.push_back('R');
        } else {
            st.push_back(c);
        }
    }
    return st;
}

Word Word::reduced() const {
    std::string out;
    for (char c : normal_form()) {
        std::string piece = c == 'i' ? "i" : (c == 'r' ? "it" : "ib");
        for (char x : piece) {
            if (x == 'i' && !out.empty() && out.back() == 'i') out.pop_back();
            else out.push_back(x);
        }
    }
    return Word(out);
}

OrientedEdge word_apply(std::string_view w, const OrientedEdge& e) {
    OrientedEdge r = e;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        switch (*it) {
            case 'i': r = edge_i(r); break;
            case 't': r = edge_t(r); break;
            case 'b': r = edge_b(r); break;
            default: throw GeometryError(ErrorCode::OutOfRange, std::string("bad letter in word: ") + *it);
        }
    }
    return r;
}

OrientedEdge word_apply(const Word& w, const OrientedEdge& e) { return word_apply(std::string_view(w.str()), e); }

namespace {

// t/b word carrying `root` to `e`, given that e's right arc lies in root's.
std::string descend(const OrientedEdge& root, const OrientedEdge& e) {
    OrientedEdge c = root;
    std::string w;
    while (!(c == e)) {
        OrientedEdge tc = edge_t(c), bc = edge_b(c);
        if (arc_contains(tc, e)) {
            c = tc;
            w.insert(w.begin(), 't');
        } else if (arc_contains(bc, e)) {
            c = bc;
            w.insert(w.begin(), 'b');
        } else {
            throw GeometryError(ErrorCode::ConsistencyFailure, "edge not below " + root.str());
        }
    }
    return w;
}

}  // namespace

Word word_for_edge(const OrientedEdge& base, const OrientedEdge& e) {
    const OrientedEdge ib = edge_i(base), ie = edge_i(e);
    if (arc_contains(base, e)) return Word(descend(base, e));
    if (arc_contains(ib, e)) return Word(descend(ib, e) + "i");
    if (arc_contains(base, ie)) return Word("i" + descend(base, ie));
    if (arc_contains(ib, ie)) return Word("i" + descend(ib, ie) + "i");
    throw GeometryError(ErrorCode::ConsistencyFailure, "edge not in the Farey graph: " + e.str());
}

std::vector<FareyTriangle> enumerate_triangles(const OrientedEdge& base, int depth, bool both_sides) {
    if (depth < 0) throw GeometryError(ErrorCode::OutOfRange, "depth must be >= 0");
    struct Item {
        OrientedEdge e;
        std::string w;
    };
    std::vector<Item> frontier{{base, ""}};
    if (both_sides) frontier.push_back({edge_i(base), "i"});
    std::vector<FareyTriangle> out;
    for (int level = 0; level <= depth; ++level) {
        std::vector<Item> next;
        for (const Item& it : frontier) {
            FareyTriangle tri{{it.e.tail, it.e.head, third_vertex(it.e)}, it.w};
            std::sort(std::begin(tri.v), std::end(tri.v),
                      [](const FareyRational& a, const FareyRational& b) { return a.value() < b.value(); });
            out.push_back(tri);
            if (level < depth) {
                next.push_back({edge_t(it.e), "t" + it.w});
                next.push_back({edge_b(it.e), "b" + it.w});
            }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace pappus
