#pragma once

// Oriented edges of the Farey graph and the i/t/b operations on them.
// The right-hand side of an edge tail -> head is the arc of R ∪ {∞}
// swept from tail to head in increasing direction; the triangle on that
// side has the Farey mediant of the endpoints as third vertex.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pappus {

// Reduced fraction num/den with den >= 0; 1/0 is ∞.
struct FareyRational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    FareyRational() = default;
    FareyRational(std::int64_t n, std::int64_t d);  // reduces; throws on 0/0 or overflow

    static FareyRational infinity() { return {1, 0}; }
    bool is_infinite() const { return den == 0; }
    double value() const;  // +inf for ∞
    std::string str() const;

    friend bool operator==(const FareyRational& a, const FareyRational& b) { return a.num == b.num && a.den == b.den; }
};

__extension__ typedef __int128 FareyWide;

// num_a*den_b - num_b*den_a, computed without overflow.
FareyWide farey_det(const FareyRational& a, const FareyRational& b);

// a -> b -> c is increasing around the circle R ∪ {∞} (all distinct).
bool cyclic_order(const FareyRational& a, const FareyRational& b, const FareyRational& c);

struct OrientedEdge {
    FareyRational tail;
    FareyRational head;

    OrientedEdge() = default;
    OrientedEdge(const FareyRational& t, const FareyRational& h);  // throws unless |ad-bc| = 1

    std::string str() const;
    friend bool operator==(const OrientedEdge& a, const OrientedEdge& b) { return a.tail == b.tail && a.head == b.head; }
};

// The base edge 0/1 -> 1/0.
OrientedEdge base_edge();

FareyRational third_vertex(const OrientedEdge& e);
OrientedEdge edge_i(const OrientedEdge& e);
OrientedEdge edge_t(const OrientedEdge& e);  // tail -> third vertex
OrientedEdge edge_b(const OrientedEdge& e);  // third vertex -> head

// Right-hand arc of `inner` lies inside that of `outer`.
bool arc_contains(const OrientedEdge& outer, const OrientedEdge& inner);

// Words over {i,t,b}; composition is right to left.
class Word {
public:
    Word() = default;
    explicit Word(std::string letters);  // throws on letters outside {i,t,b}

    const std::string& str() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    // Normal form in the free product <i> * <r>, r = it of order 3,
    // written back in the letters i,t,b.  Equal group elements give equal
    // reduced words.
    Word reduced() const;

    // Alternating i / r^{±1} form, letters i, r, R (R = r^2).
    std::string normal_form() const;

    friend Word operator*(const Word& a, const Word& b) { return Word(a.letters_ + b.letters_); }
    friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }

private:
    std::string letters_;
};

OrientedEdge word_apply(const Word& w, const OrientedEdge& e);
OrientedEdge word_apply(std::string_view w, const OrientedEdge& e);

// A word w with w(base) = e.  Words found below the base use only t and b
// on the right of base (w) or of i(base) (w·i), possibly followed by i.
Word word_for_edge(const OrientedEdge& base, const OrientedEdge& e);

struct FareyTriangle {
    FareyRational v[3];  // sorted by value, ∞ last
    std::string word;    // word of the edge whose right side it is
};

// Triangles on the right of base (and, if both_sides, on the left), up to
// generation `depth`; breadth-first, t before b.  One side gives
// 2^(depth+1) - 1 triangles.
std::vector<FareyTriangle> enumerate_triangles(const OrientedEdge& base, int depth, bool both_sides = false);

// Carries e = w(base) to w(box) for any action `act(word, box)` of the
// same letters.
template <class Box, class Act>
Box intertwine(const OrientedEdge& base, const Box& box, const OrientedEdge& e, Act act) {
    return act(word_for_edge(base, e).str(), box);
}

}  // namespace pappus
