#include <doctest.h>

#include <set>

#include "pappus/markedbox.hpp"
#include "support.hpp"

using namespace pappus;
using testing_support::random_box;
using testing_support::random_invertible_rational;
using testing_support::random_rational;
using testing_support::random_unit_rational;
using Q = Rational;
using PQ = ProjPoint<Q>;
using LQ = ProjLine<Q>;
using BoxQ = MarkedBox<Q>;

namespace {

bool same(const BoxInvariant<Q>& a, Q x, Q y) { return same_invariant(a, BoxInvariant<Q>{x, y}); }

Q random_open_interval() {
    for (;;) {
        Q p = random_rational(-1, 1, 19);
        if (p != 1 && p != -1) return p;
    }
}

}  // namespace

TEST_CASE("model box coordinates and invariant") {
    BoxQ m = model_box(Q(1, 3), Q(-1, 5));
    CHECK(m.s() == PQ(-1, 1, 0));
    CHECK(m.t() == PQ(Q(1, 3), 1, 0));
    CHECK(m.b() == PQ(Q(-1, 5), 0, 1));
    CHECK(m.c() == PQ(-1, 0, 1));
    CHECK_THROWS_AS(model_box(Q(1), Q(0)), GeometryError);

    // Top line z = 0 with chart x/y; bottom line y = 0 with chart x/z;
    // ζ = [1:0:0] is at infinity on both, so x = (s-t)/(s-u), y = (a-b)/(a-c).
    for (int k = 0; k < 50; ++k) {
        Q p = random_open_interval(), q = random_open_interval();
        BoxInvariant<Q> raw = box_invariant_raw(model_box(p, q));
        CHECK(raw.x == Q((-1 - p) / (-1 - 1)));
        CHECK(raw.y == Q((1 - q) / (1 - (-1))));
        CHECK(raw.x == Q((1 + p) / 2));
        CHECK(raw.y == Q((1 - q) / 2));
    }
    // t at the midpoint of the top edge
    BoxQ half = model_box(Q(1, 2), Q(0));
    CHECK(cross_ratio(half.s(), half.t(), half.u(), PQ(1, 0, 0)) == Q(3, 4));
}

TEST_CASE("conversion between the unit-square and model frames") {
    for (int k = 0; k < 50; ++k) {
        Q x = random_unit_rational(), y = random_unit_rational();
        auto [p, q] = model_params(x, y);
        CHECK(p == Q(2 * x - 1));
        CHECK(q == Q(1 - 2 * y));
        BoxInvariant<Q> a = box_invariant_raw(unit_square_box(x, y));
        BoxInvariant<Q> b = box_invariant_raw(box_from_invariant(x, y));
        CHECK(a.x == x);
        CHECK(a.y == y);
        CHECK(b.x == x);
        CHECK(b.y == y);
    }
}

TEST_CASE("modular relations hold exactly on boxes") {
    for (int k = 0; k < 100; ++k) {
        BoxQ m = random_box();
        CHECK(op_i(op_i(m)) == m);
        CHECK(op_t(op_i(op_t(m))) == op_b(m));
        CHECK(op_b(op_i(op_b(m))) == op_t(m));
        CHECK(apply_word("tibi", m) == m);
        CHECK(apply_word("biti", m) == m);
        CHECK(apply_word("ititit", m) == m);
        CHECK(apply_word("ibibib", m) == m);
        CHECK_FALSE(op_t(m) == m);
        CHECK_FALSE(op_i(m) == m);
    }
}

TEST_CASE("box invariant recursion") {
    for (int k = 0; k < 100; ++k) {
        Q x, y;
        BoxQ m = random_box(&x, &y);
        CHECK(same(box_invariant(m), x, y));
        CHECK(same(box_invariant(op_t(m)), 1 - y, x));
        CHECK(same(box_invariant(op_b(m)), 1 - y, x));
        CHECK(same(box_invariant(op_i(m)), 1 - y, x));
        BoxInvariant<Q> c = box_invariant(m);
        CHECK((c.x < Q(1) - c.x || (c.x == Q(1) - c.x && c.y <= Q(1) - c.y)));
    }
    CHECK(same(box_invariant(unit_square_box(Q(1, 2), Q(1, 2))), Q(1, 2), Q(1, 2)));
    // projectively equivalent boxes share the invariant and vice versa
    BoxQ m = unit_square_box(Q(2, 7), Q(3, 5));
    BoxQ n = apply_map(ProjMap<Q>{random_invertible_rational()}, m);
    CHECK(same(box_invariant(n), Q(2, 7), Q(3, 5)));
    CHECK(same(box_invariant(m.flipped()), Q(2, 7), Q(3, 5)));
}

TEST_CASE("top and bottom flags") {
    BoxQ m = model_box(Q(2, 5), Q(-1, 3));
    CHECK(top_flag(m).point == PQ(Q(2, 5), 1, 0));
    CHECK(top_flag(m).line == LQ(0, 0, 1));
    CHECK(bottom_flag(m).line == LQ(0, 1, 0));
    for (int k = 0; k < 50; ++k) {
        BoxQ b = random_box();
        CHECK(top_flag(op_i(b)) == bottom_flag(b));
        CHECK(top_flag(op_t(b)) == top_flag(b));
        CHECK(bottom_flag(op_b(b)) == bottom_flag(b));
        CHECK(bottom_flag(op_t(b)) == top_flag(op_b(b)));
        ProjMap<Q> f{random_invertible_rational()};
        CHECK(top_flag(apply_map(f, b)) == apply_map(f, top_flag(b)));
    }
}

TEST_CASE("doppelgangers are compatible with i, t, b") {
    // T = s x u = (0,0,-2) for the model box
    CHECK(doppelganger(model_box(Q(0), Q(0))).l[1] == LQ(0, 0, 1));
    for (int k = 0; k < 50; ++k) {
        BoxQ m = random_box();
        DualMarkedBox<Q> d = doppelganger(m);
        CHECK(doppelganger(op_i(m)) == op_i(d));
        CHECK(doppelganger(op_t(m)) == op_t(d));
        CHECK(doppelganger(op_b(m)) == op_b(d));
        // A' = (T∩A)(U∩B), the primed-line formula for t on the dual
        LQ a_prime(cross(cross(d.l[1].v, d.l[3].v), cross(d.l[2].v, d.l[4].v)));
        CHECK(op_t(d).l[3] == a_prime);
    }
}

TEST_CASE("order-3 transform") {
    for (int k = 0; k < 30; ++k) {
        BoxQ m = random_box();
        ProjMap<Q> t = order3_transform(m);
        Mat3q cube = mul(t.m, mul(t.m, t.m));
        CHECK(proportional(cube, identity3<Q>()));
        CHECK(apply_map(t, op_t(m)) == op_b(m));
        CHECK(apply_map(t, op_b(m)) == op_i(m));
        CHECK(apply_map(t, op_i(m)) == op_t(m));
        // characteristic polynomial λ³ - det: three distinct complex fixed
        // points, exactly one of them real
        Q tr = Q(t.m[0][0] + t.m[1][1] + t.m[2][2]);
        Q m2 = Q(t.m[0][0] * t.m[1][1] - t.m[0][1] * t.m[1][0] + t.m[0][0] * t.m[2][2] - t.m[0][2] * t.m[2][0] +
                 t.m[1][1] * t.m[2][2] - t.m[1][2] * t.m[2][1]);
        CHECK(sgn(tr) == 0);
        CHECK(sgn(m2) == 0);
        CHECK(sgn(det(t.m)) != 0);
    }
}

TEST_CASE("box polarity") {
    Polarity<Q> d0 = box_polarity(model_box(Q(0), Q(0)));
    CHECK(proportional(d0.q, identity3<Q>()));

    for (int k = 0; k < 50; ++k) {
        Q p = random_open_interval(), q = random_open_interval();
        Mat3q m = model_polarity_matrix(p, q);
        CHECK(det(m) == Q((p * p - 1) * (q * q - 1)));
        CHECK(is_elliptic(Polarity<Q>{m}));

        BoxQ m1 = model_box(p, q);
        // the second box written as (c,b,a,u,t,s) of i(M1)
        DualMarkedBox<Q> m2 = doppelganger(op_i(m1).flipped());
        Polarity<Q> d = box_polarity(m1);
        CHECK(proportional(d.q, m));
        // m(s1) x S2 = 0 and the other eleven incidences
        for (int i = 0; i < 6; ++i) {
            CHECK(is_zero_vec(cross(mul(m, m1.p[i].v), m2.l[i].v)));
            CHECK(is_zero_vec(cross(mul(adjugate(m), doppelganger(m1).l[i].v), op_i(m1).p[i].v)));
        }
    }

    for (int k = 0; k < 50; ++k) {
        BoxQ m = random_box();
        Polarity<Q> d = box_polarity(m);
        CHECK(is_elliptic(d));
        CHECK(proportional(mul(d.q, adjugate(d.q)), identity3<Q>()));
        EnhancedBox<Q> e = enhance(m);
        EnhancedBox<Q> img = enhanced_duality(d, e);
        CHECK(img.box == op_i(m));
        CHECK(img.dual == doppelganger(op_i(m)));
        CHECK(doppelganger(img.box) == img.dual);
        EnhancedBox<Q> back = enhanced_duality(d, img);
        CHECK(back.box == m);
        CHECK(back.dual == e.dual);
        CHECK(proportional(box_polarity(op_i(m)).q, d.q));
    }
}

TEST_CASE("triple product of a box: flags versus closed form") {
    CHECK(box_triple_product(unit_square_box(Q(1, 2), Q(1, 2))) == Q(-1));
    CHECK(box_triple_product(unit_square_box(Q(3, 10), Q(2, 5))) == Q(-7, 8));
    CHECK(box_triple_product(unit_square_box(Q(1, 7), Q(5, 9))) == Q(-243, 490));
    for (int k = 0; k < 100; ++k) {
        Q x, y;
        BoxQ m = random_box(&x, &y);
        Q chi = box_triple_product(m);
        CHECK(chi == triple_product_closed_form(x, y));
        CHECK(triple_product_closed_form(Q(1 - x), Q(1 - y)) == chi);
        CHECK(box_triple_product(op_i(m)) == Q(1 / chi));
    }
}

TEST_CASE("orbit enumeration") {
    BoxQ m0 = unit_square_box(Q(3, 10), Q(2, 5));
    auto o0 = orbit_enumerate(m0, 0);
    REQUIRE(o0.size() == 2);
    CHECK(o0[0].word == "");
    CHECK(o0[0].box == m0);
    CHECK(o0[1].word == "i");
    CHECK(o0[1].box == op_i(m0));

    for (int d = 0; d <= 5; ++d) {
        // binary tree with 2^(d+1)-1 nodes on each of two sides
        std::size_t expected = 0;
        for (int level = 0; level <= d; ++level) expected += 2u << level;
        CHECK(orbit_enumerate(m0, d).size() == expected);
    }

    auto orbit = orbit_enumerate(m0, 5);
    std::set<std::string> keys;
    for (const auto& e : orbit) {
        CHECK(e.box == apply_word(e.word, m0));
        keys.insert(box_key(e.box));
        // every corner of w(M0) stays in the closed unit square
        if (e.word.empty() || e.word.back() != 'i')
            for (const auto& c : corners(e.box)) {
                REQUIRE(sgn(c.v[2]) != 0);
                Q px = c.v[0] / c.v[2], py = c.v[1] / c.v[2];
                CHECK(px >= 0);
                CHECK(px <= 1);
                CHECK(py >= 0);
                CHECK(py <= 1);
            }
    }
    CHECK(keys.size() == orbit.size());
    CHECK(orbit[2].word == "t");
    CHECK(orbit[3].word == "b");
    CHECK(orbit[4].word == "ti");
    CHECK(orbit[5].word == "bi");

    auto par = orbit_enumerate(m0, 5, 4);
    REQUIRE(par.size() == orbit.size());
    for (std::size_t k = 0; k < par.size(); ++k) {
        CHECK(par[k].word == orbit[k].word);
        CHECK(box_key(par[k].box) == box_key(orbit[k].box));
    }
}

TEST_CASE("float backend agrees with exact arithmetic") {
    MarkedBox<double> m = unit_square_box(0.3, 0.4);
    BoxInvariant<double> inv = box_invariant_raw(op_t(m));
    CHECK(inv.x == doctest::Approx(0.6));
    CHECK(inv.y == doctest::Approx(0.3));
    CHECK(box_triple_product(m) == doctest::Approx(-0.875).epsilon(1e-12));
    CHECK(op_t(op_i(op_t(m))) == op_b(m));
}
