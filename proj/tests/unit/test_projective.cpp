#include <doctest.h>

#include <optional>

#include "pappus/jacobi.hpp"
#include "pappus/markedbox.hpp"
#include "pappus/projective.hpp"
#include "support.hpp"

using namespace pappus;
using testing_support::random_invertible_rational;
using testing_support::random_rational;
using Q = Rational;
using PQ = ProjPoint<Q>;
using LQ = ProjLine<Q>;

namespace {

// Affine cross ratio (a-b)(c-d)/((a-c)(b-d)); d = nullopt means ∞.
Q affine_cross_ratio(Q a, Q b, Q c, std::optional<Q> d) {
    if (!d) return Q((a - b) / (a - c));
    return Q((a - b) * (c - *d) / ((a - c) * (b - *d)));
}

PQ random_point() {
    for (;;) {
        PQ p(random_rational(-4, 4), random_rational(-4, 4), random_rational(-4, 4));
        if (!is_zero_vec(p.v)) return p;
    }
}

Flag<Q> random_flag() {
    PQ p = random_point();
    PQ other = random_point();
    while (p == other) other = random_point();
    return {p, join(p, other)};
}

}  // namespace

TEST_CASE("join of two points lies on both") {
    CHECK(join(PQ(1, 0, 1), PQ(-1, 0, 1)) == LQ(0, 1, 0));
    CHECK(join(PQ(0, 0, 1), PQ(1, 0, 0)) == LQ(0, 1, 0));
    // s x u = (1*0-0*1, 0*1-(-1)*0, -1*1-1*1) = (0,0,-2)
    CHECK(join(PQ(-1, 1, 0), PQ(1, 1, 0)) == LQ(0, 0, 1));
    for (int k = 0; k < 200; ++k) {
        PQ p = random_point(), q = random_point();
        if (p == q) continue;
        LQ l = join(p, q);
        CHECK(sgn(dot(l.v, p.v)) == 0);
        CHECK(sgn(dot(l.v, q.v)) == 0);
    }
    CHECK_THROWS_AS(join(PQ(1, 2, 3), PQ(2, 4, 6)), GeometryError);
}

TEST_CASE("meet of two lines lies on both") {
    // su ∩ ca in the model box frame
    LQ su = join(PQ(-1, 1, 0), PQ(1, 1, 0));
    LQ ca = join(PQ(-1, 0, 1), PQ(1, 0, 1));
    CHECK(meet(su, ca) == PQ(1, 0, 0));
    CHECK(meet(LQ(0, 1, 0), LQ(0, 0, 1)) == PQ(1, 0, 0));
    for (int k = 0; k < 200; ++k) {
        LQ a(random_point().v), b(random_point().v);
        if (a == b) continue;
        PQ p = meet(a, b);
        CHECK(sgn(dot(p.v, a.v)) == 0);
        CHECK(sgn(dot(p.v, b.v)) == 0);
    }
    CHECK_THROWS_AS(meet(LQ(1, 1, 1), LQ(-2, -2, -2)), GeometryError);
}

TEST_CASE("cross ratio matches the affine formula") {
    auto on_x_axis = [](int v) { return PQ(Q(v), Q(0), Q(1)); };
    CHECK(cross_ratio(on_x_axis(0), on_x_axis(1), on_x_axis(2), on_x_axis(3)) ==
          affine_cross_ratio(0, 1, 2, Q(3)));
    CHECK(cross_ratio(on_x_axis(0), on_x_axis(1), on_x_axis(2), on_x_axis(3)) == Q(1, 4));

    // model frame: affine coordinate x/y on the line z = 0, ζ at infinity
    for (int k = 0; k < 50; ++k) {
        Q p = random_rational(-1, 1, 17);
        if (p == 1 || p == -1) continue;
        Q got = cross_ratio(PQ(-1, 1, 0), PQ(p, 1, 0), PQ(1, 1, 0), PQ(1, 0, 0));
        CHECK(got == affine_cross_ratio(-1, p, 1, std::nullopt));
        CHECK(got == Q((1 + p) / 2));
    }
}

TEST_CASE("cross ratio permutation identities and projective invariance") {
    for (int k = 0; k < 100; ++k) {
        Q v[4];
        for (auto& x : v) x = random_rational(-5, 5, 7);
        if (v[0] == v[1] || v[0] == v[2] || v[0] == v[3] || v[1] == v[2] || v[1] == v[3] || v[2] == v[3]) continue;
        PQ a(v[0], 0, 1), b(v[1], 0, 1), c(v[2], 0, 1), d(v[3], 0, 1);
        Q r = cross_ratio(a, b, c, d);
        CHECK(r == affine_cross_ratio(v[0], v[1], v[2], v[3]));
        CHECK(cross_ratio(b, a, d, c) == r);
        CHECK(cross_ratio(c, d, a, b) == r);
        CHECK(cross_ratio(a, c, b, d) == Q(1 / r));
        CHECK(cross_ratio(a, d, c, b) == Q(1 - r));
        ProjMap<Q> f{random_invertible_rational()};
        CHECK(cross_ratio(apply_map(f, a), apply_map(f, b), apply_map(f, c), apply_map(f, d)) == r);
    }
    CHECK_THROWS_AS(cross_ratio(PQ(0, 0, 1), PQ(1, 0, 1), PQ(2, 0, 1), PQ(0, 1, 1)), GeometryError);
    CHECK_THROWS_AS(cross_ratio(PQ(0, 0, 1), PQ(0, 0, 1), PQ(0, 0, 1), PQ(1, 0, 1)), GeometryError);
}

TEST_CASE("cross ratio on the float backend") {
    ProjPoint<double> a(0, 0, 1), b(1, 0, 1), c(2, 0, 1), d(3, 0, 1);
    CHECK(cross_ratio(a, b, c, d) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("triple product scaling and permutations") {
    for (int k = 0; k < 100; ++k) {
        std::array<Flag<Q>, 3> J{random_flag(), random_flag(), random_flag()};
        Q xi;
        try {
            xi = triple_product(J);
        } catch (const GeometryError&) {
            continue;
        }
        auto J2 = J;
        J2[1].point.v = scaled(J2[1].point.v, Q(-7, 3));
        J2[2].line.v = scaled(J2[2].line.v, Q(5));
        CHECK(triple_product(J2) == xi);
        CHECK(triple_product(std::array<Flag<Q>, 3>{J[1], J[2], J[0]}) == xi);
        CHECK(triple_product(std::array<Flag<Q>, 3>{J[1], J[0], J[2]}) == Q(1 / xi));
        ProjMap<Q> f{random_invertible_rational()};
        std::array<Flag<Q>, 3> JT{apply_map(f, J[0]), apply_map(f, J[1]), apply_map(f, J[2])};
        CHECK(triple_product(JT) == xi);
        Polarity<Q> d{identity3<Q>()};
        d.q[0][1] = d.q[1][0] = Q(1, 3);
        std::array<Flag<Q>, 3> JD{apply_duality(d, J[0]), apply_duality(d, J[1]), apply_duality(d, J[2])};
        CHECK(triple_product(JD) == Q(1 / xi));
    }
}

TEST_CASE("triple product of the symmetric box is -1") {
    auto m = unit_square_box(Q(1, 2), Q(1, 2));
    CHECK(box_triple_product(m) == Q(-1));
}

TEST_CASE("degenerate flags are rejected") {
    Flag<Q> f{PQ(1, 0, 0), LQ(0, 0, 1)};
    CHECK_THROWS_AS(triple_product(std::array<Flag<Q>, 3>{f, f, f}), GeometryError);
}

TEST_CASE("standard polarity swaps the roles of a flag") {
    Polarity<Q> delta{identity3<Q>()};
    Flag<Q> f{PQ(1, 0, 0), LQ(0, 0, 1)};
    Flag<Q> g = apply_duality(delta, f);
    CHECK(g.point == PQ(0, 0, 1));
    CHECK(g.line == LQ(1, 0, 0));

    // (r,0) -> the line r*X + Z = 0, i.e. x = -1/r
    for (int r : {-3, -1, 2, 5}) {
        LQ l = apply_duality(delta, PQ(Q(r), 0, 1));
        Q xr = Q(-1) / Q(r);
        CHECK(incident(PQ(xr, 0, 1), l));
        CHECK(incident(PQ(xr, 7, 1), l));
    }

    for (int k = 0; k < 100; ++k) {
        Polarity<Q> d{random_invertible_rational()};
        d.q = add(d.q, transpose(d.q));
        if (sgn(det(d.q)) == 0) continue;
        Flag<Q> h = random_flag();
        Flag<Q> back = apply_duality(d, apply_duality(d, h));
        CHECK(back == h);
        Flag<Q> img = apply_duality(d, h);
        CHECK(incident(img.point, img.line));
    }
}

TEST_CASE("map action respects composition and incidence") {
    for (int k = 0; k < 100; ++k) {
        ProjMap<Q> f{random_invertible_rational()}, g{random_invertible_rational()};
        Flag<Q> h = random_flag();
        CHECK(apply_map(compose(f, g), h) == apply_map(f, apply_map(g, h)));
        Flag<Q> img = apply_map(f, h);
        CHECK(incident(img.point, img.line));
    }
}

TEST_CASE("transform from four point correspondences") {
    std::array<PQ, 4> std4{PQ(1, 0, 0), PQ(0, 1, 0), PQ(0, 0, 1), PQ(1, 1, 1)};
    CHECK(is_identity_map(transform_from_correspondence(std4, std4)));

    std::array<PQ, 4> perm{PQ(0, 1, 0), PQ(0, 0, 1), PQ(1, 0, 0), PQ(1, 1, 1)};
    ProjMap<Q> f = transform_from_correspondence(std4, perm);
    Mat3q expected{};
    expected[1][0] = 1;
    expected[2][1] = 1;
    expected[0][2] = 1;
    CHECK(proportional(f.m, expected));

    for (int k = 0; k < 100; ++k) {
        std::array<PQ, 4> src, dst;
        for (int i = 0; i < 4; ++i) {
            src[i] = random_point();
            dst[i] = random_point();
        }
        ProjMap<Q> t;
        try {
            t = transform_from_correspondence(src, dst);
        } catch (const GeometryError&) {
            continue;
        }
        for (int i = 0; i < 4; ++i) CHECK(apply_map(t, src[i]) == dst[i]);
    }
    std::array<PQ, 4> bad{PQ(1, 0, 1), PQ(2, 0, 1), PQ(3, 0, 1), PQ(0, 1, 0)};
    CHECK_THROWS_AS(transform_from_correspondence(bad, std4), GeometryError);
}

TEST_CASE("ellipticity of polarities") {
    CHECK(is_elliptic(Polarity<Q>{identity3<Q>()}));
    CHECK_FALSE(is_elliptic(Polarity<Q>{diag3<Q>({-1, -1, 1})}));
    CHECK(is_elliptic(Polarity<Q>{diag3<Q>({-1, -1, -2})}));
    // minors 1, 1-x^2, (x^2-1)(y^2-1) at (0.3,-0.4)
    Q x(3, 10), y(-4, 10);
    Mat3q m = model_polarity_matrix(x, y);
    CHECK(m[0][0] == 1);
    CHECK(Q(m[0][0] * m[1][1] - m[0][1] * m[1][0]) == Q(1 - x * x));
    CHECK(det(m) == Q((x * x - 1) * (y * y - 1)));
    CHECK(is_elliptic(Polarity<Q>{m}));
    CHECK(is_elliptic(Polarity<double>{to_double(m)}));
    CHECK_FALSE(is_elliptic(Polarity<double>{diag3<double>({-1, -1, 1})}));
}

TEST_CASE("canonical forms") {
    CHECK(canonical(Vec3q{Q(0), Q(2), Q(-4)}) == Vec3q{Q(0), Q(1), Q(-2)});
    Vec3d c = canonical(Vec3d{0, -3, 4});
    CHECK(c[1] == doctest::Approx(0.6));
    CHECK(c[2] == doctest::Approx(-0.8));
    CHECK(parse_rational("3/10") == Q(3, 10));
    CHECK(parse_rational("0.3") == Q(3, 10));
    CHECK(parse_rational("-1.25") == Q(-5, 4));
    CHECK(parse_rational("7") == Q(7));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1/0"));
}
