#pragma once

// Shared generators for property tests.  Fixed seeds keep runs repeatable.

#include <random>

#include "pappus/jacobi.hpp"
#include "pappus/markedbox.hpp"

namespace testing_support {

using pappus::Rational;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(0x5eed1234abcdULL);
    return g;
}

// Uniform rational k/den with 0 < k < den.
inline Rational random_unit_rational(int max_den = 97) {
    std::uniform_int_distribution<int> dd(2, max_den);
    int den = dd(rng());
    std::uniform_int_distribution<int> nd(1, den - 1);
    Rational r(nd(rng()), den);
    r.canonicalize();
    return r;
}

inline Rational random_rational(int lo, int hi, int max_den = 13) {
    std::uniform_int_distribution<int> dd(1, max_den);
    int den = dd(rng());
    std::uniform_int_distribution<int> nd(lo * den, hi * den);
    Rational r(nd(rng()), den);
    r.canonicalize();
    return r;
}

inline double random_double(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng());
}

// Float checks lose about cond * 1e-15, so frames are kept moderately
// conditioned (2-norm condition number <= max_cond).
inline pappus::Mat3q random_invertible_rational(double max_cond = 100) {
    for (;;) {
        pappus::Mat3q m;
        for (auto& row : m)
            for (auto& v : row) v = random_rational(-3, 3, 5);
        if (sgn(pappus::det(m)) == 0) continue;
        pappus::Mat3d d = pappus::to_double(m);
        pappus::SymEigen e = pappus::jacobi_eigen(pappus::mul(pappus::transpose(d), d));
        if (e.values[0] <= max_cond * max_cond * e.values[2]) return m;
    }
}

inline pappus::Mat3d random_sl3(double spread = 1.0) {
    for (;;) {
        pappus::Mat3d m;
        for (auto& row : m)
            for (auto& v : row) v = random_double(-spread, spread);
        double d = pappus::det(m);
        if (std::fabs(d) < 0.05) continue;
        if (d < 0)
            for (auto& v : m[0]) v = -v;
        return pappus::scaled(m, 1.0 / std::cbrt(std::fabs(d)));
    }
}

// Box with raw invariant (x,y), moved by a random projective map.
inline pappus::MarkedBox<Rational> random_box(Rational* x_out = nullptr, Rational* y_out = nullptr) {
    Rational x = random_unit_rational(), y = random_unit_rational();
    if (x_out) *x_out = x;
    if (y_out) *y_out = y;
    auto m = pappus::unit_square_box(x, y);
    return pappus::apply_map(pappus::ProjMap<Rational>{random_invertible_rational()}, m);
}

}  // namespace testing_support
