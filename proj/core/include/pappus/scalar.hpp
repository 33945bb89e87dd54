#pragma once

// Two scalar backends: exact rationals (GMP) and doubles.  Generic code
// must go through ScalarTraits for zero tests and conversions.

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace pappus {

using Rational = mpq_class;

// Relative tolerance used by the float backend.  Process-wide; the CLI
// sets it from --tol before any work starts.
double float_tolerance() noexcept;
void set_float_tolerance(double tol);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static bool is_zero(const Rational& v, double /*scale*/ = 1.0) { return sgn(v) == 0; }
    static int sign(const Rational& v, double = 1.0) { return sgn(v); }
    static double to_double(const Rational& v) { return v.get_d(); }
    static double magnitude(const Rational& v) { return std::fabs(v.get_d()); }
    static Rational abs(const Rational& v) { return ::abs(v); }
    static std::string str(const Rational& v) { return v.get_str(); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    // |v| <= tol * scale, where scale is the magnitude of the quantities
    // that produced v.
    static bool is_zero(double v, double scale = 1.0) {
        return std::fabs(v) <= float_tolerance() * (scale > 0 ? scale : 1.0);
    }
    static int sign(double v, double scale = 1.0) { return is_zero(v, scale) ? 0 : (v > 0 ? 1 : -1); }
    static double to_double(double v) { return v; }
    static double magnitude(double v) { return std::fabs(v); }
    static double abs(double v) { return std::fabs(v); }
    static std::string str(double v);
};

// Parses "p/q", an integer, or a decimal into an exact rational.
// Decimals are read exactly ("0.3" -> 3/10).
Rational parse_rational(const std::string& text);

}  // namespace pappus
