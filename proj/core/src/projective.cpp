#include "pappus/projective.hpp"

#include <atomic>
#include <cctype>
#include <cstdio>

#include "pappus/jacobi.hpp"

namespace pappus {

namespace {
std::atomic<double> g_tolerance{1e-9};
}

double float_tolerance() noexcept { return g_tolerance.load(std::memory_order_relaxed); }

void set_float_tolerance(double tol) {
    if (!(tol > 0)) throw GeometryError(ErrorCode::OutOfRange, "tolerance must be positive");
    g_tolerance.store(tol, std::memory_order_relaxed);
}

std::string ScalarTraits<double>::str(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0 ? 0.0 : v);  // no "-0"
    return buf;
}

Rational parse_rational(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    if (text.empty()) throw GeometryError(ErrorCode::OutOfRange, "empty number");

    auto slash = text.find('/');
    auto dotp = text.find('.');
    try {
        if (slash != std::string::npos) {
            Rational r(text);
            if (r.get_den() == 0) throw GeometryError(ErrorCode::OutOfRange, "zero denominator: " + raw);
            r.canonicalize();
            return r;
        }
        if (dotp == std::string::npos) return Rational(mpz_class(text));
        std::string digits = text.substr(0, dotp) + text.substr(dotp + 1);
        std::size_t frac = text.size() - dotp - 1;
        if (digits.empty() || digits == "-" || digits == "+") throw GeometryError(ErrorCode::OutOfRange, raw);
        for (std::size_t i = 0; i < digits.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(digits[i])) && !(i == 0 && (digits[i] == '-' || digits[i] == '+')))
                throw GeometryError(ErrorCode::OutOfRange, "not a number: " + raw);
        if (digits[0] == '+') digits.erase(0, 1);
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac; ++i) den *= 10;
        Rational r(mpz_class(digits), den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw GeometryError(ErrorCode::OutOfRange, "not a number: " + raw);
    }
}

bool is_elliptic(const Polarity<Rational>& d) {
    const Mat3q& q = d.q;
    Rational m1 = q[0][0];
    Rational m2 = q[0][0] * q[1][1] - q[0][1] * q[1][0];
    Rational m3 = det(q);
    bool pos = sgn(m1) > 0 && sgn(m2) > 0 && sgn(m3) > 0;
    bool neg = sgn(m1) < 0 && sgn(m2) > 0 && sgn(m3) < 0;
    return pos || neg;
}

bool is_elliptic(const Polarity<double>& d) {
    SymEigen e = jacobi_eigen(d.q);
    double scale = std::fabs(e.values[0]) + std::fabs(e.values[2]);
    double eps = float_tolerance() * scale;
    return (e.values[2] > eps) || (e.values[0] < -eps);
}

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::CoincidentLines: return "CoincidentLines";
        case ErrorCode::NotCollinear: return "NotCollinear";
        case ErrorCode::DegenerateQuadruple: return "DegenerateQuadruple";
        case ErrorCode::DegenerateFlags: return "DegenerateFlags";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::DegenerateBox: return "DegenerateBox";
        case ErrorCode::NumericalFailure: return "NumericalFailure";
        case ErrorCode::SingularMap: return "SingularMap";
        case ErrorCode::NonElliptic: return "NonElliptic";
        case ErrorCode::CollinearVertices: return "CollinearVertices";
        case ErrorCode::ZeroDirection: return "ZeroDirection";
        case ErrorCode::FixedPointOffFlat: return "FixedPointOffFlat";
        case ErrorCode::DegenerateTriple: return "DegenerateTriple";
        case ErrorCode::UnityTripleProduct: return "UnityTripleProduct";
        case ErrorCode::NoFixedPointInFlat: return "NoFixedPointInFlat";
        case ErrorCode::PointOffFlat: return "PointOffFlat";
        case ErrorCode::DiagonalLocus: return "DiagonalLocus";
        case ErrorCode::ConsistencyFailure: return "ConsistencyFailure";
    }
    return "Unknown";
}

}  // namespace pappus
