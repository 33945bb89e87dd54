#include "pappus_tools/export.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace pappus::tools {

bool same_direction(const Vec3d& a, const Vec3d& b, double tol) {
    double na = norm_d(a), nb = norm_d(b);
    if (na == 0 || nb == 0) return false;
    return norm_d(cross(a, b)) <= tol * na * nb;
}

bool clip_line(const Vec3d& l, double r, Segment& out) {
    const double a = l[0], b = l[1], c = l[2];
    const double scale = std::hypot(a, b);
    if (scale <= 1e-12 * std::fabs(c)) return false;  // line at infinity
    const double eps = 1e-12 * r;
    double pts[4][2];
    int n = 0;
    auto add = [&](double x, double y) {
        if (std::fabs(x) > r + eps || std::fabs(y) > r + eps) return;
        for (int k = 0; k < n; ++k)
            if (std::fabs(pts[k][0] - x) <= eps && std::fabs(pts[k][1] - y) <= eps) return;
        if (n < 4) pts[n][0] = x, pts[n][1] = y, ++n;
    };
    if (std::fabs(b) > 1e-15 * scale) {
        add(-r, (a * r - c) / b);
        add(r, (-a * r - c) / b);
    }
    if (std::fabs(a) > 1e-15 * scale) {
        add((b * r - c) / a, -r);
        add((-b * r - c) / a, r);
    }
    if (n < 2) return false;
    // corners can produce extra hits; keep the farthest pair
    int bi = 0, bj = 1;
    double best = -1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
            if (d > best) best = d, bi = i, bj = j;
        }
    if (best <= eps) return false;
    out = {pts[bi][0], pts[bi][1], pts[bj][0], pts[bj][1]};
    return true;
}

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
}

}  // namespace

void write_svg(const std::vector<ChartFlag>& flags, double r, std::ostream& out) {
    const double stroke = r / 800, dot = r / 150;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"" << num(-r) << ' '
        << num(-r) << ' ' << num(2 * r) << ' ' << num(2 * r) << "\">\n"
        << "<rect x=\"" << num(-r) << "\" y=\"" << num(-r) << "\" width=\"" << num(2 * r) << "\" height=\""
        << num(2 * r) << "\" fill=\"white\"/>\n"
        << "<g transform=\"scale(1,-1)\">\n"
        << "<g stroke=\"#4a6fa5\" stroke-width=\"" << num(stroke) << "\" fill=\"none\">\n";
    for (const auto& f : flags) {
        Segment s;
        if (!clip_line(f.line, r, s)) continue;
        out << "<line x1=\"" << num(s.x0) << "\" y1=\"" << num(s.y0) << "\" x2=\"" << num(s.x1) << "\" y2=\""
            << num(s.y1) << "\"/>\n";
    }
    out << "</g>\n<g fill=\"#b03a2e\">\n";
    for (const auto& f : flags) {
        const Vec3d& p = f.point;
        double scale = norm_d(p);
        if (std::fabs(p[2]) <= 1e-12 * scale) continue;  // point at infinity
        double x = p[0] / p[2], y = p[1] / p[2];
        if (std::fabs(x) > r || std::fabs(y) > r) continue;
        out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(dot) << "\"/>\n";
    }
    out << "</g>\n</g>\n</svg>\n";
}

}  // namespace pappus::tools
