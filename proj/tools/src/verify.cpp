// The verify command: randomized checks of the box identities, the
// polarity incidences, the metric, the pattern and the prism geometry.
// Seeds are fixed so reports are reproducible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pappus/errors.hpp"
#include "pappus/fareypattern.hpp"
#include "pappus/markedbox.hpp"
#include "pappus/prisms.hpp"
#include "pappus/symmspace.hpp"
#include "pappus_tools/commands.hpp"
#include "pappus_tools/export.hpp"

namespace pappus::tools {

using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kSeed = 0x9a55e5ULL;

struct Check {
    std::string suite, name;
    int trials = 0;
    int failures = 0;
    double max_residual = 0;
    double threshold = 0;  // 0: exact check

    void record(bool ok, double residual = 0) {
        ++trials;
        failures += ok ? 0 : 1;
        if (std::isnan(residual))
            max_residual = residual;
        else if (!std::isnan(max_residual))
            max_residual = std::max(max_residual, residual);
    }
    void residual(double r) { record(r <= threshold, r); }
    bool passed() const { return trials > 0 && failures == 0; }
};

class Sampler {
public:
    Sampler() : g_(kSeed) {}

    Rational unit(int max_den = 97) {
        int den = std::uniform_int_distribution<int>(2, max_den)(g_);
        Rational r(std::uniform_int_distribution<int>(1, den - 1)(g_), den);
        r.canonicalize();
        return r;
    }
    // Strictly inside (-1, 1).
    Rational symmetric(int max_den = 97) { return Rational(2) * unit(max_den) - 1; }

    Mat3q invertible() {
        for (;;) {
            Mat3q m;
            for (auto& row : m)
                for (auto& v : row) v = Rational(std::uniform_int_distribution<int>(-15, 15)(g_), 5);
            if (sgn(det(m)) != 0) return m;
        }
    }

    Mat3d sl3() {
        std::uniform_real_distribution<double> d(-1, 1);
        for (;;) {
            Mat3d m;
            for (auto& row : m)
                for (auto& v : row) v = d(g_);
            double dt = det(m);
            if (std::fabs(dt) < 0.05) continue;
            return scaled(m, 1.0 / std::cbrt(dt));
        }
    }

    // Polarity-invariance residuals grow like cond(q)^2 * eps.
    Mat3d conditioned_spd(double max_cond) {
        for (;;) {
            Mat3d g = sl3();
            Mat3d q = mul(g, transpose(g));
            SymEigen e = jacobi_eigen(q);
            if (e.values[0] <= max_cond * e.values[2]) return q;
        }
    }

    XPoint point() {
        Mat3d g = sl3();
        return XPoint(mul(g, transpose(g)));
    }

private:
    std::mt19937_64 g_;
};

struct Context {
    const RunConfig& cfg;
    const Params& params;
    double scale;  // --tol relative to the default 1e-9
    int trials(int fallback) const { return cfg.samples > 0 ? cfg.samples : fallback; }
    double thr(double base) const { return base * scale; }
};

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

void suite_relations(const Context& ctx, std::vector<Check>& out) {
    Sampler rng;
    Check ii{"relations", "i^2 = id"}, tit{"relations", "tit = b"}, bib{"relations", "bib = t"},
        inv{"relations", "invariants of t, b, i ~ (1-y, x)"};
    const int n = ctx.trials(100);
    for (int k = 0; k < n; ++k) {
        Rational x = rng.unit(), y = rng.unit();
        auto m = apply_map(ProjMap<Rational>{rng.invertible()}, unit_square_box(x, y));
        ii.record(op_i(op_i(m)) == m);
        tit.record(op_t(op_i(op_t(m))) == op_b(m));
        bib.record(op_b(op_i(op_b(m))) == op_t(m));
        BoxInvariant<Rational> expected{Rational(1 - y), x};
        bool ok = true;
        for (const auto& img : {op_t(m), op_b(m), op_i(m)}) ok = ok && same_invariant(box_invariant_raw(img), expected);
        inv.record(ok);
    }
    out.insert(out.end(), {ii, tit, bib, inv});
}

void suite_duality(const Context& ctx, std::vector<Check>& out) {
    Sampler rng;
    Check inc{"duality", "12 incidences of the model polarity"}, dt{"duality", "det m = (p^2-1)(q^2-1)"},
        ell{"duality", "m definite"}, inv{"duality", "delta^2 = id on enhanced boxes"},
        img{"duality", "delta(M) = i(M) for moved boxes"};
    const int n = ctx.trials(50);
    for (int k = 0; k < n; ++k) {
        Rational p = rng.symmetric(), q = rng.symmetric();
        Mat3q m = model_polarity_matrix(p, q);
        auto m1 = model_box(p, q);
        auto m2 = doppelganger(op_i(m1).flipped());
        auto d1 = doppelganger(m1);
        auto i1 = op_i(m1);
        int zero = 0;
        for (int j = 0; j < 6; ++j) {
            zero += is_zero_vec(cross(mul(m, m1.p[j].v), m2.l[j].v));
            zero += is_zero_vec(cross(mul(adjugate(m), d1.l[j].v), i1.p[j].v));
        }
        inc.record(zero == 12, 12 - zero);
        dt.record(det(m) == Rational((p * p - 1) * (q * q - 1)));
        ell.record(is_elliptic(Polarity<Rational>{m}));

        auto moved = apply_map(ProjMap<Rational>{rng.invertible()}, model_box(p, q));
        Polarity<Rational> d = box_polarity(moved);
        auto e = enhance(moved);
        auto once = enhanced_duality(d, e);
        img.record(once.box == op_i(moved) && once.dual == doppelganger(op_i(moved)));
        auto twice = enhanced_duality(d, once);
        inv.record(twice.box == e.box && twice.dual == e.dual);
    }
    out.insert(out.end(), {inc, dt, ell, inv, img});
}

void suite_metric(const Context& ctx, std::vector<Check>& out) {
    Sampler rng;
    Check sl3{"metric", "SL3 invariance (relative)", 0, 0, 0, ctx.thr(1e-9)};
    Check dual{"metric", "duality invariance (relative)", 0, 0, 0, ctx.thr(1e-9)};
    Check speed{"metric", "unit speed geodesics", 0, 0, 0, ctx.thr(1e-8)};
    const int n = ctx.trials(100);
    for (int k = 0; k < n; ++k) {
        XPoint a = rng.point(), b = rng.point();
        double d = metric_d(a, b);
        Mat3d g = rng.sl3();
        sl3.residual(rel(metric_d(group_action(g, a), group_action(g, b)), d));
        Mat3d q = rng.conditioned_spd(20);  // a definite polarity
        dual.residual(std::max(rel(metric_d(duality_action(identity3<double>(), a), duality_action(identity3<double>(), b)), d),
                               rel(metric_d(duality_action(q, a), duality_action(q, b)), d)));
        XGeodesic line = geodesic_between(a, b);
        double worst = std::fabs(metric_d(geodesic_point(line, d), b));
        for (double t : {-1.5, 0.3, 2.0}) worst = std::max(worst, std::fabs(metric_d(geodesic_point(line, t), geodesic_point(line, t + 0.7)) - 0.7));
        speed.residual(worst);
    }
    out.insert(out.end(), {sl3, dual, speed});
}

std::set<std::string> vertex_keys(const OrientedEdge& e) { return {e.tail.str(), e.head.str()}; }

bool flag_class_matches(const BoundaryClass& c, const Flag<double>& f) {
    const auto* fc = std::get_if<FlagClass>(&c);
    return fc && same_direction(fc->flag.point.v, f.point.v) && same_direction(fc->flag.line.v, f.line.v);
}

template <class T>
void pattern_checks(const Context& ctx, const T& x, const T& y, std::vector<Check>& out) {
    Check mem{"pattern", "p_M in f_M", 0, 0, 0, ctx.thr(1e-10)};
    Check ends{"pattern", "boundary classes are the top/bottom flags"};
    Check adj{"pattern", "one-end-asymptotic iff Farey-adjacent"};
    auto pattern = build_pattern(x, y, ctx.cfg.depth, false, ctx.cfg.workers);
    auto as_double = [](const Flag<T>& f) { return Flag<double>{ProjPoint<double>(to_double(f.point.v)), ProjLine<double>(to_double(f.line.v))}; };
    for (const auto& g : pattern.geodesics) {
        mem.residual(g.membership_residual);
        ends.record(flag_class_matches(boundary_ray_class(g.geodesic, -1), as_double(g.top)) &&
                    flag_class_matches(boundary_ray_class(g.geodesic, +1), as_double(g.bottom)));
    }
    const auto& gv = pattern.geodesics;
    for (std::size_t i = 0; i < gv.size(); ++i)
        for (std::size_t j = i + 1; j < gv.size(); ++j) {
            auto a = vertex_keys(gv[i].edge), b = vertex_keys(gv[j].edge);
            int common = 0;
            for (const auto& v : a) common += int(b.count(v));
            adj.record(one_end_asymptotic(gv[i], gv[j]) == (common == 1));
        }
    out.insert(out.end(), {mem, ends, adj});
}

void suite_pattern(const Context& ctx, std::vector<Check>& out) {
    if (ctx.params.exact)
        pattern_checks(ctx, ctx.params.xq, ctx.params.yq, out);
    else
        pattern_checks(ctx, ctx.params.xd, ctx.params.yd, out);
}

void suite_prism(const Context& ctx, std::vector<Check>& out) {
    Sampler rng;
    Check col{"prism", "fixed point and inflection point on one singular geodesic", 0, 0, 0, ctx.thr(1e-9)};
    Check eig{"prism", "translation matrix eigenvalues 1, -1, (-1+x+y)/(x-y)"};
    const int n = ctx.trials(20);
    int done = 0;
    while (done < n) {
        Rational x = rng.unit(41), y = rng.unit(41);
        // x = y is the diagonal locus; x + y = 1 has triple product -1
        if (x == y || x + y == 1) continue;
        ++done;
        Prism<Rational> p = prism_of_triangle(box_from_invariant(x, y));
        double worst = 0;
        for (int k = 0; k < 3; ++k) worst = std::max(worst, prism_inflection(p, k).collinearity);
        col.residual(worst);

        Mat3q t = translation_T(x, y);
        Vec3q tv{x, Rational(1), Rational(1)}, bv{Rational(1 - y), Rational(0), Rational(1)}, ev{Rational(1), Rational(0), Rational(0)};
        Rational lambda = (x + y - 1) / (x - y);
        eig.record(mul(t, tv) == tv && mul(t, bv) == scaled(bv, Rational(-1)) && mul(t, ev) == scaled(ev, lambda));
    }
    out.insert(out.end(), {col, eig});
}

}  // namespace

int cmd_verify(RunConfig cfg, std::ostream& out, std::ostream& err) {
    Params params = validate(cfg, err);
    if (cfg.format != Format::Default && cfg.format != Format::Json) throw ConfigError("format not supported by verify");
    static const std::vector<std::string> kSuites = {"relations", "duality", "metric", "pattern", "prism"};
    if (cfg.suite != "all" && std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end())
        throw ConfigError("unknown suite '" + cfg.suite + "' (expected all, relations, duality, metric, pattern or prism)");

    Context ctx{cfg, params, cfg.tol / 1e-9};
    std::vector<Check> checks;
    json timings = json::object();
    for (const auto& name : kSuites) {
        if (cfg.suite != "all" && cfg.suite != name) continue;
        auto start = std::chrono::steady_clock::now();
        if (name == "relations") suite_relations(ctx, checks);
        if (name == "duality") suite_duality(ctx, checks);
        if (name == "metric") suite_metric(ctx, checks);
        if (name == "pattern") suite_pattern(ctx, checks);
        if (name == "prism") suite_prism(ctx, checks);
        timings[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    bool all = true;
    json list = json::array();
    for (const auto& c : checks) {
        all = all && c.passed();
        list.push_back({{"suite", c.suite},
                        {"name", c.name},
                        {"trials", c.trials},
                        {"failures", c.failures},
                        {"max_residual", c.max_residual},
                        {"threshold", c.threshold},
                        {"passed", c.passed()}});
        if (!c.passed()) err << "FAIL " << c.suite << ": " << c.name << " (" << c.failures << "/" << c.trials << ")\n";
    }
    json doc;
    doc["schema"] = "pappus.verify/1";
    doc["suite"] = cfg.suite;
    doc["tolerance"] = cfg.tol;
    doc["passed"] = all;
    doc["checks"] = list;
    doc["seconds"] = timings;
    out << doc.dump(2) << '\n';
    return all ? kOk : kVerifyFailed;
}

}  // namespace pappus::tools
