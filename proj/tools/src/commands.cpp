#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "pappus/errors.hpp"
#include "pappus/fareypattern.hpp"
#include "pappus/markedbox.hpp"
#include "pappus/prisms.hpp"
#include "pappus_tools/commands.hpp"
#include "pappus_tools/export.hpp"

namespace pappus::tools {

using json = nlohmann::ordered_json;

namespace {

Format pick_format(Format requested, Format fallback, std::initializer_list<Format> allowed, const char* command) {
    Format f = requested == Format::Default ? fallback : requested;
    if (std::find(allowed.begin(), allowed.end(), f) == allowed.end())
        throw ConfigError(std::string("format not supported by ") + command);
    return f;
}

std::string g17(double v) { return ScalarTraits<double>::str(v); }

const char* backend_name(bool exact) { return exact ? "exact" : "float"; }

// ---- orbit ---------------------------------------------------------------

template <class T>
void write_orbit(const T& x, const T& y, const RunConfig& cfg, Format fmt, std::ostream& out) {
    auto orbit = orbit_enumerate(box_from_invariant(x, y), cfg.depth, cfg.workers);
    if (fmt == Format::Csv) {
        out << "word,s,t,u,a,b,c,x,y\n";
        for (const auto& e : orbit) {
            out << e.word;
            for (const auto& p : e.box.p) out << ',' << to_string(canonical(p.v));
            auto inv = box_invariant_raw(e.box);
            out << ',' << ScalarTraits<T>::str(inv.x) << ',' << ScalarTraits<T>::str(inv.y) << '\n';
        }
        return;
    }
    json doc;
    doc["schema"] = "pappus.orbit/1";
    doc["backend"] = backend_name(ScalarTraits<T>::exact);
    doc["x"] = scalar_json(x);
    doc["y"] = scalar_json(y);
    doc["depth"] = cfg.depth;
    json boxes = json::array();
    for (const auto& e : orbit) {
        json pts = json::array();
        for (const auto& p : e.box.p) pts.push_back(vec_json(canonical(p.v)));
        auto inv = box_invariant_raw(e.box);
        boxes.push_back({{"word", e.word}, {"points", pts}, {"invariant", {scalar_json(inv.x), scalar_json(inv.y)}}});
    }
    doc["boxes"] = boxes;
    out << doc.dump(2) << '\n';
}

// ---- limit set -----------------------------------------------------------

template <class T>
void write_limitset(const T& x, const T& y, const RunConfig& cfg, Format fmt, std::ostream& out) {
    auto flags = limit_set_flags(x, y, cfg.depth, cfg.workers);
    if (fmt == Format::Csv) {
        out << "word,px,py,pz,lx,ly,lz,farey_tail,farey_head\n";
        for (const auto& f : flags) {
            auto p = canonical(f.flag.point.v);
            auto l = canonical(f.flag.line.v);
            out << f.word;
            for (const auto& v : p) out << ',' << ScalarTraits<T>::str(v);
            for (const auto& v : l) out << ',' << ScalarTraits<T>::str(v);
            out << ',' << f.edge.tail.str() << ',' << f.edge.head.str() << '\n';
        }
        return;
    }
    std::vector<ChartFlag> chart;
    chart.reserve(flags.size());
    for (const auto& f : flags) chart.push_back({to_double(f.flag.point.v), to_double(f.flag.line.v)});
    write_svg(chart, cfg.viewport, out);
}

// ---- pattern -------------------------------------------------------------

template <class T>
bool flag_matches(const BoundaryClass& c, const Flag<T>& expected) {
    const auto* fc = std::get_if<FlagClass>(&c);
    if (!fc) return false;
    return same_direction(fc->flag.point.v, to_double(expected.point.v)) &&
           same_direction(fc->flag.line.v, to_double(expected.line.v));
}

template <class T>
json flag_json(const Flag<T>& f) {
    return {{"point", vec_json(canonical(f.point.v))}, {"line", vec_json(canonical(f.line.v))}};
}

template <class T>
void write_pattern(const T& x, const T& y, const RunConfig& cfg, std::ostream& out) {
    auto pattern = build_pattern(x, y, cfg.depth, false, cfg.workers);
    json doc;
    doc["schema"] = "pappus.pattern/1";
    doc["backend"] = backend_name(ScalarTraits<T>::exact);
    doc["x"] = scalar_json(x);
    doc["y"] = scalar_json(y);
    doc["depth"] = cfg.depth;
    json geos = json::array();
    for (const auto& g : pattern.geodesics) {
        bool back = flag_matches(boundary_ray_class(g.geodesic, -1), g.top);
        bool fwd = flag_matches(boundary_ray_class(g.geodesic, +1), g.bottom);
        geos.push_back({{"word", g.word},
                        {"edge", {{"tail", g.edge.tail.str()}, {"head", g.edge.head.str()}}},
                        {"flat_basis", mat_json(g.flat.basis)},
                        {"fixed_point", mat_json(g.fixed_point.s)},
                        {"direction", mat_json(g.geodesic.direction())},
                        {"membership_residual", g.membership_residual},
                        {"top", flag_json(g.top)},
                        {"bottom", flag_json(g.bottom)},
                        {"endpoints_match", back && fwd}});
    }
    doc["geodesics"] = geos;

    if (cfg.distances) {
        const int gs = cfg.samples > 0 ? cfg.samples : 9;
        const int fs = cfg.samples > 0 ? cfg.samples : 5;
        const auto& gv = pattern.geodesics;
        json pairs = json::array();
        double gmin = INFINITY, fmin = INFINITY;
        json gmin_pair, fmin_pair;
        for (std::size_t i = 0; i < gv.size(); ++i)
            for (std::size_t j = i + 1; j < gv.size(); ++j) {
                double dg = min_distance_geodesics(gv[i], gv[j], cfg.window, gs).value;
                double df = min_distance_flats(gv[i].flat, gv[j].flat, cfg.window, fs).value;
                pairs.push_back({{"a", gv[i].word}, {"b", gv[j].word}, {"geodesic", dg}, {"flat", df}});
                if (dg < gmin) gmin = dg, gmin_pair = {gv[i].word, gv[j].word};
                if (df < fmin) fmin = df, fmin_pair = {gv[i].word, gv[j].word};
            }
        json summary;
        summary["window"] = cfg.window;
        summary["geodesic_samples"] = gs;
        summary["flat_samples"] = fs;
        summary["pair_count"] = pairs.size();
        if (!pairs.empty()) {
            summary["geodesic_min"] = {{"value", gmin}, {"pair", gmin_pair}};
            summary["flat_min"] = {{"value", fmin}, {"pair", fmin_pair}};
        }
        summary["all_positive"] = pairs.empty() || (gmin > 0 && fmin > 0);
        summary["pairs"] = pairs;
        doc["distances"] = summary;
    }
    out << doc.dump(2) << '\n';
}

// ---- prism ---------------------------------------------------------------

json prism_json(const BendingReport& r) {
    json doc;
    doc["schema"] = "pappus.prism/1";
    doc["x"] = r.x;
    doc["y"] = r.y;
    doc["depth"] = r.depth;
    json prisms = json::array();
    for (const auto& p : r.prisms)
        prisms.push_back({{"word", p.word},
                          {"x", p.x},
                          {"y", p.y},
                          {"triple_invariant", p.triple_invariant},
                          {"d", p.d},
                          {"collinearity", p.collinearity},
                          {"distances", p.distances},
                          {"degenerate", p.degenerate}});
    doc["prisms"] = prisms;
    json adj = json::array();
    for (const auto& a : r.adjacent)
        adj.push_back({{"parent", a.parent},
                       {"child", a.child},
                       {"line_offset", a.line_offset},
                       {"inflection_shift", a.inflection_shift},
                       {"center_distance", a.center_distance}});
    doc["adjacent"] = adj;
    return doc;
}

// ---- cone ----------------------------------------------------------------

template <class T>
void write_cone(const T& x, const T& y, const RunConfig& cfg, std::ostream& out) {
    Prism<T> p = prism_of_triangle(box_from_invariant(x, y));
    const int n = cfg.samples > 0 ? cfg.samples : 8;
    ConeMesh mesh = cone_fill_sample(p, cfg.offset, n, cfg.window);
    out << "# pappus cone sample\n"
        << "# Vertices are NOT Euclidean points: each 'v' line is a unit-determinant\n"
        << "# positive definite symmetric matrix flattened as s00 s01 s02 s11 s12 s22.\n"
        << "# Each 'l' line is a geodesic segment from a boundary sample to the apex\n"
        << "# (1-based vertex indices).\n"
        << "# x " << g17(ScalarTraits<T>::to_double(x)) << " y " << g17(ScalarTraits<T>::to_double(y))
        << " offset " << g17(cfg.offset) << " samples " << n << " window " << g17(cfg.window) << '\n';
    for (const auto& v : mesh.vertices) {
        const Mat3d& s = v.s;
        out << "v " << g17(s[0][0]) << ' ' << g17(s[0][1]) << ' ' << g17(s[0][2]) << ' ' << g17(s[1][1]) << ' '
            << g17(s[1][2]) << ' ' << g17(s[2][2]) << '\n';
    }
    for (const auto& line : mesh.polylines) {
        out << 'l';
        for (int k : line) out << ' ' << (k + 1);
        out << '\n';
    }
}

}  // namespace

// ---- public commands -------------------------------------------------------

int cmd_orbit(RunConfig cfg, std::ostream& out, std::ostream& err) {
    Params p = validate(cfg, err);
    Format fmt = pick_format(cfg.format, Format::Csv, {Format::Csv, Format::Json}, "orbit");
    if (p.exact)
        write_orbit(p.xq, p.yq, cfg, fmt, out);
    else
        write_orbit(p.xd, p.yd, cfg, fmt, out);
    return kOk;
}

int cmd_limitset(RunConfig cfg, std::ostream& out, std::ostream& err) {
    Params p = validate(cfg, err);
    Format fmt = pick_format(cfg.format, Format::Svg, {Format::Svg, Format::Csv}, "limitset");
    if (p.exact)
        write_limitset(p.xq, p.yq, cfg, fmt, out);
    else
        write_limitset(p.xd, p.yd, cfg, fmt, out);
    return kOk;
}

int cmd_pattern(RunConfig cfg, std::ostream& out, std::ostream& err) {
    Params p = validate(cfg, err);
    pick_format(cfg.format, Format::Json, {Format::Json}, "pattern");
    if (p.exact)
        write_pattern(p.xq, p.yq, cfg, out);
    else
        write_pattern(p.xd, p.yd, cfg, out);
    return kOk;
}

int cmd_charvar(RunConfig cfg, std::ostream& out, std::ostream& err) {
    validate(cfg, err);
    pick_format(cfg.format, Format::Csv, {Format::Csv}, "charvar");
    // Cell centers: symmetric under (x,y) -> (1-y,x), and odd grids hit (1/2,1/2).
    out << "x,y,triple_invariant\n";
    for (int j = 0; j < cfg.grid; ++j) {
        double y = (j + 0.5) / cfg.grid;
        for (int i = 0; i < cfg.grid; ++i) {
            double x = (i + 0.5) / cfg.grid;
            out << g17(x) << ',' << g17(y) << ',' << g17(triple_invariant(x, y)) << '\n';
        }
    }
    return kOk;
}

int cmd_prism(RunConfig cfg, std::ostream& out, std::ostream& err) {
    Params p = validate(cfg, err);
    pick_format(cfg.format, Format::Json, {Format::Json}, "prism");
    BendingReport r = p.exact ? bending_report(p.xq, p.yq, cfg.depth, cfg.workers)
                              : bending_report(p.xd, p.yd, cfg.depth, cfg.workers);
    json doc = prism_json(r);
    doc["backend"] = backend_name(p.exact);
    out << doc.dump(2) << '\n';
    return kOk;
}

int cmd_cone(RunConfig cfg, std::ostream& out, std::ostream& err) {
    Params p = validate(cfg, err);
    pick_format(cfg.format, Format::Obj, {Format::Obj}, "cone");
    if (p.exact)
        write_cone(p.xq, p.yq, cfg, out);
    else
        write_cone(p.xd, p.yd, cfg, out);
    return kOk;
}

int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.tol > 0 && cfg.tol < 1) set_float_tolerance(cfg.tol);  // validate() reports bad values
        if (command == "orbit") return cmd_orbit(cfg, out, err);
        if (command == "limitset") return cmd_limitset(cfg, out, err);
        if (command == "pattern") return cmd_pattern(cfg, out, err);
        if (command == "charvar") return cmd_charvar(cfg, out, err);
        if (command == "prism") return cmd_prism(cfg, out, err);
        if (command == "cone") return cmd_cone(cfg, out, err);
        if (command == "verify") return cmd_verify(cfg, out, err);
        throw ConfigError("unknown command '" + command + "'");
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::OutOfRange ? kInvalidConfig : kDegenerate;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace pappus::tools
