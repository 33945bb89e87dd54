#include <cstdlib>
#include <ostream>
#include <string>

#include "pappus/errors.hpp"
#include "pappus_tools/commands.hpp"

namespace pappus::tools {

int max_depth() {
    const char* env = std::getenv("PAPPUS_MAX_DEPTH");
    if (!env || !*env) return 16;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0 || v > 30) throw ConfigError("PAPPUS_MAX_DEPTH must be an integer in [0, 30]");
    return int(v);
}

Backend parse_backend(const std::string& s) {
    if (s == "exact") return Backend::Exact;
    if (s == "float") return Backend::Float;
    throw ConfigError("unknown backend '" + s + "' (expected exact or float)");
}

Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    if (s == "svg") return Format::Svg;
    if (s == "obj") return Format::Obj;
    throw ConfigError("unknown format '" + s + "' (expected json, csv, svg or obj)");
}

namespace {

Rational parse_coordinate(const std::string& name, const std::string& text) {
    Rational r;
    try {
        r = parse_rational(text);
    } catch (const GeometryError&) {
        throw ConfigError("--" + name + ": cannot parse '" + text + "' as p/q, integer or decimal");
    }
    if (sgn(r) <= 0 || r >= 1) throw ConfigError("--" + name + " must lie strictly between 0 and 1");
    return r;
}

}  // namespace

Params validate(RunConfig& cfg, std::ostream& warnings) {
    Params p;
    p.xq = parse_coordinate("x", cfg.x_text);
    p.yq = parse_coordinate("y", cfg.y_text);
    p.xd = p.xq.get_d();
    p.yd = p.yq.get_d();

    const bool decimal = cfg.x_text.find('.') != std::string::npos || cfg.y_text.find('.') != std::string::npos;
    if (decimal && !cfg.backend_explicit) {
        warnings << "warning: decimal input, using the float backend (pass p/q or --backend exact to stay exact)\n";
        cfg.backend = Backend::Float;
    }
    p.exact = cfg.backend == Backend::Exact;

    if (cfg.depth < 0) throw ConfigError("--depth must be >= 0");
    if (cfg.depth > max_depth())
        throw ConfigError("--depth " + std::to_string(cfg.depth) + " exceeds the cap " + std::to_string(max_depth()) +
                          " (set PAPPUS_MAX_DEPTH to raise it)");
    if (!(cfg.tol > 0) || cfg.tol >= 1) throw ConfigError("--tol must lie in (0, 1)");
    if (cfg.grid < 2 || cfg.grid > 4000) throw ConfigError("--grid must lie in [2, 4000]");
    if (!(cfg.window > 0)) throw ConfigError("--window must be positive");
    if (cfg.samples < 0 || cfg.samples > 10000) throw ConfigError("--samples must lie in [0, 10000]");
    if (cfg.workers == 0 || cfg.workers > 256) throw ConfigError("--workers must lie in [1, 256]");
    if (!(cfg.viewport > 0)) throw ConfigError("--viewport must be positive");
    return p;
}

}  // namespace pappus::tools
