#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pappus_tools/commands.hpp"

using namespace pappus::tools;

namespace {

struct Flags {
    RunConfig cfg;
    std::string backend, format;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--x", f.cfg.x_text, "box invariant x in (0,1): p/q, integer or decimal")->capture_default_str();
    sub->add_option("--y", f.cfg.y_text, "box invariant y in (0,1)")->capture_default_str();
    sub->add_option("--depth", f.cfg.depth, "word length bound")->capture_default_str();
    sub->add_option("--tol", f.cfg.tol, "float tolerance")->capture_default_str();
    sub->add_option("--backend", f.backend, "exact or float");
    sub->add_option("--out,-o", f.cfg.out, "output file (default stdout)");
    sub->add_option("--format", f.format, "json, csv, svg or obj (per command)");
    sub->add_option("--workers", f.cfg.workers, "threads for enumeration")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pappus marked boxes, Farey patterns and prisms"};
    app.require_subcommand(1);
    Flags f;

    auto* orbit = app.add_subcommand("orbit", "orbit of a marked box under words in t, b (CSV or JSON)");
    auto* limitset = app.add_subcommand("limitset", "limit-set flags in the affine chart (SVG or CSV)");
    auto* pattern = app.add_subcommand("pattern", "Farey pattern geodesics (JSON)");
    auto* charvar = app.add_subcommand("charvar", "triple invariant on a grid over (0,1)^2 (CSV)");
    auto* prism = app.add_subcommand("prism", "prism and bending report (JSON)");
    auto* cone = app.add_subcommand("cone", "geodesic cone samples (OBJ-like text)");
    auto* verify = app.add_subcommand("verify", "randomized verification suites (JSON report)");
    for (auto* sub : {orbit, limitset, pattern, charvar, prism, cone, verify}) add_common(sub, f);

    limitset->add_option("--viewport", f.cfg.viewport, "chart half-width")->capture_default_str();
    pattern->add_flag("--distances", f.cfg.distances, "add pairwise minimum distances");
    pattern->add_option("--window", f.cfg.window, "parameter window for distance searches")->capture_default_str();
    pattern->add_option("--samples", f.cfg.samples, "grid samples per axis (default 9 geodesics, 5 flats)");
    charvar->add_option("--grid", f.cfg.grid, "samples per axis")->capture_default_str();
    cone->add_option("--offset", f.cfg.offset, "apex distance from the prism center along its axis")->capture_default_str();
    cone->add_option("--samples", f.cfg.samples, "boundary samples per geodesic (default 8)");
    cone->add_option("--window", f.cfg.window, "parameter window on each geodesic")->capture_default_str();
    verify->add_option("--suite", f.cfg.suite, "all, relations, duality, metric, pattern or prism")->capture_default_str();
    verify->add_option("--samples", f.cfg.samples, "trials per randomized suite (default per suite)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInvalidConfig;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (!f.backend.empty()) {
            f.cfg.backend = parse_backend(f.backend);
            f.cfg.backend_explicit = true;
        }
        if (!f.format.empty()) f.cfg.format = parse_format(f.format);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidConfig;
    }

    if (f.cfg.out.empty()) return run(command, f.cfg, std::cout, std::cerr);

    // Buffer so a failed run leaves no partial file behind.
    std::ostringstream buffer;
    int code = run(command, f.cfg, buffer, std::cerr);
    if (code == kOk || code == kVerifyFailed) {
        std::ofstream file(f.cfg.out, std::ios::binary);
        if (!file || !(file << buffer.str()) || !file.flush()) {
            std::cerr << "error: cannot write " << f.cfg.out << '\n';
            return kInvalidConfig;
        }
    }
    return code;
}
