#pragma once

// Front-end commands.  Each writes its artifact to a stream and returns a
// process exit code; main.cpp only parses flags and picks the stream.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "pappus/scalar.hpp"

namespace pappus::tools {

enum class Backend { Exact, Float };
enum class Format { Default, Json, Csv, Svg, Obj };

enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kInvalidConfig = 2,
    kDegenerate = 3,
    kInternal = 4,
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string x_text = "3/10";
    std::string y_text = "2/5";
    int depth = 3;
    double tol = 1e-9;
    Backend backend = Backend::Exact;
    bool backend_explicit = false;
    std::string out;  // empty: stdout
    Format format = Format::Default;
    bool distances = false;
    int grid = 51;  // odd, so (1/2,1/2) is a sample
    std::string suite = "all";
    double window = 3.0;
    int samples = 0;  // 0: command default
    unsigned workers = 1;
    double viewport = 4.0;
    double offset = 0.0;  // cone apex position along the axis
};

// Parsed and checked parameters.  Decimal inputs switch the backend to
// float with a warning unless --backend exact was given, in which case the
// decimal is read exactly ("0.3" is 3/10).
struct Params {
    Rational xq, yq;
    double xd = 0, yd = 0;
    bool exact = true;
};

int max_depth();  // PAPPUS_MAX_DEPTH, default 16
Params validate(RunConfig& cfg, std::ostream& warnings);

Backend parse_backend(const std::string& s);
Format parse_format(const std::string& s);

int cmd_orbit(RunConfig cfg, std::ostream& out, std::ostream& err);
int cmd_limitset(RunConfig cfg, std::ostream& out, std::ostream& err);
int cmd_pattern(RunConfig cfg, std::ostream& out, std::ostream& err);
int cmd_charvar(RunConfig cfg, std::ostream& out, std::ostream& err);
int cmd_prism(RunConfig cfg, std::ostream& out, std::ostream& err);
int cmd_cone(RunConfig cfg, std::ostream& out, std::ostream& err);
int cmd_verify(RunConfig cfg, std::ostream& out, std::ostream& err);

// The cmd_* functions throw ConfigError / GeometryError; run() maps them
// to exit codes and prints the message to err.
int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace pappus::tools
