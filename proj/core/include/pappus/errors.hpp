#pragma once

#include <stdexcept>
#include <string>

namespace pappus {

enum class ErrorCode {
    CoincidentPoints,
    CoincidentLines,
    NotCollinear,
    DegenerateQuadruple,
    DegenerateFlags,
    OutOfRange,
    DegenerateBox,
    NumericalFailure,
    SingularMap,
    NonElliptic,
    CollinearVertices,
    ZeroDirection,
    FixedPointOffFlat,
    DegenerateTriple,
    UnityTripleProduct,
    NoFixedPointInFlat,
    PointOffFlat,
    DiagonalLocus,
    ConsistencyFailure,
};

const char* to_string(ErrorCode code) noexcept;

class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace pappus
