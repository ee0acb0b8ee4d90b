#pragma once

#include <stdexcept>
#include <string>

namespace chq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParams : Error { using Error::Error; };
struct RegimeUnsupported : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct ZeroField : Error { using Error::Error; };
struct ScaleOutOfRange : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct SolverDiverged : Error { using Error::Error; };
struct BracketFailure : Error { using Error::Error; };
struct BranchUnavailable : Error { using Error::Error; };
struct LeftBasin : Error { using Error::Error; };
struct MaxIterExceeded : Error { using Error::Error; };

} // namespace chq
