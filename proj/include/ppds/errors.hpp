#pragma once

#include <stdexcept>

namespace ppds {

// Base class for everything the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct NotSpd : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NotOrthonormal : Error { using Error::Error; };
struct NonFiniteIterate : Error { using Error::Error; };
struct StepsizeRegimeMismatch : Error { using Error::Error; };
struct ThetaOutOfRange : Error { using Error::Error; };
struct DegenerateOracle : Error { using Error::Error; };
struct InconsistentInstance : Error { using Error::Error; };
struct InvalidProblem : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace ppds
