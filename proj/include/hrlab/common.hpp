#pragma once

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hrlab {

using cplx = std::complex<double>;

// Thrown when two operands live on different C^n or have mismatched shapes.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an operation requires a specific bidegree.
struct DegreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a reference form that must be Kahler (positive definite) is not.
struct NotKahlerError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown for out-of-range integer parameters (k, m, steps, ...).
struct RangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when instance data violates the theorem hypotheses or file schemas.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Global relative threshold separating "positive"/"nonzero" from noise.
// Rank decisions, signature counting and verdict margins all share it.
// HRLAB_TOL in the environment overrides the 1e-10 default for the CLI.
inline double default_tolerance() {
    static const double tol = [] {
        if (const char* env = std::getenv("HRLAB_TOL")) {
            char* end = nullptr;
            const double v = std::strtod(env, &end);
            if (end != env && v > 0.0) return v;
        }
        return 1e-10;
    }();
    return tol;
}

}  // namespace hrlab
