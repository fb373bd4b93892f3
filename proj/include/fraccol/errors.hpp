#pragma once

#include <stdexcept>
#include <string>

namespace fraccol {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration value (maps to CLI exit code 2).
struct DomainError : Error {
    using Error::Error;
};

/// A pivot fell below the singularity threshold during LU factorization.
struct SingularMatrixError : Error {
    SingularMatrixError(const std::string& what, int pivot) : Error(what), pivot_index(pivot) {}
    int pivot_index;
};

/// An iteration (QR sweep, fixed point, quadrature refinement) hit its cap.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, int where) : Error(what), index(where) {}
    int index;
};

/// The solvability certificate failed (maps to CLI exit code 1).
struct WellPosednessError : Error {
    using Error::Error;
};

}  // namespace fraccol
