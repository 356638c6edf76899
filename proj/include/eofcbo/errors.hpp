#pragma once

#include <stdexcept>
#include <string>

namespace eofcbo {

// Input fails a mathematical precondition (non-finite entries, bad range, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Matrix shapes do not line up.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// A structural matrix property (Hermitian, skew-Hermitian, unitary) is violated
// beyond tolerance.
struct StructureError : ValidationError {
    explicit StructureError(const std::string& what) : ValidationError(what) {}
};

// Eigenvalue below the allowed negativity slack of a PSD matrix.
struct NotPsdError : ValidationError {
    explicit NotPsdError(const std::string& what) : ValidationError(what) {}
};

// Hermiticity violated beyond tolerance.
struct NotHermitianError : ValidationError {
    explicit NotHermitianError(const std::string& what) : ValidationError(what) {}
};

// Trace differs from one beyond tolerance.
struct TraceError : ValidationError {
    explicit TraceError(const std::string& what) : ValidationError(what) {}
};

// Gram-Schmidt met numerically dependent columns.
struct RankDeficientError : std::runtime_error {
    explicit RankDeficientError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eofcbo
