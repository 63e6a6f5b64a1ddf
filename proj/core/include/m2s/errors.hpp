#pragma once

#include <stdexcept>
#include <string>

namespace m2s {

// Base for all library-raised failures so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid arguments or violated preconditions (infeasible m, length mismatch, ...).
struct InvalidArgument : Error {
    using Error::Error;
};

// Exhaustive enumeration or dense diagonalization requested beyond the n budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

// Instance text that fails validation on parse.
struct ParseError : Error {
    using Error::Error;
};

// Integrator aborted: norm drift above the hard bound.
struct NormDriftError : Error {
    using Error::Error;
};

// Integrator aborted: accepted-step budget exhausted.
struct StepLimitError : Error {
    using Error::Error;
};

// File-level problems in datasets, manifests, or result files.
struct DataError : Error {
    using Error::Error;
};

}  // namespace m2s
