#pragma once

#include <stdexcept>
#include <string>

namespace citrank {

// Error categories map to process exit codes in the CLI:
// usage/config -> 1, data -> 2, non-convergence -> 3.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), last_residual(residual) {}
    double last_residual;
};

}  // namespace citrank
