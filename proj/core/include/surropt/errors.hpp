#pragma once

#include <stdexcept>
#include <string>

namespace surropt {

// Thrown when a surrogate cannot be fitted (singular system, indefinite
// covariance, degenerate data). The optimizer catches it and falls back to
// pure exploration for that iteration.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an evaluation is requested on an exhausted budget. Signals a
// clean end of the run, not a crash; callers that loop should test the
// budget instead of relying on this.
class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

}  // namespace surropt
