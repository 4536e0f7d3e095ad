#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace valbis {

// Thrown when a function evaluation produces a non-finite value at a point
// where a finite one is required (e.g. the endpoints handed to the root
// finder, or every sample probed while seeding an initial bracket).
class EvaluationError : public std::runtime_error {
public:
    explicit EvaluationError(const std::string& what_arg,
                             double at = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(what_arg), at_(at) {}

    // The abscissa at which evaluation failed, NaN when not applicable.
    double at() const noexcept { return at_; }

private:
    double at_;
};

// Thrown when the reachability oracle cannot decide a level query and the
// caller asked for indeterminate answers to abort the solve.
class OracleIndeterminate : public std::runtime_error {
public:
    explicit OracleIndeterminate(double level)
        : std::runtime_error("oracle could not decide level " + std::to_string(level)),
          level_(level) {}

    double level() const noexcept { return level_; }

private:
    double level_;
};

}  // namespace valbis
