#pragma once

#include <optional>
#include <span>
#include <vector>

#include "valbis/oracle.hpp"

namespace valbis {

// One value-bisection step: the level c that was probed, the oracle's answer,
// and the bracket after the step.
struct IterationRecord {
    int index;  // 1-based
    double level;
    OracleVerdict verdict;
    ValueBracket bracket_after;
};

struct SolverConfig {
    // Solve stops once the half-width of the value bracket is <= tol.
    double tol = 1e-7;
    int max_iter = 200;
    OracleConfig oracle{};
    // When set, a Reachable step whose witness looks like a stationary point
    // of f at the probed level collapses the bracket and stops early.
    bool tangency_check = false;
    double deriv_tol = 1e-6;
};

struct ExtremumReport {
    // Midpoint of the final bracket.
    double estimate;
    ValueBracket bracket;
    ValueBracket bracket0;
    int iterations;
    // Half-width of the final bracket.
    double error_bound;
    bool converged;
    // True when the tangency check fired and the bracket was collapsed.
    bool exact_extremum;
    // Abscissa of the best reachability witness seen, when any step produced
    // one.
    std::optional<double> witness;
    std::vector<IterationRecord> history;
};

// Approximates max f over the domain by bisection on the value axis.  When
// `bracket` is absent one is seeded from grid samples and an interval bound.
// Throws std::invalid_argument on malformed domain/bracket/config, and
// OracleIndeterminate when an Unknown verdict meets UnknownPolicy::Abort.
ExtremumReport maximize(const Expr& f, const Interval& domain,
                        std::optional<ValueBracket> bracket,
                        const SolverConfig& cfg);

// min f = -max(-f).  A supplied bracket is (lower bound of f, attained
// value); the report's estimate, bracket, and history levels refer to f
// itself, and witnesses are shared with the dual maximization unchanged.
ExtremumReport minimize(const Expr& f, const Interval& domain,
                        std::optional<ValueBracket> bracket,
                        const SolverConfig& cfg);

// A-priori error bound after n bisection steps from bracket b:
// (width of b) / 2^(n+1).
double error_bound(const ValueBracket& b, int n);

// Smallest n with error_bound(b, n) <= eps.
int iterations_needed(const ValueBracket& b, double eps);

struct ConvergenceDiagnostic {
    // Least-squares slope of log(w_{k+1}) against log(w_k); 1 for linear
    // convergence.
    double order_estimate;
    // Mean of w_{k+1}/w_k; 1/2 for bisection.
    double ratio_estimate;
};

// Estimates the empirical convergence order and contraction ratio from the
// bracket half-widths of a solve history.  Needs at least three positive
// widths; returns nullopt otherwise (e.g. a bracket collapsed to a point).
std::optional<ConvergenceDiagnostic> convergence_diagnostic(
    std::span<const IterationRecord> history);

// True when f looks tangent to the horizontal line y = level at `witness`:
// the central finite-difference slope is within deriv_tol of zero and both
// neighbor samples stay at or below level + deriv_tol.  Witnesses on the
// domain boundary never qualify.
bool tangency_stop(const Expr& f, double level, double witness,
                   const Interval& domain, double deriv_tol);

}  // namespace valbis
