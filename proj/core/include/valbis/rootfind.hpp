#pragma once

#include "valbis/expr.hpp"

namespace valbis {

struct RootResult {
    double root;
    int iterations;
    // f evaluated at the returned root.
    double residual;
    // A-priori enclosure half-width: (b - a) / 2^(n+1).
    double bound;
};

// Classical bisection for f(x) = 0 on [a, b].  Requires finite endpoint
// values of opposite sign (an exact zero at an endpoint returns immediately);
// throws std::invalid_argument otherwise, and EvaluationError when f turns
// non-finite at a probed point.  Stops when the half-width enclosure bound
// drops to tol or after max_iter steps.
RootResult bisect_root(const Expr& f, double a, double b, double tol,
                       int max_iter = 200);

// Solves f(x) = level between two abscissae whose values straddle the level,
// by bisection on g = f - level.  The points may be given in either order.
RootResult solve_level(const Expr& f, double level, double lo_point,
                       double hi_point, double tol, int max_iter = 200);

}  // namespace valbis
