#include "valbis/rootfind.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "valbis/errors.hpp"

namespace valbis {

namespace {

double finite_eval(const Expr& f, double x, const char* where) {
    double v = eval(f, x);
    if (!std::isfinite(v))
        throw EvaluationError(std::string("function value is not finite at ") +
                                  where + " " + std::to_string(x),
                              x);
    return v;
}

}  // namespace

RootResult bisect_root(const Expr& f, double a, double b, double tol,
                       int max_iter) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw std::invalid_argument("endpoints must be finite with a < b");
    if (!(tol >= 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("tol must be nonnegative and finite");
    if (max_iter < 0) throw std::invalid_argument("max_iter must be nonnegative");

    double fa = finite_eval(f, a, "endpoint");
    if (fa == 0.0) return {a, 0, 0.0, 0.0};
    double fb = finite_eval(f, b, "endpoint");
    if (fb == 0.0) return {b, 0, 0.0, 0.0};
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument(
            "endpoint values must have opposite signs");

    const double w0 = b - a;
    int n = 0;
    while (std::ldexp(w0, -(n + 1)) > tol && n < max_iter) {
        double c = a + (b - a) / 2.0;
        double fc = finite_eval(f, c, "bisection point");
        ++n;
        if (fc == 0.0) return {c, n, 0.0, 0.0};
        if ((fa > 0.0) == (fc > 0.0)) {
            a = c;
            fa = fc;
        } else {
            b = c;
        }
    }
    double root = a + (b - a) / 2.0;
    double residual = finite_eval(f, root, "the midpoint");
    return {root, n, residual, std::ldexp(w0, -(n + 1))};
}

RootResult solve_level(const Expr& f, double level, double lo_point,
                       double hi_point, double tol, int max_iter) {
    if (!std::isfinite(level))
        throw std::invalid_argument("level must be finite");
    double a = lo_point;
    double b = hi_point;
    if (!std::isfinite(a) || !std::isfinite(b) || a == b)
        throw std::invalid_argument(
            "bracketing points must be finite and distinct");
    if (a > b) std::swap(a, b);

    Expr g = Expr::binary(BinaryOp::Sub, f, Expr::constant(level));
    double ga = finite_eval(g, a, "endpoint");
    if (ga == 0.0) return {a, 0, 0.0, 0.0};
    double gb = finite_eval(g, b, "endpoint");
    if (gb == 0.0) return {b, 0, 0.0, 0.0};
    if ((ga > 0.0) == (gb > 0.0))
        throw std::invalid_argument(
            "function values at the bracketing points do not straddle the "
            "level");
    return bisect_root(g, a, b, tol, max_iter);
}

}  // namespace valbis
