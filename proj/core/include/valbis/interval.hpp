#pragma once

#include <algorithm>
#include <cmath>

#include "valbis/expr.hpp"

namespace valbis {

// Closed interval [lo, hi].
struct Interval {
    double lo;
    double hi;
};

inline double width(const Interval& iv) noexcept { return iv.hi - iv.lo; }

inline bool contains(const Interval& iv, double x) noexcept {
    return iv.lo <= x && x <= iv.hi;
}

inline bool subset(const Interval& inner, const Interval& outer) noexcept {
    return outer.lo <= inner.lo && inner.hi <= outer.hi;
}

inline Interval hull(const Interval& a, const Interval& b) noexcept {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// Midpoint that never lands outside the interval, even when lo + hi would
// overflow.
double midpoint(const Interval& iv) noexcept;

// Enclosure of the range of an expression over a box.  `partial` is set when
// some part of the box may fall outside the natural domain of the expression
// (division by an interval containing zero, log/sqrt of values <= 0, a tangent
// pole, ...).  In that case `bounds` is the whole real line and no range
// conclusion can be drawn from it.
struct RangeEnclosure {
    Interval bounds;
    bool partial;
};

// Evaluates e over the box X in outward-rounded interval arithmetic: the true
// range of e on X is always contained in the result.  Throws
// std::invalid_argument when X.lo > X.hi or an endpoint is NaN.
RangeEnclosure eval_interval(const Expr& e, const Interval& x);

}  // namespace valbis
