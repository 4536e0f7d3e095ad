#pragma once

#include <optional>

#include "valbis/interval.hpp"

namespace valbis {

// Bracket on the value axis: lo is a level known to be attained (or a lower
// bound of the maximum), hi is an upper bound of the maximum.
struct ValueBracket {
    double lo;
    double hi;
};

inline double width(const ValueBracket& b) noexcept { return b.hi - b.lo; }

enum class Reach { Reachable, Unreachable, Unknown };

struct OracleVerdict {
    Reach kind;
    // A point x with f(x) >= level, when one was found.
    std::optional<double> witness;
    // True when the verdict is backed by a proof (an evaluated point for
    // Reachable, an interval-arithmetic bound for Unreachable) rather than a
    // finite sample that merely failed to find anything.
    bool certified;
};

// What the solver should do when the oracle answers Unknown.
enum class UnknownPolicy { TreatAsUnreachable, Abort };

enum class OracleKind { Grid, Certified, Hybrid };

struct OracleConfig {
    // Samples used by the grid oracle (endpoints included).
    int grid_points = 1025;
    // Branch-and-bound depth limit for the certified oracle.
    int max_depth = 40;
    // Boxes narrower than this are not split further; values <= 0 select the
    // default of 1e-12 times the domain width.
    double min_box_width = 0.0;
    UnknownPolicy unknown_policy = UnknownPolicy::TreatAsUnreachable;
    OracleKind kind = OracleKind::Hybrid;
};

// Heuristic oracle: samples an even grid.  Reachable verdicts carry the
// leftmost witness and are certified (the sample is a proof); Unreachable
// verdicts are not certified.  Unknown when no sample evaluates finite.
OracleVerdict decide_reachable_grid(const Expr& f, const Interval& domain,
                                    double level, const OracleConfig& cfg);

// Certified oracle: interval branch-and-bound.  Discards boxes whose range
// enclosure proves f < level, probes box midpoints for witnesses, and answers
// Unknown when the depth or width budget is exhausted with undecided boxes
// remaining.  Reachable and Unreachable verdicts are both certified.
OracleVerdict decide_reachable_certified(const Expr& f, const Interval& domain,
                                         double level, const OracleConfig& cfg);

// Dispatches on cfg.kind.  Hybrid runs the certified oracle and, when it
// answers Unknown and the policy is TreatAsUnreachable, falls back to the
// grid oracle's (uncertified) sampling answer.
OracleVerdict decide_reachable(const Expr& f, const Interval& domain,
                               double level, const OracleConfig& cfg);

// Seeds a value bracket for maximization: lo is the best finite grid sample
// (a level known attained), hi an outward-rounded interval upper bound of f
// over the domain.  Throws EvaluationError when no finite sample exists or
// no finite upper bound can be established.
ValueBracket initial_bracket(const Expr& f, const Interval& domain,
                             const OracleConfig& cfg);

}  // namespace valbis
