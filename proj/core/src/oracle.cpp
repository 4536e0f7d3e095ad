#include "valbis/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "valbis/errors.hpp"

namespace valbis {

namespace {

void check_domain(const Interval& domain) {
    if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi) ||
        !(domain.lo < domain.hi))
        throw std::invalid_argument(
            "domain must be a finite interval with lo < hi");
}

void check_cfg(const OracleConfig& cfg) {
    if (cfg.grid_points < 2)
        throw std::invalid_argument("grid_points must be at least 2");
    if (cfg.max_depth < 1)
        throw std::invalid_argument("max_depth must be at least 1");
}

double grid_point(const Interval& d, int i, int n) {
    if (i == 0) return d.lo;
    if (i == n - 1) return d.hi;
    return d.lo + (d.hi - d.lo) * (static_cast<double>(i) / (n - 1));
}

}  // namespace

OracleVerdict decide_reachable_grid(const Expr& f, const Interval& domain,
                                    double level, const OracleConfig& cfg) {
    check_domain(domain);
    check_cfg(cfg);
    bool any_finite = false;
    for (int i = 0; i < cfg.grid_points; ++i) {
        double x = grid_point(domain, i, cfg.grid_points);
        double v = eval(f, x);
        if (!std::isfinite(v)) continue;
        any_finite = true;
        if (v >= level) return {Reach::Reachable, x, true};
    }
    if (!any_finite) return {Reach::Unknown, std::nullopt, false};
    return {Reach::Unreachable, std::nullopt, false};
}

OracleVerdict decide_reachable_certified(const Expr& f, const Interval& domain,
                                         double level, const OracleConfig& cfg) {
    check_domain(domain);
    check_cfg(cfg);
    double min_w = cfg.min_box_width > 0.0 ? cfg.min_box_width
                                           : 1e-12 * width(domain);
    struct Box {
        Interval iv;
        int depth;
    };
    std::vector<Box> stack{{domain, 0}};
    bool unresolved = false;
    while (!stack.empty()) {
        Box box = stack.back();
        stack.pop_back();
        RangeEnclosure enc = eval_interval(f, box.iv);
        if (!enc.partial && enc.bounds.hi < level) continue;
        double mid = midpoint(box.iv);
        double v = eval(f, mid);
        if (std::isfinite(v) && v >= level) return {Reach::Reachable, mid, true};
        if (box.depth >= cfg.max_depth || width(box.iv) <= min_w ||
            !(box.iv.lo < mid && mid < box.iv.hi)) {
            unresolved = true;
            continue;
        }
        stack.push_back({{mid, box.iv.hi}, box.depth + 1});
        stack.push_back({{box.iv.lo, mid}, box.depth + 1});
    }
    if (unresolved) return {Reach::Unknown, std::nullopt, false};
    return {Reach::Unreachable, std::nullopt, true};
}

OracleVerdict decide_reachable(const Expr& f, const Interval& domain,
                               double level, const OracleConfig& cfg) {
    switch (cfg.kind) {
        case OracleKind::Grid:
            return decide_reachable_grid(f, domain, level, cfg);
        case OracleKind::Certified:
            return decide_reachable_certified(f, domain, level, cfg);
        case OracleKind::Hybrid: {
            OracleVerdict v = decide_reachable_certified(f, domain, level, cfg);
            if (v.kind == Reach::Unknown &&
                cfg.unknown_policy == UnknownPolicy::TreatAsUnreachable)
                return decide_reachable_grid(f, domain, level, cfg);
            return v;
        }
    }
    throw std::invalid_argument("unknown oracle kind");
}

ValueBracket initial_bracket(const Expr& f, const Interval& domain,
                             const OracleConfig& cfg) {
    check_domain(domain);
    check_cfg(cfg);
    double best = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (int i = 0; i < cfg.grid_points; ++i) {
        double v = eval(f, grid_point(domain, i, cfg.grid_points));
        if (std::isfinite(v) && (!found || v > best)) {
            best = v;
            found = true;
        }
    }
    if (!found)
        throw EvaluationError(
            "cannot seed a bracket: no grid sample evaluates finite");
    RangeEnclosure enc = eval_interval(f, domain);
    if (enc.partial || !std::isfinite(enc.bounds.hi))
        throw EvaluationError(
            "cannot seed a bracket: no finite upper bound over the domain");
    return {std::min(best, enc.bounds.hi), enc.bounds.hi};
}

}  // namespace valbis
