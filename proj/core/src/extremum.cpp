#include "valbis/extremum.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "valbis/errors.hpp"

namespace valbis {

namespace {

double bracket_mid(const ValueBracket& b) {
    double c = (b.lo + b.hi) / 2.0;
    if (!std::isfinite(c)) c = b.lo + (b.hi - b.lo) / 2.0;
    return c;
}

ValueBracket flipped(const ValueBracket& b) { return {-b.hi, -b.lo}; }

}  // namespace

ExtremumReport maximize(const Expr& f, const Interval& domain,
                        std::optional<ValueBracket> bracket,
                        const SolverConfig& cfg) {
    if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi) ||
        !(domain.lo < domain.hi))
        throw std::invalid_argument(
            "domain must be a finite interval with lo < hi");
    if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol))
        throw std::invalid_argument("tol must be positive and finite");
    if (cfg.max_iter < 1)
        throw std::invalid_argument("max_iter must be at least 1");

    ValueBracket b = bracket ? *bracket : initial_bracket(f, domain, cfg.oracle);
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo <= b.hi))
        throw std::invalid_argument(
            "value bracket must be finite with lo <= hi");

    std::optional<double> witness;
    if (bracket) {
        // A caller-supplied bracket asserts that b.lo is attained; reject it
        // only when the oracle positively refutes that (Unknown is trusted).
        OracleVerdict v0 = decide_reachable(f, domain, b.lo, cfg.oracle);
        if (v0.kind == Reach::Unreachable)
            throw std::invalid_argument(
                "bracket lower level is not attained by the function");
        if (v0.witness) witness = v0.witness;
    }

    const ValueBracket b0 = b;
    int n = 0;
    bool converged = false;
    bool exact = false;
    std::vector<IterationRecord> history;

    while (true) {
        if (width(b) / 2.0 <= cfg.tol) {
            converged = true;
            break;
        }
        if (n >= cfg.max_iter) break;
        double c = bracket_mid(b);
        OracleVerdict v = decide_reachable(f, domain, c, cfg.oracle);
        if (v.kind == Reach::Unknown &&
            cfg.oracle.unknown_policy == UnknownPolicy::Abort)
            throw OracleIndeterminate(c);
        ++n;
        bool reached = v.kind == Reach::Reachable;
        if (reached) {
            b.lo = c;
            if (v.witness) witness = v.witness;
        } else {
            b.hi = c;
        }
        history.push_back({n, c, v, b});
        if (reached && cfg.tangency_check && v.witness &&
            tangency_stop(f, c, *v.witness, domain, cfg.deriv_tol)) {
            b = {c, c};
            history.back().bracket_after = b;
            exact = true;
            converged = true;
            break;
        }
    }

    ExtremumReport rep;
    rep.estimate = bracket_mid(b);
    rep.bracket = b;
    rep.bracket0 = b0;
    rep.iterations = n;
    rep.error_bound = width(b) / 2.0;
    rep.converged = converged;
    rep.exact_extremum = exact;
    rep.witness = witness;
    rep.history = std::move(history);
    return rep;
}

ExtremumReport minimize(const Expr& f, const Interval& domain,
                        std::optional<ValueBracket> bracket,
                        const SolverConfig& cfg) {
    std::optional<ValueBracket> dual;
    if (bracket) dual = flipped(*bracket);
    ExtremumReport rep = maximize(negate(f), domain, dual, cfg);
    rep.estimate = -rep.estimate;
    rep.bracket = flipped(rep.bracket);
    rep.bracket0 = flipped(rep.bracket0);
    for (IterationRecord& rec : rep.history) {
        rec.level = -rec.level;
        rec.bracket_after = flipped(rec.bracket_after);
    }
    return rep;
}

double error_bound(const ValueBracket& b, int n) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    return std::ldexp(width(b), -(n + 1));
}

int iterations_needed(const ValueBracket& b, double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw std::invalid_argument("eps must be positive and finite");
    double w = width(b);
    if (!(w > 0.0)) return 0;
    if (!std::isfinite(w))
        throw std::invalid_argument("bracket width must be finite");
    if (std::ldexp(w, -1) <= eps) return 0;
    int n = static_cast<int>(std::ceil(std::log2(w / eps))) - 1;
    if (n < 0) n = 0;
    while (n > 0 && std::ldexp(w, -n) <= eps) --n;
    while (std::ldexp(w, -(n + 1)) > eps) ++n;
    return n;
}

std::optional<ConvergenceDiagnostic> convergence_diagnostic(
    std::span<const IterationRecord> history) {
    std::vector<double> hw;
    for (const IterationRecord& rec : history) {
        double w = width(rec.bracket_after) / 2.0;
        if (!(w > 0.0) || !std::isfinite(w)) break;
        hw.push_back(w);
    }
    if (hw.size() < 3) return std::nullopt;

    double rsum = 0.0;
    for (std::size_t i = 1; i < hw.size(); ++i) rsum += hw[i] / hw[i - 1];
    double ratio = rsum / static_cast<double>(hw.size() - 1);

    // Least-squares fit of log w_{k+1} = order * log w_k + const.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    auto m = static_cast<double>(hw.size() - 1);
    for (std::size_t i = 1; i < hw.size(); ++i) {
        double xi = std::log(hw[i - 1]);
        double yi = std::log(hw[i]);
        sx += xi;
        sy += yi;
        sxx += xi * xi;
        sxy += xi * yi;
    }
    double denom = m * sxx - sx * sx;
    if (!(denom > 1e-12 * std::max(1.0, m * sxx))) return std::nullopt;
    double order = (m * sxy - sx * sy) / denom;
    return ConvergenceDiagnostic{order, ratio};
}

bool tangency_stop(const Expr& f, double level, double witness,
                   const Interval& domain, double deriv_tol) {
    double h = std::sqrt(DBL_EPSILON) * std::max(1.0, std::fabs(witness));
    if (!(witness - h > domain.lo) || !(witness + h < domain.hi)) return false;
    double fp = eval(f, witness + h);
    double fm = eval(f, witness - h);
    if (!std::isfinite(fp) || !std::isfinite(fm)) return false;
    double slope = (fp - fm) / (2.0 * h);
    return std::fabs(slope) <= deriv_tol && fp <= level + deriv_tol &&
           fm <= level + deriv_tol;
}

}  // namespace valbis
