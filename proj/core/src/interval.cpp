#include "valbis/interval.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace valbis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Directed rounding by ulp nudges.  One ulp covers the rounding error of a
// single correctly-rounded arithmetic operation; two cover library functions
// that are only faithfully rounded.
double up1(double v) { return std::nextafter(v, kInf); }
double dn1(double v) { return std::nextafter(v, -kInf); }
double up2(double v) { return up1(up1(v)); }
double dn2(double v) { return dn1(dn1(v)); }

RangeEnclosure entire() { return {{-kInf, kInf}, true}; }

// Seals a candidate bound pair: NaN endpoints mean the computation escaped
// every case analysis, so give up and report the whole line.
RangeEnclosure finish(double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi)) return entire();
    return {{lo, hi}, false};
}

RangeEnclosure arith1(double lo, double hi) { return finish(dn1(lo), up1(hi)); }
RangeEnclosure libm2(double lo, double hi) { return finish(dn2(lo), up2(hi)); }

RangeEnclosure add_iv(const Interval& a, const Interval& b) {
    return arith1(a.lo + b.lo, a.hi + b.hi);
}

RangeEnclosure sub_iv(const Interval& a, const Interval& b) {
    return arith1(a.lo - b.hi, a.hi - b.lo);
}

// Product of interval corners with the convention 0 * inf = 0: a zero
// endpoint means the factor can vanish, so the product's contribution at
// that corner is zero no matter how large the other factor grows.
double corner_mul(double x, double y) {
    if (x == 0.0 || y == 0.0) return 0.0;
    return x * y;
}

RangeEnclosure mul_iv(const Interval& a, const Interval& b) {
    double c1 = corner_mul(a.lo, b.lo);
    double c2 = corner_mul(a.lo, b.hi);
    double c3 = corner_mul(a.hi, b.lo);
    double c4 = corner_mul(a.hi, b.hi);
    return arith1(std::min({c1, c2, c3, c4}), std::max({c1, c2, c3, c4}));
}

RangeEnclosure div_iv(const Interval& a, const Interval& b) {
    if (b.lo <= 0.0 && 0.0 <= b.hi) return entire();
    double c1 = a.lo / b.lo;
    double c2 = a.lo / b.hi;
    double c3 = a.hi / b.lo;
    double c4 = a.hi / b.hi;
    return arith1(std::min({c1, c2, c3, c4}), std::max({c1, c2, c3, c4}));
}

// A degenerate exponent interval holding an exactly-representable integer.
std::optional<double> integer_exponent(const Interval& b) {
    if (b.lo != b.hi) return std::nullopt;
    double k = b.lo;
    if (!std::isfinite(k) || std::rint(k) != k || std::fabs(k) > 9.0e15)
        return std::nullopt;
    return k;
}

RangeEnclosure int_pow_iv(const Interval& a, double k) {
    if (k == 0.0) return {{1.0, 1.0}, false};
    if (k < 0.0) {
        RangeEnclosure p = int_pow_iv(a, -k);
        if (p.partial) return entire();
        return div_iv({1.0, 1.0}, p.bounds);
    }
    bool even = std::fmod(k, 2.0) == 0.0;
    double plo = std::pow(a.lo, k);
    double phi = std::pow(a.hi, k);
    if (!even) return libm2(plo, phi);
    if (a.lo >= 0.0) {
        double lo = a.lo == 0.0 ? 0.0 : std::max(0.0, dn2(plo));
        return finish(lo, up2(phi));
    }
    if (a.hi <= 0.0) {
        double lo = a.hi == 0.0 ? 0.0 : std::max(0.0, dn2(phi));
        return finish(lo, up2(plo));
    }
    // The box straddles zero: the even power bottoms out at exactly zero.
    return finish(0.0, up2(std::max(plo, phi)));
}

RangeEnclosure pow_iv(const Interval& a, const Interval& b) {
    if (auto k = integer_exponent(b)) return int_pow_iv(a, *k);
    // Non-integer (or undetermined) exponent: only defined for positive
    // bases, and at zero only when the exponent stays positive.
    if (a.lo < 0.0) return entire();
    if (a.lo == 0.0 && b.lo <= 0.0) return entire();
    // pow is monotone in each argument separately over such a box, so the
    // extremes sit at the corners.
    double c1 = std::pow(a.lo, b.lo);
    double c2 = std::pow(a.lo, b.hi);
    double c3 = std::pow(a.hi, b.lo);
    double c4 = std::pow(a.hi, b.hi);
    double lo = dn2(std::min({c1, c2, c3, c4}));
    double hi = up2(std::max({c1, c2, c3, c4}));
    return finish(std::max(0.0, lo), hi);
}

// Does base + k * period land inside [x.lo, x.hi] for some integer k?  The
// test is padded by a small slack so that it can only err toward reporting a
// hit, which merely widens trigonometric enclosures toward their clamps.
bool hits_periodic(double base, double period, const Interval& x) {
    double slack =
        1e-9 * (1.0 + std::max(std::fabs(x.lo), std::fabs(x.hi)));
    double k = std::ceil((x.lo - slack - base) / period);
    return base + k * period <= x.hi + slack;
}

RangeEnclosure sin_iv(const Interval& a) {
    constexpr double pi = std::numbers::pi;
    if (!(width(a) < 2.0 * pi)) return {{-1.0, 1.0}, false};
    bool hit_max = hits_periodic(pi / 2.0, 2.0 * pi, a);
    bool hit_min = hits_periodic(-pi / 2.0, 2.0 * pi, a);
    double slo = std::sin(a.lo);
    double shi = std::sin(a.hi);
    double lo = hit_min ? -1.0 : std::max(-1.0, dn2(std::min(slo, shi)));
    double hi = hit_max ? 1.0 : std::min(1.0, up2(std::max(slo, shi)));
    return finish(lo, hi);
}

RangeEnclosure cos_iv(const Interval& a) {
    constexpr double pi = std::numbers::pi;
    if (!(width(a) < 2.0 * pi)) return {{-1.0, 1.0}, false};
    bool hit_max = hits_periodic(0.0, 2.0 * pi, a);
    bool hit_min = hits_periodic(pi, 2.0 * pi, a);
    double clo = std::cos(a.lo);
    double chi = std::cos(a.hi);
    double lo = hit_min ? -1.0 : std::max(-1.0, dn2(std::min(clo, chi)));
    double hi = hit_max ? 1.0 : std::min(1.0, up2(std::max(clo, chi)));
    return finish(lo, hi);
}

RangeEnclosure tan_iv(const Interval& a) {
    constexpr double pi = std::numbers::pi;
    if (!(width(a) < pi)) return entire();
    if (hits_periodic(pi / 2.0, pi, a)) return entire();
    return libm2(std::tan(a.lo), std::tan(a.hi));
}

RangeEnclosure exp_iv(const Interval& a) {
    double lo = std::max(0.0, dn2(std::exp(a.lo)));
    double hi = up2(std::exp(a.hi));
    return finish(lo, hi);
}

RangeEnclosure log_iv(const Interval& a) {
    if (a.lo <= 0.0) return entire();
    return libm2(std::log(a.lo), std::log(a.hi));
}

RangeEnclosure sqrt_iv(const Interval& a) {
    if (a.lo < 0.0) return entire();
    double lo = a.lo == 0.0 ? 0.0 : std::max(0.0, dn2(std::sqrt(a.lo)));
    return finish(lo, up2(std::sqrt(a.hi)));
}

RangeEnclosure abs_iv(const Interval& a) {
    if (a.lo >= 0.0) return {{a.lo, a.hi}, false};
    if (a.hi <= 0.0) return {{-a.hi, -a.lo}, false};
    return {{0.0, std::max(-a.lo, a.hi)}, false};
}

RangeEnclosure neg_iv(const Interval& a) { return {{-a.hi, -a.lo}, false}; }

// --- piecewise support ---------------------------------------------------

// Closed over-approximation of the set where a condition holds.  Strict
// inequalities are widened to non-strict ones, which only adds boundary
// points.  nullopt means the condition is nowhere satisfiable.
std::optional<Interval> cond_interval(const Condition& c) {
    Interval r{-kInf, kInf};
    for (const Bound& b : c.bounds) {
        switch (b.cmp) {
            case Cmp::Lt:
            case Cmp::Le: r.hi = std::min(r.hi, b.value); break;
            case Cmp::Gt:
            case Cmp::Ge: r.lo = std::max(r.lo, b.value); break;
        }
    }
    if (r.lo > r.hi || std::isnan(r.lo) || std::isnan(r.hi)) return std::nullopt;
    return r;
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    if (r.lo > r.hi) return std::nullopt;
    return r;
}

// Closed over-approximation of set difference: removes the interior of c
// from each region but keeps its boundary points, so earlier-branch
// boundaries still contribute to later branches' enclosures (sound, since
// point evaluation picks exactly one of the overlapping values).
std::vector<Interval> subtract_all(const std::vector<Interval>& regions,
                                   const Interval& c) {
    std::vector<Interval> out;
    for (const Interval& r : regions) {
        if (c.hi < r.lo || r.hi < c.lo) {
            out.push_back(r);
            continue;
        }
        if (r.lo <= c.lo) out.push_back({r.lo, std::min(r.hi, c.lo)});
        if (c.hi <= r.hi) out.push_back({std::max(r.lo, c.hi), r.hi});
    }
    return out;
}

// --- recursive evaluation -------------------------------------------------

RangeEnclosure ev(const Expr& e, const Interval& x);

struct IntervalEvaluator {
    const Interval& x;

    RangeEnclosure operator()(const ExprNode::Constant& c) const {
        if (std::isnan(c.value)) return entire();
        return {{c.value, c.value}, false};
    }

    RangeEnclosure operator()(const ExprNode::Variable&) const {
        return {{x.lo, x.hi}, false};
    }

    RangeEnclosure operator()(const ExprNode::Unary& u) const {
        RangeEnclosure a = ev(u.operand, x);
        if (a.partial) return entire();
        switch (u.op) {
            case UnaryOp::Neg: return neg_iv(a.bounds);
            case UnaryOp::Sin: return sin_iv(a.bounds);
            case UnaryOp::Cos: return cos_iv(a.bounds);
            case UnaryOp::Tan: return tan_iv(a.bounds);
            case UnaryOp::Exp: return exp_iv(a.bounds);
            case UnaryOp::Log: return log_iv(a.bounds);
            case UnaryOp::Sqrt: return sqrt_iv(a.bounds);
            case UnaryOp::Abs: return abs_iv(a.bounds);
        }
        return entire();
    }

    RangeEnclosure operator()(const ExprNode::Binary& b) const {
        RangeEnclosure l = ev(b.lhs, x);
        if (l.partial) return entire();
        RangeEnclosure r = ev(b.rhs, x);
        if (r.partial) return entire();
        switch (b.op) {
            case BinaryOp::Add: return add_iv(l.bounds, r.bounds);
            case BinaryOp::Sub: return sub_iv(l.bounds, r.bounds);
            case BinaryOp::Mul: return mul_iv(l.bounds, r.bounds);
            case BinaryOp::Div: return div_iv(l.bounds, r.bounds);
            case BinaryOp::Pow: return pow_iv(l.bounds, r.bounds);
        }
        return entire();
    }

    RangeEnclosure operator()(const ExprNode::Piecewise& p) const {
        // First-match masking: branch i only applies where no earlier
        // condition holds, so earlier regions are subtracted before the box
        // is handed to later branches.  Without this, wide always-true-ish
        // guards would smear their values over the whole box and bounding
        // would never tighten under subdivision.
        std::vector<Interval> remaining{x};
        bool any = false;
        Interval acc{kInf, -kInf};
        auto merge = [&](const RangeEnclosure& piece) -> bool {
            if (piece.partial) return false;
            acc = any ? hull(acc, piece.bounds) : piece.bounds;
            any = true;
            return true;
        };
        for (const PiecewiseBranch& br : p.branches) {
            if (remaining.empty()) break;
            std::optional<Interval> ci = cond_interval(br.when);
            if (!ci) continue;
            for (const Interval& region : remaining) {
                std::optional<Interval> piece = intersect(region, *ci);
                if (!piece) continue;
                if (!merge(ev(br.value, *piece))) return entire();
            }
            remaining = subtract_all(remaining, *ci);
        }
        for (const Interval& region : remaining)
            if (!merge(ev(p.fallback, region))) return entire();
        if (!any) return entire();
        return {acc, false};
    }
};

RangeEnclosure ev(const Expr& e, const Interval& x) {
    return std::visit(IntervalEvaluator{x}, e.node().kind);
}

}  // namespace

double midpoint(const Interval& iv) noexcept {
    double m = iv.lo + (iv.hi - iv.lo) / 2.0;
    if (iv.lo <= m && m <= iv.hi) return m;
    m = iv.lo / 2.0 + iv.hi / 2.0;
    if (iv.lo <= m && m <= iv.hi) return m;
    return iv.lo;
}

RangeEnclosure eval_interval(const Expr& e, const Interval& x) {
    if (!(x.lo <= x.hi))
        throw std::invalid_argument("eval_interval: box must satisfy lo <= hi");
    return ev(e, x);
}

}  // namespace valbis
