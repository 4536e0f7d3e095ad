#pragma once

#include <random>
#include <vector>

#include "valbis/expr.hpp"

namespace testgen {

// Random expression trees restricted to shapes the text grammar can produce:
// literals are non-negative (negative values appear as a negation node, the
// way the parser builds them) and piecewise guards use x-relative bounds.
class ExprGen {
public:
    explicit ExprGen(unsigned seed) : rng_(seed) {}

    valbis::Expr tree(int depth) {
        if (depth <= 0) return leaf();
        switch (pick(0, 9)) {
            case 0:
            case 1:
                return leaf();
            case 2:
                return valbis::Expr::unary(valbis::UnaryOp::Neg, tree(depth - 1));
            case 3:
            case 4:
                return valbis::Expr::unary(function(), tree(depth - 1));
            case 5:
                return piecewise(depth - 1);
            default:
                return valbis::Expr::binary(binary_op(), tree(depth - 1),
                                            tree(depth - 1));
        }
    }

    double point() { return real(-3.0, 3.0); }

private:
    valbis::Expr leaf() {
        if (pick(0, 1) == 0) return valbis::Expr::variable();
        return valbis::Expr::constant(real(0.0, 5.0));
    }

    valbis::UnaryOp function() {
        switch (pick(0, 6)) {
            case 0: return valbis::UnaryOp::Sin;
            case 1: return valbis::UnaryOp::Cos;
            case 2: return valbis::UnaryOp::Tan;
            case 3: return valbis::UnaryOp::Exp;
            case 4: return valbis::UnaryOp::Log;
            case 5: return valbis::UnaryOp::Sqrt;
            default: return valbis::UnaryOp::Abs;
        }
    }

    valbis::BinaryOp binary_op() {
        switch (pick(0, 4)) {
            case 0: return valbis::BinaryOp::Add;
            case 1: return valbis::BinaryOp::Sub;
            case 2: return valbis::BinaryOp::Mul;
            case 3: return valbis::BinaryOp::Div;
            default: return valbis::BinaryOp::Pow;
        }
    }

    valbis::Expr piecewise(int depth) {
        std::vector<valbis::PiecewiseBranch> branches;
        int count = pick(1, 2);
        for (int i = 0; i < count; ++i) {
            valbis::Condition when;
            int bounds = pick(1, 2);
            for (int j = 0; j < bounds; ++j) {
                valbis::Cmp cmp;
                switch (pick(0, 3)) {
                    case 0: cmp = valbis::Cmp::Lt; break;
                    case 1: cmp = valbis::Cmp::Le; break;
                    case 2: cmp = valbis::Cmp::Gt; break;
                    default: cmp = valbis::Cmp::Ge; break;
                }
                when.bounds.push_back({cmp, real(-3.0, 3.0)});
            }
            branches.push_back({std::move(when), tree(depth)});
        }
        return valbis::Expr::piecewise(std::move(branches), tree(depth));
    }

    int pick(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

    double real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    std::mt19937 rng_;
};

// Dense polynomial c0 + c1 x + ... in Horner form.
inline valbis::Expr poly_expr(const std::vector<double>& coefs) {
    valbis::Expr x = valbis::Expr::variable();
    valbis::Expr acc = valbis::Expr::constant(coefs.back());
    for (auto it = coefs.rbegin() + 1; it != coefs.rend(); ++it)
        acc = valbis::Expr::binary(
            valbis::BinaryOp::Add, valbis::Expr::constant(*it),
            valbis::Expr::binary(valbis::BinaryOp::Mul, x, acc));
    return acc;
}

// Reference evaluation of the same polynomial without going through Expr.
inline double poly_eval(const std::vector<double>& coefs, double x) {
    double acc = coefs.back();
    for (auto it = coefs.rbegin() + 1; it != coefs.rend(); ++it)
        acc = *it + x * acc;
    return acc;
}

}  // namespace testgen
