#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace valbis {

enum class UnaryOp { Neg, Sin, Cos, Tan, Exp, Log, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

// Comparison operator in a piecewise guard, always read as "x <op> value".
enum class Cmp { Lt, Le, Gt, Ge };

// One normalized inequality on the variable: "x cmp value".
struct Bound {
    Cmp cmp;
    double value;
};

// Conjunction of bounds.  An empty bound list is always true.
struct Condition {
    std::vector<Bound> bounds;

    bool holds(double x) const noexcept;
};

struct ExprNode;
struct PiecewiseBranch;

// Immutable expression handle.  Cheap to copy; sub-expressions are shared.
class Expr {
public:
    static Expr constant(double value);
    static Expr variable();
    static Expr unary(UnaryOp op, Expr operand);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
    static Expr piecewise(std::vector<PiecewiseBranch> branches, Expr fallback);

    const ExprNode& node() const noexcept { return *node_; }

private:
    explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

    std::shared_ptr<const ExprNode> node_;
};

// One guarded branch of a piecewise expression.  Branches are evaluated in
// order; the first condition that holds selects its value expression.
struct PiecewiseBranch {
    Condition when;
    Expr value;
};

struct ExprNode {
    struct Constant {
        double value;
    };
    struct Variable {};
    struct Unary {
        UnaryOp op;
        Expr operand;
    };
    struct Binary {
        BinaryOp op;
        Expr lhs;
        Expr rhs;
    };
    struct Piecewise {
        std::vector<PiecewiseBranch> branches;
        Expr fallback;
    };

    std::variant<Constant, Variable, Unary, Binary, Piecewise> kind;
};

// Reported on malformed input, with the byte offset of the failure and a
// short description of what the parser expected there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::string expected)
        : std::runtime_error("syntax error at offset " + std::to_string(offset) +
                             ": expected " + expected),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

// Parses the expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?            (right associative)
//   atom   := NUMBER | 'x' | FUNC '(' expr ')' | '(' expr ')' | piecewise
//   FUNC   := sin | cos | tan | exp | log | sqrt | abs
//   piecewise := 'piecewise' '(' (cond ':' expr ';')+ 'else' ':' expr ')'
//   cond   := bound ('&' bound)*
//   bound  := 'x' CMPOP NUMBER | NUMBER ('<'|'<=') 'x'
Expr parse(std::string_view text);

// Point evaluation.  Out-of-domain arguments follow IEEE semantics and
// produce NaN or infinities rather than throwing.
double eval(const Expr& e, double x) noexcept;

// Returns an expression computing -e (the negation is a wrapper node, the
// original tree is shared, not copied).
Expr negate(const Expr& e);

// Round-trippable textual form: parse(to_string(e)) is structurally equal
// to e.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

}  // namespace valbis
