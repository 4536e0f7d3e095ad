#include "valbis/expr.hpp"

#include <cctype>
#include <cfloat>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace valbis {

bool Condition::holds(double x) const noexcept {
    for (const Bound& b : bounds) {
        bool ok = false;
        switch (b.cmp) {
            case Cmp::Lt: ok = x < b.value; break;
            case Cmp::Le: ok = x <= b.value; break;
            case Cmp::Gt: ok = x > b.value; break;
            case Cmp::Ge: ok = x >= b.value; break;
        }
        if (!ok) return false;
    }
    return true;
}

Expr Expr::constant(double value) {
    return Expr(std::make_shared<const ExprNode>(ExprNode{ExprNode::Constant{value}}));
}

Expr Expr::variable() {
    return Expr(std::make_shared<const ExprNode>(ExprNode{ExprNode::Variable{}}));
}

Expr Expr::unary(UnaryOp op, Expr operand) {
    return Expr(std::make_shared<const ExprNode>(
        ExprNode{ExprNode::Unary{op, std::move(operand)}}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    return Expr(std::make_shared<const ExprNode>(
        ExprNode{ExprNode::Binary{op, std::move(lhs), std::move(rhs)}}));
}

Expr Expr::piecewise(std::vector<PiecewiseBranch> branches, Expr fallback) {
    return Expr(std::make_shared<const ExprNode>(
        ExprNode{ExprNode::Piecewise{std::move(branches), std::move(fallback)}}));
}

Expr negate(const Expr& e) { return Expr::unary(UnaryOp::Neg, e); }

// --- lexer ---------------------------------------------------------------

namespace {

enum class Tok {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semi,
    Colon,
    Amp,
    Less,
    LessEq,
    Greater,
    GreaterEq,
    End,
};

struct Token {
    Tok kind;
    std::size_t offset;
    double num = 0.0;
    std::string_view text{};
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto isident = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < s.size() &&
             std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            double value = 0.0;
            auto res = std::from_chars(s.data() + i, s.data() + s.size(), value,
                                       std::chars_format::general);
            if (res.ec != std::errc{})
                throw ParseError(i, "a representable number");
            std::size_t len = static_cast<std::size_t>(res.ptr - (s.data() + i));
            out.push_back({Tok::Number, i, value, s.substr(i, len)});
            i += len;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i + 1;
            while (j < s.size() && isident(s[j])) ++j;
            out.push_back({Tok::Ident, i, 0.0, s.substr(i, j - i)});
            i = j;
            continue;
        }
        switch (c) {
            case '+': out.push_back({Tok::Plus, i}); ++i; continue;
            case '-': out.push_back({Tok::Minus, i}); ++i; continue;
            case '*': out.push_back({Tok::Star, i}); ++i; continue;
            case '/': out.push_back({Tok::Slash, i}); ++i; continue;
            case '^': out.push_back({Tok::Caret, i}); ++i; continue;
            case '(': out.push_back({Tok::LParen, i}); ++i; continue;
            case ')': out.push_back({Tok::RParen, i}); ++i; continue;
            case ';': out.push_back({Tok::Semi, i}); ++i; continue;
            case ':': out.push_back({Tok::Colon, i}); ++i; continue;
            case '&': out.push_back({Tok::Amp, i}); ++i; continue;
            case '<':
                if (i + 1 < s.size() && s[i + 1] == '=') {
                    out.push_back({Tok::LessEq, i});
                    i += 2;
                } else {
                    out.push_back({Tok::Less, i});
                    ++i;
                }
                continue;
            case '>':
                if (i + 1 < s.size() && s[i + 1] == '=') {
                    out.push_back({Tok::GreaterEq, i});
                    i += 2;
                } else {
                    out.push_back({Tok::Greater, i});
                    ++i;
                }
                continue;
            default:
                throw ParseError(i, "a recognized token");
        }
    }
    out.push_back({Tok::End, s.size()});
    return out;
}

// --- parser --------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    Expr run() {
        Expr e = expression();
        expect(Tok::End, "end of input");
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token advance() { return tokens_[pos_++]; }

    Token expect(Tok kind, const char* what) {
        if (peek().kind != kind) throw ParseError(peek().offset, what);
        return advance();
    }

    Expr expression() {
        Expr e = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            BinaryOp op = advance().kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
            e = Expr::binary(op, std::move(e), term());
        }
        return e;
    }

    Expr term() {
        Expr e = factor();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            BinaryOp op = advance().kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
            e = Expr::binary(op, std::move(e), factor());
        }
        return e;
    }

    Expr factor() {
        if (peek().kind == Tok::Minus) {
            advance();
            return Expr::unary(UnaryOp::Neg, factor());
        }
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (peek().kind == Tok::Caret) {
            advance();
            return Expr::binary(BinaryOp::Pow, std::move(base), factor());
        }
        return base;
    }

    Expr atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number:
                return Expr::constant(advance().num);
            case Tok::LParen: {
                advance();
                Expr e = expression();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident: {
                if (t.text == "x") {
                    advance();
                    return Expr::variable();
                }
                if (t.text == "piecewise") {
                    advance();
                    return piecewise_body();
                }
                if (auto op = function_op(t.text)) {
                    advance();
                    expect(Tok::LParen, "'('");
                    Expr arg = expression();
                    expect(Tok::RParen, "')'");
                    return Expr::unary(*op, std::move(arg));
                }
                throw ParseError(t.offset, "a function name or 'x'");
            }
            default:
                throw ParseError(t.offset, "an expression");
        }
    }

    static std::optional<UnaryOp> function_op(std::string_view name) {
        if (name == "sin") return UnaryOp::Sin;
        if (name == "cos") return UnaryOp::Cos;
        if (name == "tan") return UnaryOp::Tan;
        if (name == "exp") return UnaryOp::Exp;
        if (name == "log") return UnaryOp::Log;
        if (name == "sqrt") return UnaryOp::Sqrt;
        if (name == "abs") return UnaryOp::Abs;
        return std::nullopt;
    }

    double signed_number() {
        bool neg = false;
        if (peek().kind == Tok::Minus) {
            advance();
            neg = true;
        }
        Token t = expect(Tok::Number, "a number");
        return neg ? -t.num : t.num;
    }

    Bound bound() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && t.text == "x") {
            advance();
            Cmp cmp;
            switch (peek().kind) {
                case Tok::Less: cmp = Cmp::Lt; break;
                case Tok::LessEq: cmp = Cmp::Le; break;
                case Tok::Greater: cmp = Cmp::Gt; break;
                case Tok::GreaterEq: cmp = Cmp::Ge; break;
                default:
                    throw ParseError(peek().offset, "a comparison operator");
            }
            advance();
            return Bound{cmp, signed_number()};
        }
        if (t.kind == Tok::Number || t.kind == Tok::Minus) {
            double v = signed_number();
            Cmp cmp;
            switch (peek().kind) {
                case Tok::Less: cmp = Cmp::Gt; break;     // v <  x  ⇒  x >  v
                case Tok::LessEq: cmp = Cmp::Ge; break;   // v <= x  ⇒  x >= v
                default:
                    throw ParseError(peek().offset, "'<' or '<='");
            }
            advance();
            Token xt = expect(Tok::Ident, "'x'");
            if (xt.text != "x") throw ParseError(xt.offset, "'x'");
            return Bound{cmp, v};
        }
        throw ParseError(t.offset, "'x' or a number");
    }

    Condition condition() {
        Condition c;
        c.bounds.push_back(bound());
        while (peek().kind == Tok::Amp) {
            advance();
            c.bounds.push_back(bound());
        }
        return c;
    }

    Expr piecewise_body() {
        expect(Tok::LParen, "'('");
        std::vector<PiecewiseBranch> branches;
        while (!(peek().kind == Tok::Ident && peek().text == "else")) {
            Condition when = condition();
            expect(Tok::Colon, "':'");
            Expr value = expression();
            expect(Tok::Semi, "';'");
            branches.push_back(PiecewiseBranch{std::move(when), std::move(value)});
        }
        if (branches.empty())
            throw ParseError(peek().offset, "at least one guarded branch");
        expect(Tok::Ident, "'else'");
        expect(Tok::Colon, "':'");
        Expr fallback = expression();
        expect(Tok::RParen, "')'");
        return Expr::piecewise(std::move(branches), std::move(fallback));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

// --- evaluation ----------------------------------------------------------

namespace {

struct Evaluator {
    double x;

    double operator()(const ExprNode::Constant& c) const noexcept { return c.value; }

    double operator()(const ExprNode::Variable&) const noexcept { return x; }

    double operator()(const ExprNode::Unary& u) const noexcept {
        double v = eval(u.operand, x);
        switch (u.op) {
            case UnaryOp::Neg: return -v;
            case UnaryOp::Sin: return std::sin(v);
            case UnaryOp::Cos: return std::cos(v);
            case UnaryOp::Tan: return std::tan(v);
            case UnaryOp::Exp: return std::exp(v);
            case UnaryOp::Log: return std::log(v);
            case UnaryOp::Sqrt: return std::sqrt(v);
            case UnaryOp::Abs: return std::fabs(v);
        }
        return std::numeric_limits<double>::quiet_NaN();
    }

    double operator()(const ExprNode::Binary& b) const noexcept {
        double l = eval(b.lhs, x);
        double r = eval(b.rhs, x);
        switch (b.op) {
            case BinaryOp::Add: return l + r;
            case BinaryOp::Sub: return l - r;
            case BinaryOp::Mul: return l * r;
            case BinaryOp::Div: return l / r;
            case BinaryOp::Pow: return std::pow(l, r);
        }
        return std::numeric_limits<double>::quiet_NaN();
    }

    double operator()(const ExprNode::Piecewise& p) const noexcept {
        for (const PiecewiseBranch& br : p.branches)
            if (br.when.holds(x)) return eval(br.value, x);
        return eval(p.fallback, x);
    }
};

}  // namespace

double eval(const Expr& e, double x) noexcept {
    return std::visit(Evaluator{x}, e.node().kind);
}

// --- printing ------------------------------------------------------------

namespace {

std::string repr(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecNeg = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

int node_prec(const ExprNode& n) {
    struct Prec {
        int operator()(const ExprNode::Constant& c) const {
            return std::signbit(c.value) ? kPrecNeg : kPrecAtom;
        }
        int operator()(const ExprNode::Variable&) const { return kPrecAtom; }
        int operator()(const ExprNode::Unary& u) const {
            return u.op == UnaryOp::Neg ? kPrecNeg : kPrecAtom;
        }
        int operator()(const ExprNode::Binary& b) const {
            switch (b.op) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return kPrecAdd;
                case BinaryOp::Mul:
                case BinaryOp::Div: return kPrecMul;
                case BinaryOp::Pow: return kPrecPow;
            }
            return kPrecAtom;
        }
        int operator()(const ExprNode::Piecewise&) const { return kPrecAtom; }
    };
    return std::visit(Prec{}, n.kind);
}

const char* function_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Tan: return "tan";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Log: return "log";
        case UnaryOp::Sqrt: return "sqrt";
        case UnaryOp::Abs: return "abs";
        case UnaryOp::Neg: break;
    }
    return "";
}

void print_bound(std::string& out, const Bound& b) {
    out += 'x';
    switch (b.cmp) {
        case Cmp::Lt: out += '<'; break;
        case Cmp::Le: out += "<="; break;
        case Cmp::Gt: out += '>'; break;
        case Cmp::Ge: out += ">="; break;
    }
    out += repr(b.value);
}

void print_condition(std::string& out, const Condition& c) {
    if (c.bounds.empty()) {
        // A vacuous condition has no concrete syntax; emit one that accepts
        // every representable abscissa.
        out += "x<=";
        out += repr(DBL_MAX);
        return;
    }
    for (std::size_t i = 0; i < c.bounds.size(); ++i) {
        if (i != 0) out += " & ";
        print_bound(out, c.bounds[i]);
    }
}

void print_expr(std::string& out, const Expr& e, int min_prec);

struct Printer {
    std::string& out;

    void operator()(const ExprNode::Constant& c) const {
        if (std::signbit(c.value)) {
            out += '-';
            out += repr(-c.value);
        } else {
            out += repr(c.value);
        }
    }

    void operator()(const ExprNode::Variable&) const { out += 'x'; }

    void operator()(const ExprNode::Unary& u) const {
        if (u.op == UnaryOp::Neg) {
            out += '-';
            print_expr(out, u.operand, kPrecNeg);
            return;
        }
        out += function_name(u.op);
        out += '(';
        print_expr(out, u.operand, 0);
        out += ')';
    }

    void operator()(const ExprNode::Binary& b) const {
        switch (b.op) {
            case BinaryOp::Add:
                print_expr(out, b.lhs, kPrecAdd);
                out += '+';
                print_expr(out, b.rhs, kPrecMul);
                break;
            case BinaryOp::Sub:
                print_expr(out, b.lhs, kPrecAdd);
                out += '-';
                print_expr(out, b.rhs, kPrecMul);
                break;
            case BinaryOp::Mul:
                print_expr(out, b.lhs, kPrecMul);
                out += '*';
                print_expr(out, b.rhs, kPrecNeg);
                break;
            case BinaryOp::Div:
                print_expr(out, b.lhs, kPrecMul);
                out += '/';
                print_expr(out, b.rhs, kPrecNeg);
                break;
            case BinaryOp::Pow:
                print_expr(out, b.lhs, kPrecAtom);
                out += '^';
                print_expr(out, b.rhs, kPrecNeg);
                break;
        }
    }

    void operator()(const ExprNode::Piecewise& p) const {
        out += "piecewise(";
        for (const PiecewiseBranch& br : p.branches) {
            print_condition(out, br.when);
            out += ": ";
            print_expr(out, br.value, 0);
            out += "; ";
        }
        out += "else: ";
        print_expr(out, p.fallback, 0);
        out += ')';
    }
};

void print_expr(std::string& out, const Expr& e, int min_prec) {
    bool parens = node_prec(e.node()) < min_prec;
    if (parens) out += '(';
    std::visit(Printer{out}, e.node().kind);
    if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print_expr(out, e, 0);
    return out;
}

// --- structural comparison -----------------------------------------------

namespace {

bool bounds_equal(const Condition& a, const Condition& b) {
    if (a.bounds.size() != b.bounds.size()) return false;
    for (std::size_t i = 0; i < a.bounds.size(); ++i)
        if (a.bounds[i].cmp != b.bounds[i].cmp ||
            a.bounds[i].value != b.bounds[i].value)
            return false;
    return true;
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
    const auto& ka = a.node().kind;
    const auto& kb = b.node().kind;
    if (ka.index() != kb.index()) return false;
    if (const auto* ca = std::get_if<ExprNode::Constant>(&ka))
        return ca->value == std::get<ExprNode::Constant>(kb).value;
    if (std::holds_alternative<ExprNode::Variable>(ka)) return true;
    if (const auto* ua = std::get_if<ExprNode::Unary>(&ka)) {
        const auto& ub = std::get<ExprNode::Unary>(kb);
        return ua->op == ub.op && structurally_equal(ua->operand, ub.operand);
    }
    if (const auto* ba = std::get_if<ExprNode::Binary>(&ka)) {
        const auto& bb = std::get<ExprNode::Binary>(kb);
        return ba->op == bb.op && structurally_equal(ba->lhs, bb.lhs) &&
               structurally_equal(ba->rhs, bb.rhs);
    }
    const auto& pa = std::get<ExprNode::Piecewise>(ka);
    const auto& pb = std::get<ExprNode::Piecewise>(kb);
    if (pa.branches.size() != pb.branches.size()) return false;
    for (std::size_t i = 0; i < pa.branches.size(); ++i) {
        if (!bounds_equal(pa.branches[i].when, pb.branches[i].when)) return false;
        if (!structurally_equal(pa.branches[i].value, pb.branches[i].value))
            return false;
    }
    return structurally_equal(pa.fallback, pb.fallback);
}

}  // namespace valbis
