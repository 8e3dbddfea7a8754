#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mfc/hyperbolic.hpp"

namespace mfc {

// ---------------------------------------------------------------------------
// Jet3: value and first three derivatives at a point (truncated Taylor
// arithmetic). constant -> (c,0,0,0); the variable s -> (s,1,0,0).
// ---------------------------------------------------------------------------

struct DomainError : Error {
    std::string op;
    double at;
    DomainError(std::string op_, double at_)
        : Error("domain error in '" + op_ + "' at s=" + format_double(at_)), op(std::move(op_)), at(at_) {}
};

struct Jet3 {
    double v = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;

    static constexpr Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
    static constexpr Jet3 variable(double s) { return {s, 1.0, 0.0, 0.0}; }

    friend constexpr Jet3 operator+(Jet3 x, Jet3 y) { return {x.v + y.v, x.d1 + y.d1, x.d2 + y.d2, x.d3 + y.d3}; }
    friend constexpr Jet3 operator-(Jet3 x, Jet3 y) { return {x.v - y.v, x.d1 - y.d1, x.d2 - y.d2, x.d3 - y.d3}; }
    friend constexpr Jet3 operator-(Jet3 x) { return {-x.v, -x.d1, -x.d2, -x.d3}; }
    friend constexpr Jet3 operator*(double c, Jet3 x) { return {c * x.v, c * x.d1, c * x.d2, c * x.d3}; }

    // Leibniz rule up to third order.
    friend constexpr Jet3 operator*(Jet3 x, Jet3 y) {
        return {x.v * y.v,
                x.d1 * y.v + x.v * y.d1,
                x.d2 * y.v + 2.0 * x.d1 * y.d1 + x.v * y.d2,
                x.d3 * y.v + 3.0 * x.d2 * y.d1 + 3.0 * x.d1 * y.d2 + x.v * y.d3};
    }
};

namespace detail {

// Chain rule (Faa di Bruno to order 3) for f with derivatives f0..f3 at u.v.
constexpr Jet3 compose(double f0, double f1, double f2, double f3, Jet3 u) {
    return {f0,
            f1 * u.d1,
            f2 * u.d1 * u.d1 + f1 * u.d2,
            f3 * u.d1 * u.d1 * u.d1 + 3.0 * f2 * u.d1 * u.d2 + f1 * u.d3};
}

}  // namespace detail

inline Jet3 recip(Jet3 x, double at) {
    if (x.v == 0.0) throw DomainError("divide", at);
    const double r = 1.0 / x.v;
    return detail::compose(r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r, x);
}

inline Jet3 jet_sinh(Jet3 u) { const double s = std::sinh(u.v), c = std::cosh(u.v); return detail::compose(s, c, s, c, u); }
inline Jet3 jet_cosh(Jet3 u) { const double s = std::sinh(u.v), c = std::cosh(u.v); return detail::compose(c, s, c, s, u); }
inline Jet3 jet_sin(Jet3 u)  { const double s = std::sin(u.v),  c = std::cos(u.v);  return detail::compose(s, c, -s, -c, u); }
inline Jet3 jet_cos(Jet3 u)  { const double s = std::sin(u.v),  c = std::cos(u.v);  return detail::compose(c, -s, -c, s, u); }
inline Jet3 jet_exp(Jet3 u)  { const double e = std::exp(u.v); return detail::compose(e, e, e, e, u); }

inline Jet3 jet_sqrt(Jet3 u, double at) {
    if (u.v <= 0.0) throw DomainError("sqrt", at);
    const double r = std::sqrt(u.v);
    return detail::compose(r, 0.5 / r, -0.25 / (r * u.v), 0.375 / (r * u.v * u.v), u);
}

inline Jet3 jet_pow(Jet3 base, std::int32_t n, double at) {
    if (n < 0) return recip(jet_pow(base, -n, at), at);
    Jet3 acc = Jet3::constant(1.0);
    Jet3 sq = base;
    std::uint32_t k = static_cast<std::uint32_t>(n);
    while (k != 0) {  // binary exponentiation keeps jet products balanced
        if (k & 1u) acc = acc * sq;
        k >>= 1u;
        if (k != 0) sq = sq * sq;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Expression AST over the curve parameter s.
//
// Grammar (EBNF — also documented in the README):
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' exponent)?          (right-associative)
//   primary := number | 's' | name '(' expr ')' | '(' expr ')'
//   exponent:= ['-'] integer | '(' ['-'] integer ')'
//   name    := sinh | cosh | sin | cos | exp | sqrt
//
// '^' binds tighter than unary minus, so "-s^2" parses as -(s^2).
// Exponents are restricted to integer literals.
// ---------------------------------------------------------------------------

struct ParseError : Error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& message)
        : Error("parse error at position " + std::to_string(pos) + ": " + message), position(pos) {}
};

struct UnknownFunction : ParseError {
    UnknownFunction(std::size_t pos, const std::string& name)
        : ParseError(pos, "unknown function '" + name + "'") {}
};

struct NonIntegerExponent : ParseError {
    explicit NonIntegerExponent(std::size_t pos) : ParseError(pos, "exponent must be an integer literal") {}
};

enum class ExprOp : std::uint8_t { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Sinh, Cosh, Sin, Cos, Exp, Sqrt };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// Immutable after construction; Expr copies share nodes.
struct ExprNode {
    ExprOp op;
    double value = 0.0;        // Const
    std::int32_t exponent = 0; // Pow
    ExprPtr lhs, rhs;
};

class Expr {
public:
    Expr() = default;
    explicit Expr(ExprPtr root) : root_(std::move(root)) {}

    const ExprNode& node() const { return *root_; }
    bool empty() const { return root_ == nullptr; }

    friend bool operator==(const Expr& x, const Expr& y) { return equal(x.root_.get(), y.root_.get()); }

private:
    static bool equal(const ExprNode* x, const ExprNode* y) {
        if (x == y) return true;
        if (x == nullptr || y == nullptr) return false;
        if (x->op != y->op || x->value != y->value || x->exponent != y->exponent) return false;
        return equal(x->lhs.get(), y->lhs.get()) && equal(x->rhs.get(), y->rhs.get());
    }

    ExprPtr root_;
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "empty expression");
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ < text_.size()) throw ParseError(pos_, "unexpected trailing input");
        return e;
    }

private:
    static ExprPtr make(ExprOp op, ExprPtr l = nullptr, ExprPtr r = nullptr) {
        auto n = std::make_shared<ExprNode>();
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            if (eat('+')) e = make(ExprOp::Add, e, parse_term());
            else if (eat('-')) e = make(ExprOp::Sub, e, parse_term());
            else return e;
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            if (eat('*')) e = make(ExprOp::Mul, e, parse_factor());
            else if (eat('/')) e = make(ExprOp::Div, e, parse_factor());
            else return e;
        }
    }

    ExprPtr parse_factor() {
        if (eat('-')) return make(ExprOp::Neg, parse_factor());
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (!eat('^')) return base;
        auto n = std::make_shared<ExprNode>();
        n->op = ExprOp::Pow;
        n->lhs = base;
        n->exponent = parse_exponent();
        return n;
    }

    std::int32_t parse_exponent() {
        skip_ws();
        const bool paren = eat('(');
        skip_ws();
        const std::size_t start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        std::size_t digits_start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits_start) throw NonIntegerExponent(start);
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
            throw NonIntegerExponent(start);
        std::int64_t value = 0;
        for (std::size_t i = digits_start; i < pos_; ++i) {
            value = value * 10 + (text_[i] - '0');
            if (value > 1000) throw ParseError(start, "exponent too large");
        }
        if (paren && !eat(')')) throw ParseError(pos_, "expected ')' after exponent");
        return static_cast<std::int32_t>(negative ? -value : value);
    }

    ExprPtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "expected operand");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_expr();
            if (!eat(')')) throw ParseError(pos_, "expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    ExprPtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        double value = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc{} || res.ptr != text_.data() + pos_)
            throw ParseError(start, "malformed number");
        auto n = std::make_shared<ExprNode>();
        n->op = ExprOp::Const;
        n->value = value;
        return n;
    }

    ExprPtr parse_name() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        if (name == "s") return make(ExprOp::Var);
        ExprOp op;
        if (name == "sinh") op = ExprOp::Sinh;
        else if (name == "cosh") op = ExprOp::Cosh;
        else if (name == "sin") op = ExprOp::Sin;
        else if (name == "cos") op = ExprOp::Cos;
        else if (name == "exp") op = ExprOp::Exp;
        else if (name == "sqrt") op = ExprOp::Sqrt;
        else throw UnknownFunction(start, name);
        if (!eat('(')) throw ParseError(pos_, "expected '(' after function name");
        ExprPtr arg = parse_expr();
        if (!eat(')')) throw ParseError(pos_, "expected ')'");
        return make(op, std::move(arg));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text) { return Expr(detail::Parser(text).parse()); }

inline Jet3 eval_jet(const ExprNode& n, double s) {
    switch (n.op) {
        case ExprOp::Const: return Jet3::constant(n.value);
        case ExprOp::Var: return Jet3::variable(s);
        case ExprOp::Neg: return -eval_jet(*n.lhs, s);
        case ExprOp::Add: return eval_jet(*n.lhs, s) + eval_jet(*n.rhs, s);
        case ExprOp::Sub: return eval_jet(*n.lhs, s) - eval_jet(*n.rhs, s);
        case ExprOp::Mul: return eval_jet(*n.lhs, s) * eval_jet(*n.rhs, s);
        case ExprOp::Div: return eval_jet(*n.lhs, s) * recip(eval_jet(*n.rhs, s), s);
        case ExprOp::Pow: return jet_pow(eval_jet(*n.lhs, s), n.exponent, s);
        case ExprOp::Sinh: return jet_sinh(eval_jet(*n.lhs, s));
        case ExprOp::Cosh: return jet_cosh(eval_jet(*n.lhs, s));
        case ExprOp::Sin: return jet_sin(eval_jet(*n.lhs, s));
        case ExprOp::Cos: return jet_cos(eval_jet(*n.lhs, s));
        case ExprOp::Exp: return jet_exp(eval_jet(*n.lhs, s));
        case ExprOp::Sqrt: return jet_sqrt(eval_jet(*n.lhs, s), s);
    }
    throw Error("corrupt expression node");
}

inline Jet3 eval_jet(const Expr& e, double s) { return eval_jet(e.node(), s); }
inline double eval(const Expr& e, double s) { return eval_jet(e, s).v; }

namespace detail {

inline void render_node(const ExprNode& n, std::string& out) {
    const auto paren = [&out](const ExprNode& c) {
        out += '(';
        render_node(c, out);
        out += ')';
    };
    switch (n.op) {
        case ExprOp::Const: out += format_double(n.value); return;
        case ExprOp::Var: out += 's'; return;
        case ExprOp::Neg: out += '-'; paren(*n.lhs); return;
        case ExprOp::Add: paren(*n.lhs); out += " + "; paren(*n.rhs); return;
        case ExprOp::Sub: paren(*n.lhs); out += " - "; paren(*n.rhs); return;
        case ExprOp::Mul: paren(*n.lhs); out += '*'; paren(*n.rhs); return;
        case ExprOp::Div: paren(*n.lhs); out += '/'; paren(*n.rhs); return;
        case ExprOp::Pow:
            paren(*n.lhs);
            out += '^';
            if (n.exponent < 0) {
                out += '(';
                out += std::to_string(n.exponent);
                out += ')';
            } else {
                out += std::to_string(n.exponent);
            }
            return;
        case ExprOp::Sinh: out += "sinh"; paren(*n.lhs); return;
        case ExprOp::Cosh: out += "cosh"; paren(*n.lhs); return;
        case ExprOp::Sin: out += "sin"; paren(*n.lhs); return;
        case ExprOp::Cos: out += "cos"; paren(*n.lhs); return;
        case ExprOp::Exp: out += "exp"; paren(*n.lhs); return;
        case ExprOp::Sqrt: out += "sqrt"; paren(*n.lhs); return;
    }
}

}  // namespace detail

/// Fully parenthesised rendering; render(parse(t)) re-parses to an equal tree.
inline std::string render(const Expr& e) {
    std::string out;
    detail::render_node(e.node(), out);
    return out;
}

}  // namespace mfc
