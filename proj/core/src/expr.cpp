#include "helicity/expr.hpp"

#include "helicity/errors.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>

namespace helicity {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidResolution: return "InvalidResolution";
        case ErrorCode::ManifoldMismatch: return "ManifoldMismatch";
        case ErrorCode::DegreeOverflow: return "DegreeOverflow";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorCode::NotZonal: return "NotZonal";
        case ErrorCode::NotExact: return "NotExact";
        case ErrorCode::NotBasic: return "NotBasic";
        case ErrorCode::ChartDegeneracy: return "ChartDegeneracy";
        case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
        case ErrorCode::NotCompactlySupported: return "NotCompactlySupported";
        case ErrorCode::NotNullHomologous: return "NotNullHomologous";
        case ErrorCode::ResonantDivisor: return "ResonantDivisor";
        case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorCode::InsufficientPairs: return "InsufficientPairs";
        case ErrorCode::NotFlat: return "NotFlat";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

// ---------------------------------------------------------------------------
// InterpTable

InterpTable::InterpTable(std::string label, double x_min, double x_max,
                         std::vector<double> values, std::vector<double> derivs)
    : label_(std::move(label)), x_min_(x_min), x_max_(x_max),
      values_(std::move(values)), derivs_(std::move(derivs)) {
    assert(values_.size() == derivs_.size());
    assert(values_.size() >= 2);
    assert(x_max_ > x_min_);
    step_ = (x_max_ - x_min_) / static_cast<double>(values_.size() - 1);
}

double InterpTable::eval(double x, int deriv_order) const {
    if (deriv_order >= 4) return 0.0;
    const double xc = std::clamp(x, x_min_, x_max_);
    auto cell = static_cast<std::size_t>((xc - x_min_) / step_);
    if (cell >= values_.size() - 1) cell = values_.size() - 2;
    const double u = (xc - (x_min_ + static_cast<double>(cell) * step_)) / step_;
    const double v0 = values_[cell], v1 = values_[cell + 1];
    const double m0 = derivs_[cell] * step_, m1 = derivs_[cell + 1] * step_;
    // Cubic Hermite basis and its u-derivatives; each x-derivative divides by step.
    switch (deriv_order) {
        case 0:
            return v0 * (2 * u * u * u - 3 * u * u + 1) + m0 * (u * u * u - 2 * u * u + u) +
                   v1 * (-2 * u * u * u + 3 * u * u) + m1 * (u * u * u - u * u);
        case 1:
            return (v0 * (6 * u * u - 6 * u) + m0 * (3 * u * u - 4 * u + 1) +
                    v1 * (-6 * u * u + 6 * u) + m1 * (3 * u * u - 2 * u)) /
                   step_;
        case 2:
            return (v0 * (12 * u - 6) + m0 * (6 * u - 4) + v1 * (-12 * u + 6) + m1 * (6 * u - 2)) /
                   (step_ * step_);
        default:
            return (v0 * 12 + m0 * 6 - v1 * 12 + m1 * 6) / (step_ * step_ * step_);
    }
}

// ---------------------------------------------------------------------------
// EvalEnv

EvalEnv::EvalEnv(std::initializer_list<std::pair<std::string, double>> init) {
    for (const auto& [name, value] : init) set(name, value);
}

void EvalEnv::set(std::string_view name, double value) {
    for (auto& [key, slot] : bindings_) {
        if (key == name) {
            slot = value;
            return;
        }
    }
    bindings_.emplace_back(std::string(name), value);
}

const double* EvalEnv::find(std::string_view name) const {
    for (const auto& [key, slot] : bindings_) {
        if (key == name) return &slot;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// AST

struct ExprNode {
    enum class Kind { Number, Var, Pi, Neg, Binary, Apply, Interp };

    Kind kind;
    double number = 0.0;
    std::string name;
    BinOp op = BinOp::Add;
    Func func = Func::Sin;
    int order = 0; // derivative order for Bump and Interp nodes
    std::shared_ptr<const InterpTable> table;
    ExprNodePtr a, b;
};

namespace {

using Kind = ExprNode::Kind;

ExprNodePtr make_node(ExprNode node) { return std::make_shared<const ExprNode>(std::move(node)); }

ExprNodePtr make_number(double v) {
    if (v < 0.0 || (v == 0.0 && std::signbit(v))) {
        ExprNode neg;
        neg.kind = Kind::Neg;
        neg.a = make_number(-v);
        return make_node(std::move(neg));
    }
    ExprNode n;
    n.kind = Kind::Number;
    n.number = v;
    return make_node(std::move(n));
}

bool node_is_number(const ExprNodePtr& n, double v) {
    return n->kind == Kind::Number && n->number == v;
}

// Coefficients of s^j in the polynomial P_k with bump^(k)(s) = bump(s) * P_k(s) / (1-s^2)^(2k).
// P_{k+1} = P_k' (1-s^2)^2 + 4 k s (1-s^2) P_k - 2 s P_k.
const std::vector<double>& bump_prefactor_poly(int k) {
    static std::vector<std::vector<double>> cache{{1.0}};
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    while (static_cast<int>(cache.size()) <= k) {
        const int j = static_cast<int>(cache.size()) - 1;
        const auto& p = cache.back();
        std::vector<double> next(p.size() + 4, 0.0);
        auto add = [&next](std::size_t degree, double c) {
            if (degree >= next.size()) next.resize(degree + 1, 0.0);
            next[degree] += c;
        };
        for (std::size_t d = 0; d < p.size(); ++d) {
            const double c = p[d];
            if (d >= 1) { // derivative term times (1 - s^2)^2 = 1 - 2 s^2 + s^4
                const double dc = c * static_cast<double>(d);
                add(d - 1, dc);
                add(d + 1, -2.0 * dc);
                add(d + 3, dc);
            }
            add(d + 1, 4.0 * j * c); // 4 k s (1-s^2) P_k
            add(d + 3, -4.0 * j * c);
            add(d + 1, -2.0 * c); // -2 s P_k
        }
        while (next.size() > 1 && next.back() == 0.0) next.pop_back();
        cache.push_back(std::move(next));
    }
    return cache[static_cast<std::size_t>(k)];
}

double eval_poly(const std::vector<double>& coeffs, double s) {
    double acc = 0.0;
    for (std::size_t d = coeffs.size(); d-- > 0;) acc = acc * s + coeffs[d];
    return acc;
}

double eval_bump(double s, int order) {
    if (std::abs(s) >= 1.0) return 0.0;
    const double u = 1.0 - s * s;
    const double base = std::exp(1.0 - 1.0 / u);
    if (order == 0) return base;
    if (base == 0.0) return 0.0;
    const double pref = eval_poly(bump_prefactor_poly(order), s);
    return base * pref / std::pow(u, 2 * order);
}

const char* func_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Tan: return "tan";
        case Func::Exp: return "exp";
        case Func::Log: return "log";
        case Func::Sqrt: return "sqrt";
        case Func::Bump: return "bump";
    }
    return "?";
}

std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

} // namespace

// ---------------------------------------------------------------------------
// Expr construction with local simplification

Expr::Expr() : node_(make_number(0.0)) {}
Expr::Expr(double value) : node_(make_number(value)) {}
Expr::Expr(int value) : node_(make_number(static_cast<double>(value))) {}

Expr Expr::number(double value) { return Expr(make_number(value)); }

Expr Expr::variable(std::string name) {
    ExprNode n;
    n.kind = Kind::Var;
    n.name = std::move(name);
    return Expr(make_node(std::move(n)));
}

Expr Expr::pi() {
    ExprNode n;
    n.kind = Kind::Pi;
    return Expr(make_node(std::move(n)));
}

Expr Expr::apply(Func f, Expr arg) {
    ExprNode n;
    n.kind = Kind::Apply;
    n.func = f;
    n.a = arg.node_;
    return Expr(make_node(std::move(n)));
}

Expr Expr::interp(std::shared_ptr<const InterpTable> table, Expr arg) {
    ExprNode n;
    n.kind = Kind::Interp;
    n.table = std::move(table);
    n.a = arg.node_;
    return Expr(make_node(std::move(n)));
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.node_->kind == Kind::Number && b.node_->kind == Kind::Number)
        return Expr::number(a.node_->number + b.node_->number);
    ExprNode n;
    n.kind = Kind::Binary;
    n.op = BinOp::Add;
    n.a = a.node_;
    n.b = b.node_;
    return Expr(make_node(std::move(n)));
}

Expr operator-(const Expr& a, const Expr& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    if (a.node_ == b.node_) return Expr();
    if (a.node_->kind == Kind::Number && b.node_->kind == Kind::Number)
        return Expr::number(a.node_->number - b.node_->number);
    ExprNode n;
    n.kind = Kind::Binary;
    n.op = BinOp::Sub;
    n.a = a.node_;
    n.b = b.node_;
    return Expr(make_node(std::move(n)));
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (node_is_number(a.node_, 1.0)) return b;
    if (node_is_number(b.node_, 1.0)) return a;
    if (a.node_->kind == Kind::Number && b.node_->kind == Kind::Number)
        return Expr::number(a.node_->number * b.node_->number);
    ExprNode n;
    n.kind = Kind::Binary;
    n.op = BinOp::Mul;
    n.a = a.node_;
    n.b = b.node_;
    return Expr(make_node(std::move(n)));
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.is_zero()) return Expr();
    if (node_is_number(b.node_, 1.0)) return a;
    ExprNode n;
    n.kind = Kind::Binary;
    n.op = BinOp::Div;
    n.a = a.node_;
    n.b = b.node_;
    return Expr(make_node(std::move(n)));
}

Expr operator-(const Expr& a) {
    if (a.node_->kind == Kind::Number) return Expr::number(-a.node_->number);
    if (a.node_->kind == Kind::Neg) return Expr(a.node_->a);
    ExprNode n;
    n.kind = Kind::Neg;
    n.a = a.node_;
    return Expr(make_node(std::move(n)));
}

Expr pow(const Expr& base, const Expr& exponent) {
    if (exponent.is_zero()) return Expr(1.0);
    if (node_is_number(exponent.node_, 1.0)) return base;
    ExprNode n;
    n.kind = Kind::Binary;
    n.op = BinOp::Pow;
    n.a = base.node_;
    n.b = exponent.node_;
    return Expr(make_node(std::move(n)));
}

bool Expr::is_zero() const { return node_is_number(node_, 0.0); }

// ---------------------------------------------------------------------------
// Evaluation

double Expr::eval(const EvalEnv& env) const {
    const ExprNode& n = *node_;
    switch (n.kind) {
        case Kind::Number: return n.number;
        case Kind::Pi: return std::numbers::pi;
        case Kind::Var: {
            const double* v = env.find(n.name);
            if (!v) throw DomainError(ErrorCode::UnknownIdentifier, "unbound variable '" + n.name + "'");
            return *v;
        }
        case Kind::Neg: return -Expr(n.a).eval(env);
        case Kind::Binary: {
            const double a = Expr(n.a).eval(env);
            const double b = Expr(n.b).eval(env);
            switch (n.op) {
                case BinOp::Add: return a + b;
                case BinOp::Sub: return a - b;
                case BinOp::Mul: return a * b;
                case BinOp::Div: return a / b;
                case BinOp::Pow: return std::pow(a, b);
            }
            return 0.0;
        }
        case Kind::Apply: {
            const double x = Expr(n.a).eval(env);
            switch (n.func) {
                case Func::Sin: return std::sin(x);
                case Func::Cos: return std::cos(x);
                case Func::Tan: return std::tan(x);
                case Func::Exp: return std::exp(x);
                case Func::Log: return std::log(x);
                case Func::Sqrt: return std::sqrt(x);
                case Func::Bump: return eval_bump(x, n.order);
            }
            return 0.0;
        }
        case Kind::Interp: return n.table->eval(Expr(n.a).eval(env), n.order);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Differentiation

Expr Expr::diff(std::string_view var) const {
    const ExprNode& n = *node_;
    switch (n.kind) {
        case Kind::Number:
        case Kind::Pi: return Expr();
        case Kind::Var: return n.name == var ? Expr(1.0) : Expr();
        case Kind::Neg: return -Expr(n.a).diff(var);
        case Kind::Binary: {
            const Expr a(n.a), b(n.b);
            switch (n.op) {
                case BinOp::Add: return a.diff(var) + b.diff(var);
                case BinOp::Sub: return a.diff(var) - b.diff(var);
                case BinOp::Mul: return a.diff(var) * b + a * b.diff(var);
                case BinOp::Div: return (a.diff(var) * b - a * b.diff(var)) / (b * b);
                case BinOp::Pow: {
                    if (n.b->kind == Kind::Number) {
                        const double e = n.b->number;
                        return Expr(e) * pow(a, Expr(e - 1.0)) * a.diff(var);
                    }
                    // General case; only meaningful where the base is positive.
                    return pow(a, b) * (b.diff(var) * log(a) + b * a.diff(var) / a);
                }
            }
            return Expr();
        }
        case Kind::Apply: {
            const Expr arg(n.a);
            const Expr darg = arg.diff(var);
            if (darg.is_zero()) return Expr();
            Expr outer;
            switch (n.func) {
                case Func::Sin: outer = cos(arg); break;
                case Func::Cos: outer = -sin(arg); break;
                case Func::Tan: outer = Expr(1.0) + tan(arg) * tan(arg); break;
                case Func::Exp: outer = exp(arg); break;
                case Func::Log: outer = Expr(1.0) / arg; break;
                case Func::Sqrt: outer = Expr(0.5) / sqrt(arg); break;
                case Func::Bump: {
                    ExprNode next;
                    next.kind = Kind::Apply;
                    next.func = Func::Bump;
                    next.order = n.order + 1;
                    next.a = n.a;
                    outer = Expr(make_node(std::move(next)));
                    break;
                }
            }
            return outer * darg;
        }
        case Kind::Interp: {
            const Expr arg(n.a);
            const Expr darg = arg.diff(var);
            if (darg.is_zero()) return Expr();
            ExprNode next;
            next.kind = Kind::Interp;
            next.table = n.table;
            next.order = n.order + 1;
            next.a = n.a;
            return Expr(make_node(std::move(next))) * darg;
        }
    }
    return Expr();
}

// ---------------------------------------------------------------------------
// Substitution, variables, equality

Expr Expr::substitute(std::string_view var, const Expr& replacement) const {
    const ExprNode& n = *node_;
    switch (n.kind) {
        case Kind::Number:
        case Kind::Pi: return *this;
        case Kind::Var: return n.name == var ? replacement : *this;
        case Kind::Neg: return -Expr(n.a).substitute(var, replacement);
        case Kind::Binary: {
            const Expr a = Expr(n.a).substitute(var, replacement);
            const Expr b = Expr(n.b).substitute(var, replacement);
            switch (n.op) {
                case BinOp::Add: return a + b;
                case BinOp::Sub: return a - b;
                case BinOp::Mul: return a * b;
                case BinOp::Div: return a / b;
                case BinOp::Pow: return pow(a, b);
            }
            return Expr();
        }
        case Kind::Apply: {
            const Expr arg = Expr(n.a).substitute(var, replacement);
            if (arg.node_ == n.a) return *this;
            ExprNode next;
            next.kind = Kind::Apply;
            next.func = n.func;
            next.order = n.order;
            next.a = arg.node_;
            return Expr(make_node(std::move(next)));
        }
        case Kind::Interp: {
            const Expr arg = Expr(n.a).substitute(var, replacement);
            if (arg.node_ == n.a) return *this;
            ExprNode next;
            next.kind = Kind::Interp;
            next.table = n.table;
            next.order = n.order;
            next.a = arg.node_;
            return Expr(make_node(std::move(next)));
        }
    }
    return *this;
}

void Expr::collect_variables(std::set<std::string>& out) const {
    const ExprNode& n = *node_;
    if (n.kind == Kind::Var) out.insert(n.name);
    if (n.a) Expr(n.a).collect_variables(out);
    if (n.b) Expr(n.b).collect_variables(out);
}

std::set<std::string> Expr::variables() const {
    std::set<std::string> out;
    collect_variables(out);
    return out;
}

bool Expr::same_as(const Expr& other) const {
    const ExprNode& x = *node_;
    const ExprNode& y = *other.node_;
    if (node_ == other.node_) return true;
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case Kind::Number: return x.number == y.number;
        case Kind::Pi: return true;
        case Kind::Var: return x.name == y.name;
        case Kind::Neg: return Expr(x.a).same_as(Expr(y.a));
        case Kind::Binary:
            return x.op == y.op && Expr(x.a).same_as(Expr(y.a)) && Expr(x.b).same_as(Expr(y.b));
        case Kind::Apply:
            return x.func == y.func && x.order == y.order && Expr(x.a).same_as(Expr(y.a));
        case Kind::Interp:
            return x.table == y.table && x.order == y.order && Expr(x.a).same_as(Expr(y.a));
    }
    return false;
}

// ---------------------------------------------------------------------------
// Printing. Levels: +- is 1, */ is 2, ^ is 3, atoms/negation/calls are 4.
// Parenthesization is chosen so that parse(str()) reproduces the tree.

namespace {

struct Printed {
    std::string text;
    int level;
};

Printed print_node(const ExprNode& n);

std::string child_text(const ExprNodePtr& child, int min_level) {
    Printed p = print_node(*child);
    if (p.level < min_level) return "(" + p.text + ")";
    return p.text;
}

Printed print_node(const ExprNode& n) {
    switch (n.kind) {
        case Kind::Number: return {format_number(n.number), 4};
        case Kind::Pi: return {"pi", 4};
        case Kind::Var: return {n.name, 4};
        case Kind::Neg: return {"-" + child_text(n.a, 4), 4};
        case Kind::Binary: {
            switch (n.op) {
                case BinOp::Add: return {child_text(n.a, 1) + "+" + child_text(n.b, 2), 1};
                case BinOp::Sub: return {child_text(n.a, 1) + "-" + child_text(n.b, 2), 1};
                case BinOp::Mul: return {child_text(n.a, 2) + "*" + child_text(n.b, 3), 2};
                case BinOp::Div: return {child_text(n.a, 2) + "/" + child_text(n.b, 3), 2};
                case BinOp::Pow: {
                    // Right associative; the left operand must be an atom.
                    Printed lhs = print_node(*n.a);
                    std::string left = lhs.level < 4 ? "(" + lhs.text + ")" : lhs.text;
                    return {left + "^" + child_text(n.b, 3), 3};
                }
            }
            return {"?", 4};
        }
        case Kind::Apply: {
            std::string name = func_name(n.func);
            if (n.order > 0) name += "_d" + std::to_string(n.order);
            return {name + "(" + print_node(*n.a).text + ")", 4};
        }
        case Kind::Interp: {
            std::string name = "<" + n.table->label() + (n.order > 0 ? "_d" + std::to_string(n.order) : "") + ">";
            return {name + "(" + print_node(*n.a).text + ")", 4};
        }
    }
    return {"?", 4};
}

} // namespace

std::string Expr::str() const { return print_node(*node_).text; }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr run() {
        Expr e = parse_sum();
        skip_spaces();
        if (pos_ != text_.size())
            throw ParseError(ErrorCode::SyntaxError, pos_, "unexpected trailing input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_spaces() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n'))
            ++pos_;
    }

    bool eat(char c) {
        skip_spaces();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    // Accept ASCII '-' and the UTF-8 minus sign U+2212.
    bool eat_minus() {
        skip_spaces();
        if (pos_ < text_.size() && text_[pos_] == '-') {
            ++pos_;
            return true;
        }
        if (pos_ + 2 < text_.size() && static_cast<unsigned char>(text_[pos_]) == 0xE2 &&
            static_cast<unsigned char>(text_[pos_ + 1]) == 0x88 &&
            static_cast<unsigned char>(text_[pos_ + 2]) == 0x92) {
            pos_ += 3;
            return true;
        }
        return false;
    }

    Expr parse_sum() {
        Expr acc = parse_term();
        for (;;) {
            if (eat('+')) {
                acc = acc + parse_term();
            } else if (eat_minus()) {
                acc = acc - parse_term();
            } else {
                return acc;
            }
        }
    }

    Expr parse_term() {
        Expr acc = parse_factor();
        for (;;) {
            if (eat('*')) {
                acc = acc * parse_factor();
            } else if (eat('/')) {
                acc = acc / parse_factor();
            } else {
                return acc;
            }
        }
    }

    Expr parse_factor() {
        Expr base = parse_base();
        if (eat('^')) return pow(base, parse_factor());
        return base;
    }

    Expr parse_base() {
        skip_spaces();
        if (pos_ >= text_.size())
            throw ParseError(ErrorCode::SyntaxError, pos_, "expected expression");
        if (eat_minus()) return -parse_base();
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_sum();
            if (!eat(')')) throw ParseError(ErrorCode::SyntaxError, pos_, "expected ')'");
            return inner;
        }
        if ((c >= '0' && c <= '9') || c == '.') return parse_number();
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') return parse_ident();
        throw ParseError(ErrorCode::SyntaxError, pos_, "unexpected character");
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
                while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
            } else {
                pos_ = mark; // "e" belongs to a following identifier, not this number
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || ptr != text_.data() + pos_)
            throw ParseError(ErrorCode::SyntaxError, start, "malformed number");
        return Expr::number(value);
    }

    Expr parse_ident() {
        const std::size_t start = pos_;
        auto is_ident = [](char c) {
            return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        };
        while (pos_ < text_.size() && is_ident(text_[pos_])) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        skip_spaces();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            Func f;
            if (name == "sin") f = Func::Sin;
            else if (name == "cos") f = Func::Cos;
            else if (name == "tan") f = Func::Tan;
            else if (name == "exp") f = Func::Exp;
            else if (name == "log") f = Func::Log;
            else if (name == "sqrt") f = Func::Sqrt;
            else if (name == "bump") f = Func::Bump;
            else
                throw ParseError(ErrorCode::UnknownIdentifier, start, "unknown function '" + name + "'");
            Expr arg = parse_sum();
            if (!eat(')')) throw ParseError(ErrorCode::SyntaxError, pos_, "expected ')'");
            return Expr::apply(f, arg);
        }
        if (name == "pi") return Expr::pi();
        return Expr::variable(std::move(name));
    }
};

} // namespace

Expr parse_expr(std::string_view text) { return Parser(text).run(); }

} // namespace helicity
