#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace helicity {

enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Bump };
enum class BinOp { Add, Sub, Mul, Div, Pow };

/// Tabulated smooth function of one variable on a uniform grid, interpolated
/// with cubic Hermite pieces (nodal values + exact nodal first derivatives).
/// Promoting a table into an Expr lets numerically constructed coefficients
/// (cumulative quadrature primitives, twist Hamiltonians) flow through the
/// same exterior-calculus machinery as closed-form expressions.
class InterpTable {
public:
    InterpTable(std::string label, double x_min, double x_max,
                std::vector<double> values, std::vector<double> derivs);

    // deriv_order 0..3 of the local cubic; order >= 4 is identically zero.
    double eval(double x, int deriv_order) const;

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    const std::string& label() const { return label_; }

private:
    std::string label_;
    double x_min_, x_max_, step_;
    std::vector<double> values_, derivs_;
};

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

/// Binding set for expression evaluation. Holds a handful of chart variables,
/// so linear scan is the right data structure.
class EvalEnv {
public:
    EvalEnv() = default;
    EvalEnv(std::initializer_list<std::pair<std::string, double>> init);

    void set(std::string_view name, double value);
    const double* find(std::string_view name) const;

private:
    std::vector<std::pair<std::string, double>> bindings_;
};

/// Immutable closed-form scalar expression over named variables.
/// Closed under symbolic differentiation; evaluation is pure and reentrant.
class Expr {
public:
    Expr(); // the constant 0
    Expr(double value);
    Expr(int value);

    static Expr number(double value);
    static Expr variable(std::string name);
    static Expr pi();
    static Expr apply(Func f, Expr arg);
    static Expr interp(std::shared_ptr<const InterpTable> table, Expr arg);

    double eval(const EvalEnv& env) const;
    Expr diff(std::string_view var) const;
    Expr substitute(std::string_view var, const Expr& replacement) const;

    void collect_variables(std::set<std::string>& out) const;
    std::set<std::string> variables() const;

    bool is_zero() const;                 // structurally the constant 0
    bool same_as(const Expr& other) const; // structural equality
    std::string str() const;

    const ExprNodePtr& node() const { return node_; }

private:
    explicit Expr(ExprNodePtr node) : node_(std::move(node)) {}
    ExprNodePtr node_;

    friend Expr operator+(const Expr&, const Expr&);
    friend Expr operator-(const Expr&, const Expr&);
    friend Expr operator*(const Expr&, const Expr&);
    friend Expr operator/(const Expr&, const Expr&);
    friend Expr operator-(const Expr&);
    friend Expr pow(const Expr&, const Expr&);
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);

inline Expr sin(const Expr& x) { return Expr::apply(Func::Sin, x); }
inline Expr cos(const Expr& x) { return Expr::apply(Func::Cos, x); }
inline Expr tan(const Expr& x) { return Expr::apply(Func::Tan, x); }
inline Expr exp(const Expr& x) { return Expr::apply(Func::Exp, x); }
inline Expr log(const Expr& x) { return Expr::apply(Func::Log, x); }
inline Expr sqrt(const Expr& x) { return Expr::apply(Func::Sqrt, x); }
inline Expr bump(const Expr& x) { return Expr::apply(Func::Bump, x); }

/// Parse the expression grammar:
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := base ("^" factor)?          -- right associative
///   base   := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")" | "-" base
/// Functions: sin cos tan exp log sqrt bump; "pi" is the constant.
/// Throws ParseError with the byte offset of the offending character.
Expr parse_expr(std::string_view text);

} // namespace helicity
