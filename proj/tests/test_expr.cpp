#include "helicity/errors.hpp"
#include "helicity/expr.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cctype>
#include <cmath>
#include <numbers>

using namespace helicity;
using helicity::testing::RandomExprGen;
using helicity::testing::finite_difference;

namespace {

std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

} // namespace

TEST_CASE("parser matches standard precedence") {
    EvalEnv env{{"x", 3.0}};
    CHECK(parse_expr("2^3^2").eval(env) == doctest::Approx(512.0));
    CHECK(parse_expr("2*3+4*5").eval(env) == doctest::Approx(26.0));
    CHECK(parse_expr("2-3-4").eval(env) == doctest::Approx(-5.0));
    CHECK(parse_expr("6/3/2").eval(env) == doctest::Approx(1.0));
    CHECK(parse_expr("2^-2").eval(env) == doctest::Approx(0.25));
    // Unary minus binds at the base level, so -x^2 squares the negation.
    CHECK(parse_expr("-x^2").eval(env) == doctest::Approx(9.0));
    CHECK(parse_expr("-(x^2)").eval(env) == doctest::Approx(-9.0));
    CHECK(parse_expr("pi").eval(env) == doctest::Approx(std::numbers::pi));
    CHECK(parse_expr("1e-3*x").eval(env) == doctest::Approx(0.003));
    CHECK(parse_expr("1.5e2+x").eval(env) == doctest::Approx(153.0));
    // No implicit multiplication: a dangling identifier is trailing input.
    CHECK_THROWS_AS(parse_expr("2e"), ParseError);
}

TEST_CASE("parse builds the expected trees") {
    const Expr eta = Expr::variable("eta");
    CHECK(parse_expr("cos(2*eta)").same_as(cos(Expr(2.0) * eta)));
    CHECK(parse_expr("  cos( 2 * eta )").same_as(cos(Expr(2.0) * eta)));
}

TEST_CASE("the twisted-coordinates denominator expression evaluates correctly") {
    const Expr f = parse_expr("4/(r^2*(1+15*cos(theta)^2))");
    EvalEnv env{{"r", 0.5}, {"theta", 1.2}};
    const double c = std::cos(1.2);
    CHECK(f.eval(env) == doctest::Approx(4.0 / (0.25 * (1.0 + 15.0 * c * c))).epsilon(1e-14));
    env.set("theta", 0.0);
    CHECK(f.eval(env) == doctest::Approx(1.0).epsilon(1e-14)); // 4/(0.25*16)
}

TEST_CASE("syntax errors carry byte offsets") {
    CHECK_THROWS_AS(parse_expr("sin("), ParseError);
    try {
        parse_expr("sin(");
    } catch (const ParseError& err) {
        CHECK(err.offset() == 4);
        CHECK(err.code() == ErrorCode::SyntaxError);
    }
    try {
        parse_expr("1 + foo(2)");
    } catch (const ParseError& err) {
        CHECK(err.code() == ErrorCode::UnknownIdentifier);
        CHECK(err.offset() == 4);
    }
    CHECK_THROWS_AS(parse_expr("1 + "), ParseError);
    CHECK_THROWS_AS(parse_expr("(1+2"), ParseError);
    CHECK_THROWS_AS(parse_expr("1 2"), ParseError);
}

TEST_CASE("symbolic derivatives of the named examples") {
    const Expr eta = Expr::variable("eta");
    const Expr r = Expr::variable("r");
    EvalEnv env{{"eta", 0.37}, {"r", 0.8}};

    const Expr d1 = cos(Expr(2.0) * eta).diff("eta");
    CHECK(d1.eval(env) == doctest::Approx(-2.0 * std::sin(0.74)).epsilon(1e-14));

    const Expr d2 = pow(r, Expr(3.0)).diff("r");
    CHECK(d2.eval(env) == doctest::Approx(3.0 * 0.64).epsilon(1e-14));
}

TEST_CASE("symbolic derivative matches the finite-difference oracle") {
    RandomExprGen gen({"x", "y"}, 20240901);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 60; ++trial) {
        const Expr e = gen.next(3);
        EvalEnv env{{"x", gen.uniform(-1.5, 1.5)}, {"y", gen.uniform(-1.5, 1.5)}};
        const double fd = finite_difference(e, "x", env);
        if (!std::isfinite(fd)) continue;
        const double symbolic = e.diff("x").eval(env);
        CHECK(std::abs(symbolic - fd) < 1e-6 * (1.0 + std::abs(fd)));
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("pretty-print round-trips through the parser") {
    const std::vector<std::string> corpus = {
        "cos(2*eta)",
        "4/(r^2*(1+15*cos(theta)^2))",
        "sin(eta)*cos(xi1-xi2)",
        "1+2*x",
        "x+y+z",
        "x-y-z",
        "x-(y-z)",
        "x*y*z",
        "x/y/z",
        "x/(y/z)",
        "x^y^z",
        "(x^y)^z",
        "x^2+y^2",
        "-x",
        "-x^2",
        "-(x+y)",
        "x*-y",
        "2.5*x-0.125",
        "exp(cos(z))",
        "log(3+cos(x))",
        "sqrt(1+x^2)",
        "tan(x/4)",
        "bump(r/0.9)",
        "pi*r^2",
        "sin(pi*t)",
        "x^-2",
        "2^-2",
        "cos(x)^2*sin(y)^3",
        "1/(1+x)",
        "(1+x)*(1-x)",
        "x*(y+z)",
        "(x+y)/(x-y)",
        "0.5*(1+cos(2*eta))",
        "r^3*bump(r/0.85)",
        "exp(-(1/r^2))",
        "sin(x)+sin(2*x)+sin(3*x)",
        "cos(x)*cos(y)*cos(z)",
        "x^2*y^2-z",
        "sqrt(x^2+y^2)",
        "1-bump(s)",
        "t*cos(2*eta)",
        "sin(theta+r^-1)",
        "2*pi*(1+t)",
        "eta/2",
        "x+0.001*y",
        "exp(cos(phi))-1",
        "sin(phi)/(4*pi)",
        "cos(2*z)+cos(3*z)",
        "0.001*x",
        "150+x",
    };
    CHECK(corpus.size() == 50);
    for (const auto& text : corpus) {
        CAPTURE(text);
        const Expr parsed = parse_expr(text);
        const std::string printed = parsed.str();
        CHECK(strip_spaces(printed) == strip_spaces(text));
        CHECK(parse_expr(printed).same_as(parsed));
    }
}

TEST_CASE("printer output always reparses to the same tree") {
    RandomExprGen gen({"x", "y"}, 777);
    for (int trial = 0; trial < 40; ++trial) {
        const Expr e = gen.next(3);
        CHECK(parse_expr(e.str()).same_as(e));
    }
}

TEST_CASE("bump is a smooth cutoff") {
    EvalEnv env;
    auto at = [&](double s) {
        env.set("s", s);
        return bump(Expr::variable("s")).eval(env);
    };
    CHECK(at(0.0) == doctest::Approx(1.0));
    CHECK(at(1.0) == 0.0);
    CHECK(at(-1.0) == 0.0);
    CHECK(at(2.5) == 0.0);
    CHECK(at(0.5) == doctest::Approx(std::exp(1.0 - 1.0 / 0.75)).epsilon(1e-14));

    // Derivatives vanish at and beyond the support boundary and match finite
    // differences inside it.
    const Expr b = bump(Expr::variable("s"));
    const Expr db = b.diff("s");
    const Expr d2b = db.diff("s");
    env.set("s", 1.0);
    CHECK(db.eval(env) == 0.0);
    CHECK(d2b.eval(env) == 0.0);
    env.set("s", 0.0);
    CHECK(db.eval(env) == doctest::Approx(0.0).epsilon(1e-12));
    for (double s : {0.2, 0.5, 0.8, -0.4}) {
        env.set("s", s);
        const double fd = finite_difference(b, "s", env, 1e-6);
        CHECK(db.eval(env) == doctest::Approx(fd).epsilon(1e-5));
        const double fd2 = finite_difference(db, "s", env, 1e-6);
        CHECK(d2b.eval(env) == doctest::Approx(fd2).epsilon(1e-4));
    }
}

TEST_CASE("substitution rewrites variables") {
    const Expr h = parse_expr("cos(2*eta)");
    const Expr f = h.substitute("eta", Expr::variable("phi") / Expr(2.0));
    EvalEnv env{{"phi", 1.1}};
    CHECK(f.eval(env) == doctest::Approx(std::cos(1.1)).epsilon(1e-15));

    const Expr shifted = parse_expr("sin(xi1-xi2)").substitute(
        "xi1", Expr::variable("xi1") + Expr(0.25));
    EvalEnv env2{{"xi1", 0.5}, {"xi2", 0.1}};
    CHECK(shifted.eval(env2) == doctest::Approx(std::sin(0.65)).epsilon(1e-15));
}

TEST_CASE("evaluation reports unbound variables") {
    EvalEnv env;
    CHECK_THROWS_AS(parse_expr("x+1").eval(env), DomainError);
    const auto vars = parse_expr("x*sin(y)+pi").variables();
    CHECK(vars == std::set<std::string>{"x", "y"});
}
