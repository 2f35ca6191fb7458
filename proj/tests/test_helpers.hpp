#pragma once

#include "helicity/calculus.hpp"
#include "helicity/expr.hpp"
#include "helicity/forms.hpp"
#include "helicity/manifold.hpp"

#include <array>
#include <random>
#include <string>
#include <vector>

namespace helicity::testing {

/// Central finite difference of order h^2; the independent oracle for the
/// symbolic derivative.
inline double finite_difference(const Expr& e, const std::string& var, EvalEnv env,
                                double step = 1e-5) {
    const double x = *env.find(var);
    env.set(var, x + step);
    const double hi = e.eval(env);
    env.set(var, x - step);
    const double lo = e.eval(env);
    return (hi - lo) / (2.0 * step);
}

/// Random expressions over the given variables, restricted to patterns that
/// keep every subexpression smooth and finite on [-2, 2]^k.
class RandomExprGen {
public:
    RandomExprGen(std::vector<std::string> vars, unsigned seed)
        : vars_(std::move(vars)), rng_(seed) {}

    Expr next(int depth = 3) { return gen(depth); }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    std::mt19937& rng() { return rng_; }

private:
    std::vector<std::string> vars_;
    std::mt19937 rng_;

    Expr leaf() {
        switch (std::uniform_int_distribution<int>(0, 3)(rng_)) {
            case 0: return Expr(uniform(-2.0, 2.0));
            case 1: return Expr::pi();
            default:
                return Expr::variable(
                    vars_[std::uniform_int_distribution<std::size_t>(0, vars_.size() - 1)(rng_)]);
        }
    }

    Expr gen(int depth) {
        if (depth <= 0) return leaf();
        switch (std::uniform_int_distribution<int>(0, 9)(rng_)) {
            case 0: return gen(depth - 1) + gen(depth - 1);
            case 1: return gen(depth - 1) - gen(depth - 1);
            case 2: return gen(depth - 1) * gen(depth - 1);
            case 3: return gen(depth - 1) / (Expr(3.0) + sin(gen(depth - 1)));
            case 4: return sin(gen(depth - 1));
            case 5: return cos(gen(depth - 1));
            case 6: return exp(Expr(0.25) * sin(gen(depth - 1)));
            case 7: return log(Expr(3.0) + cos(gen(depth - 1)));
            case 8: return pow(sin(gen(depth - 1)), Expr(2.0));
            default: return bump(gen(depth - 1) / Expr(4.0));
        }
    }
};

/// Smooth global functions on the three-sphere: polynomials in the ambient
/// coordinates written in Hopf coordinates.
inline std::array<Expr, 4> s3_ambient() {
    const Expr eta = Expr::variable("eta");
    const Expr xi1 = Expr::variable("xi1");
    const Expr xi2 = Expr::variable("xi2");
    return {cos(xi1) * sin(eta), sin(xi1) * sin(eta), cos(xi2) * cos(eta),
            sin(xi2) * cos(eta)};
}

inline Expr random_s3_polynomial(std::mt19937& rng) {
    const auto ambient = s3_ambient();
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 3);
    Expr acc(coeff(rng));
    for (int term = 0; term < 3; ++term)
        acc = acc + Expr(coeff(rng)) * ambient[pick(rng)] * ambient[pick(rng)];
    return acc;
}

/// Smooth basic functions on the three-sphere: polynomials in the pulled
/// back ambient coordinates of the base two-sphere.
inline Expr random_basic_s3(std::mt19937& rng) {
    const Expr eta = Expr::variable("eta");
    const Expr diff = Expr::variable("xi1") - Expr::variable("xi2");
    const Expr a = cos(Expr(2.0) * eta);
    const Expr b = sin(Expr(2.0) * eta) * cos(diff);
    const Expr c = sin(Expr(2.0) * eta) * sin(diff);
    const Expr basis[3] = {a, b, c};
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 2);
    Expr acc(coeff(rng));
    for (int term = 0; term < 3; ++term)
        acc = acc + Expr(coeff(rng)) * basis[pick(rng)] * basis[pick(rng)];
    acc = acc + Expr(coeff(rng)) * basis[pick(rng)];
    return acc;
}

inline Expr random_t3_trigpoly(std::mt19937& rng, int max_harmonic = 2) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> harmonic(1, max_harmonic);
    const char* vars[3] = {"x", "y", "z"};
    Expr acc(coeff(rng));
    for (int term = 0; term < 4; ++term) {
        Expr factor(coeff(rng));
        for (const char* v : vars) {
            switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
                case 0: factor = factor * cos(Expr(harmonic(rng)) * Expr::variable(v)); break;
                case 1: factor = factor * sin(Expr(harmonic(rng)) * Expr::variable(v)); break;
                default: break;
            }
        }
        acc = acc + factor;
    }
    return acc;
}

/// Gauss-Legendre quadrature of a callable on [a, b]; the 1-D oracle.
template <typename F>
double quad_1d(F&& f, double a, double b, int panels = 64, int order = 16) {
    std::vector<double> nodes, weights;
    gauss_legendre(order, 0.0, 1.0, nodes, weights);
    const double h = (b - a) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (int q = 0; q < order; ++q) acc += h * weights[q] * f(lo + nodes[q] * h);
    }
    return acc;
}

} // namespace helicity::testing
