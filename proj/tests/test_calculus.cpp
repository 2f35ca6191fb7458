#include "helicity/calculus.hpp"
#include "helicity/errors.hpp"
#include "helicity/fourier.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace helicity;
using helicity::testing::quad_1d;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

TEST_CASE("integration against the canonical volume form") {
    const ChartGrid s3 = make_grid(ManifoldId::Sphere3, 32);
    CHECK(integrate(ScalarField(ManifoldId::Sphere3, Expr(1.0)), s3) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(integrate(ScalarField(ManifoldId::Sphere3, parse_expr("cos(2*eta)")), s3)) <
          1e-10);
    CHECK(integrate(ScalarField(ManifoldId::Sphere3, parse_expr("cos(2*eta)^2")), s3) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("averages and L2 norms") {
    const ChartGrid s3 = make_grid(ManifoldId::Sphere3, 24);
    const ChartGrid s2 = make_grid(ManifoldId::Sphere2, 32);
    CHECK(average(ScalarField(ManifoldId::Sphere3, Expr(1.0)), s3) == doctest::Approx(1.0));
    CHECK(std::abs(average(ScalarField(ManifoldId::Sphere2, parse_expr("cos(phi)")), s2)) < 1e-12);
    CHECK(l2_norm_sq(ScalarField(ManifoldId::Sphere3, parse_expr("cos(2*eta)")), s3) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("integrate validates manifolds and degrees") {
    const ChartGrid s3 = make_grid(ManifoldId::Sphere3, 8);
    CHECK_THROWS_AS(integrate(ScalarField(ManifoldId::Torus3, Expr(1.0)), s3), DomainError);
    CHECK_THROWS_AS(integrate(contact_form(ManifoldId::Sphere3), s3), DomainError);
}

TEST_CASE("Fourier coefficients of band-limited inputs are exact") {
    const FourierSpectrum cos2 = fourier_coeffs(parse_expr("cos(2*z)"), "z", 4);
    for (int n = -4; n <= 4; ++n) {
        const double expected = (n == 2 || n == -2) ? 0.5 : 0.0;
        CHECK(std::abs(cos2.coeff(n) - std::complex<double>(expected, 0.0)) < 1e-12);
    }
    const FourierSpectrum constant = fourier_coeffs(parse_expr("7"), "z", 2);
    CHECK(std::abs(constant.coeff(0) - std::complex<double>(7.0, 0.0)) < 1e-14);
    CHECK(constant.reality_defect() < 1e-15);
}

TEST_CASE("Fourier coefficients of a smooth function match a dense oracle") {
    const Expr f = parse_expr("exp(cos(z))");
    const FourierSpectrum spectrum = fourier_coeffs(f, "z", 16);

    // Oracle: 4096-sample quadrature, far beyond the requested bandwidth.
    std::vector<double> samples(4096);
    EvalEnv env;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        env.set("z", kTwoPi * static_cast<double>(j) / samples.size());
        samples[j] = f.eval(env);
    }
    const FourierSpectrum oracle = fourier_coeffs(samples, 16);
    for (int n = -16; n <= 16; ++n)
        CHECK(std::abs(spectrum.coeff(n) - oracle.coeff(n)) < 1e-10);

    // Cross-check the first few against modified Bessel values.
    for (int n = 0; n <= 3; ++n)
        CHECK(spectrum.coeff(n).real() ==
              doctest::Approx(std::cyl_bessel_i(n, 1.0)).epsilon(1e-12));
}

TEST_CASE("Plancherel identity") {
    const Expr f = parse_expr("exp(cos(z))");
    const FourierSpectrum spectrum = fourier_coeffs(f, "z", 16);
    const double via_quadrature =
        quad_1d([&](double z) { return std::pow(std::exp(std::cos(z)), 2); }, 0.0, kTwoPi) /
        kTwoPi;
    CHECK(spectrum.l2_sq() == doctest::Approx(via_quadrature).epsilon(1e-12));
}

TEST_CASE("spectrum expression matches pointwise evaluation") {
    FourierSpectrum s(3);
    s.set(0, {0.4, 0.0});
    s.set(2, {0.3, -0.1});
    s.set(-2, {0.3, 0.1});
    const Expr e = s.to_expr("z");
    EvalEnv env;
    for (double z : {0.0, 0.7, 2.9, 5.5}) {
        env.set("z", z);
        CHECK(e.eval(env) == doctest::Approx(s.eval(z)).epsilon(1e-14));
    }
}

TEST_CASE("zonal primitive of cos(phi) has the closed-form coefficient") {
    const ChartGrid s2 = make_grid(ManifoldId::Sphere2, 48);
    const auto report = zonal_primitive(ScalarField(ManifoldId::Sphere2, parse_expr("cos(phi)")), s2);
    CHECK(report.residual < 1e-7);
    EvalEnv env;
    for (double phi : {0.3, 1.0, 2.2, 3.0}) {
        env.set("phi", phi);
        const double expected = std::sin(phi) * std::sin(phi) / (8.0 * kPi);
        CHECK(report.form.coefficient(1).eval(env) == doctest::Approx(expected).epsilon(1e-9));
    }
    env.set("phi", kPi);
    CHECK(std::abs(report.form.coefficient(1).eval(env)) < 1e-12);
}

TEST_CASE("zonal primitive of a constant is zero") {
    const ChartGrid s2 = make_grid(ManifoldId::Sphere2, 32);
    const auto report = zonal_primitive(ScalarField(ManifoldId::Sphere2, Expr(2.5)), s2);
    CHECK(report.residual < 1e-12);
    EvalEnv env;
    for (double phi : {0.5, 1.5, 2.5}) {
        env.set("phi", phi);
        CHECK(std::abs(report.form.coefficient(1).eval(env)) < 1e-13);
    }
}

TEST_CASE("zonal primitive closes at the south pole for mean-zero integrands") {
    const ChartGrid s2 = make_grid(ManifoldId::Sphere2, 48);
    const auto report =
        zonal_primitive(ScalarField(ManifoldId::Sphere2, parse_expr("cos(phi)^2")), s2);
    EvalEnv env{{"phi", kPi}};
    CHECK(std::abs(report.form.coefficient(1).eval(env)) < 1e-12);
}

TEST_CASE("non-zonal input is rejected") {
    const ChartGrid s2 = make_grid(ManifoldId::Sphere2, 16);
    CHECK_THROWS_AS(
        zonal_primitive(ScalarField(ManifoldId::Sphere2, parse_expr("sin(phi)*cos(psi)")), s2),
        DomainError);
}

TEST_CASE("beta primitive collapses to alpha for the constant Hamiltonian") {
    const ChartGrid s3 = make_grid(ManifoldId::Sphere3, 16);
    const auto report = beta_primitive_s3(ScalarField(ManifoldId::Sphere3, Expr(1.0)), s3);
    CHECK(report.residual < 1e-9);
    const KForm alpha = contact_form(ManifoldId::Sphere3);
    CHECK(max_coefficient_gap(report.form, alpha, s3) < 1e-9);
}

TEST_CASE("beta primitive residuals stay under the consumer tolerance") {
    const ChartGrid s3 = make_grid(ManifoldId::Sphere3, 48);
    const auto report =
        beta_primitive_s3(ScalarField(ManifoldId::Sphere3, parse_expr("cos(2*eta)")), s3);
    CHECK(report.residual < 1e-6);

    const auto squared =
        beta_primitive_s3(ScalarField(ManifoldId::Sphere3, parse_expr("cos(eta)^2")), s3);
    CHECK(squared.residual < 1e-6);
    const KForm dbeta = exterior_derivative(squared.form);
    CHECK(std::abs(integrate(wedge(squared.form, dbeta), s3)) < 1e-6);
}

TEST_CASE("beta primitive rejects non-zonal Hamiltonians") {
    const ChartGrid s3 = make_grid(ManifoldId::Sphere3, 12);
    CHECK_THROWS_AS(
        beta_primitive_s3(ScalarField(ManifoldId::Sphere3, parse_expr("cos(xi1-xi2)*sin(2*eta)")),
                          s3),
        DomainError);
}

TEST_CASE("torus primitives from a constant spectrum") {
    const ChartGrid t3 = make_grid(ManifoldId::Torus3, 16);
    FourierSpectrum constant(1);
    constant.set(0, {0.7, 0.0});
    const auto primitive = torus_primitives(constant, t3);
    CHECK(primitive.residual < 1e-9);
    // Only the shifted n = 0 term contributes: F = 2 c_0 cos z, G = -2 c_0 sin z.
    CHECK(std::abs(primitive.f_series.coeff(1) - std::complex<double>(0.7, 0.0)) < 1e-14);
    CHECK(std::abs(primitive.f_series.coeff(-1) - std::complex<double>(0.7, 0.0)) < 1e-14);
    CHECK(std::abs(primitive.g_series.coeff(1) - std::complex<double>(0.0, 0.7)) < 1e-14);
    EvalEnv env{{"z", 1.3}};
    CHECK(primitive.f_expr.eval(env) == doctest::Approx(1.4 * std::cos(1.3)).epsilon(1e-13));
    CHECK(primitive.g_expr.eval(env) == doctest::Approx(-1.4 * std::sin(1.3)).epsilon(1e-13));
}

TEST_CASE("torus primitives from cos(2z)") {
    const ChartGrid t3 = make_grid(ManifoldId::Torus3, 32);
    const auto primitive = torus_primitives(fourier_coeffs(parse_expr("cos(2*z)"), "z", 4), t3);
    CHECK(primitive.residual < 1e-9);
}

TEST_CASE("a nonzero first coefficient blocks the construction") {
    const ChartGrid t3 = make_grid(ManifoldId::Torus3, 8);
    FourierSpectrum bad(2);
    bad.set(1, {0.15, 0.0});
    bad.set(-1, {0.15, 0.0});
    CHECK_THROWS_AS(torus_primitives(bad, t3), DomainError);
    try {
        torus_primitives(bad, t3);
    } catch (const DomainError& err) {
        CHECK(err.code() == ErrorCode::NotExact);
    }
}

TEST_CASE("cumulative tables integrate accurately") {
    const auto table = cumulative_table(parse_expr("sin(x)"), "x", 0.0, kPi, 512, "test");
    const Expr integral = Expr::interp(table, Expr::variable("x"));
    EvalEnv env;
    for (double x : {0.1, 0.9, 1.7, 2.8, kPi}) {
        env.set("x", x);
        CHECK(integral.eval(env) == doctest::Approx(1.0 - std::cos(x)).epsilon(1e-11));
    }
    // The promoted expression differentiates like the integrand.
    const Expr derivative = integral.diff("x");
    for (double x : {0.4, 1.2, 2.1}) {
        env.set("x", x);
        CHECK(derivative.eval(env) == doctest::Approx(std::sin(x)).epsilon(1e-8));
    }
}
