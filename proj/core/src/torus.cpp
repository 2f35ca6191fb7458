#include "helicity/torus.hpp"

#include "helicity/errors.hpp"

#include <cassert>
#include <cmath>

namespace helicity {

TorusHamiltonian::TorusHamiltonian(FourierSpectrum s) : spectrum(std::move(s)) {
    if (spectrum.reality_defect() > 1e-12)
        throw DomainError(ErrorCode::NotExact, "spectrum must represent a real function");
}

FluxReport torus_flux(const TorusHamiltonian& h) {
    const auto c1 = h.spectrum.coeff(1);
    const double a1 = 2.0 * c1.real();
    const double b1 = -2.0 * c1.imag();
    return FluxReport{a1, b1, std::abs(c1) <= 1e-12};
}

double torus_weight(int n) {
    const double nn = static_cast<double>(n) * n;
    return 3.0 + 4.0 / (nn - 1.0);
}

double torus_helicity_fourier(const TorusHamiltonian& h, double kappa) {
    if (!torus_flux(h).exact)
        throw DomainError(ErrorCode::NotExact, "nonzero flux: no primitive exists");
    assert(torus_weight(0) == -1.0);
    const double c0 = h.spectrum.coeff(0).real();
    double tail = 0.0;
    for (int n = 2; n <= h.spectrum.max_index(); ++n)
        tail += torus_weight(n) * std::norm(h.spectrum.coeff(n));
    return kappa * (c0 * c0 - 2.0 * tail);
}

HelicityResult torus_helicity_direct(const TorusHamiltonian& h, const ChartGrid& t3_grid,
                                     double residual_tolerance) {
    if (t3_grid.manifold() != ManifoldId::Torus3)
        throw DomainError(ErrorCode::ManifoldMismatch, "expected a three-torus grid");
    const TorusPrimitive primitive = torus_primitives(h.spectrum, t3_grid);
    if (primitive.residual > residual_tolerance)
        throw DomainError(ErrorCode::ResidualTooLarge,
                          "primitive residual " + std::to_string(primitive.residual));
    const KForm dbeta = exterior_derivative(primitive.beta);
    const double value = integrate(wedge(primitive.beta, dbeta), t3_grid);

    // Reduced integrand of the same wedge product after dropping exact terms.
    const Expr z = Expr::variable("z");
    const Expr h_expr = h.expr();
    const Expr reduced = Expr(2.0) * h_expr * (primitive.f_expr * cos(z) - primitive.g_expr * sin(z)) -
                         Expr(3.0) * h_expr * h_expr;
    const double reduced_value = integrate(ScalarField(ManifoldId::Torus3, reduced), t3_grid);
    if (std::abs(value - reduced_value) > 1e-8 * (1.0 + std::abs(value)))
        throw DomainError(ErrorCode::ResidualTooLarge,
                          "wedge quadrature disagrees with the reduced integrand");
    return HelicityResult{value, HelicityMethod::DirectQuadrature, primitive.residual,
                          GridSummary{t3_grid.manifold(), t3_grid.resolution()}};
}

double torus_kappa(const ChartGrid& t3_grid) {
    FourierSpectrum constant_one(1);
    constant_one.set(0, {1.0, 0.0});
    const TorusHamiltonian h(constant_one);
    // Formula bracket for H = 1 is c_0^2 = 1, so the direct value is kappa.
    return torus_helicity_direct(h, t3_grid).value;
}

} // namespace helicity
