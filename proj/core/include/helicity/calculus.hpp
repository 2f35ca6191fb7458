#pragma once

#include "helicity/forms.hpp"
#include "helicity/fourier.hpp"
#include "helicity/manifold.hpp"

#include <optional>

namespace helicity {

/// Quadrature of a scalar field against the canonical volume form:
/// sum of weight * density * f(node). `fixed` supplies extra bindings
/// (typically the time variable) that the grid does not own.
double integrate(const ScalarField& f, const ChartGrid& grid,
                 const EvalEnv* fixed = nullptr);

/// Quadrature of a top-degree form: sum of weight * coefficient(node),
/// with the positively oriented coordinate top-form.
double integrate(const KForm& top_form, const ChartGrid& grid,
                 const EvalEnv* fixed = nullptr);

double average(const ScalarField& f, const ChartGrid& grid, const EvalEnv* fixed = nullptr);
double l2_norm_sq(const ScalarField& f, const ChartGrid& grid, const EvalEnv* fixed = nullptr);
double sup_norm(const ScalarField& f, const ChartGrid& grid, const EvalEnv* fixed = nullptr);

/// Max-norm over grid nodes of the coefficient difference of two same-degree forms.
double max_coefficient_gap(const KForm& a, const KForm& b, const ChartGrid& grid);

/// A primitive one-form together with the honestly measured max-norm
/// residual of d(form) against its target two-form over the grid.
struct PrimitiveReport {
    KForm form;
    double residual;
};

/// Default bound consumers place on PrimitiveReport::residual.
inline constexpr double kDefaultPrimitiveTolerance = 1e-6;

/// Residual of a candidate primitive for iota_{X_H} mu, measured pointwise
/// against the frame-solved contact field of the Hamiltonian.
PrimitiveReport make_primitive_report(KForm beta, const Expr& hamiltonian,
                                      const ChartGrid& grid);

/// Primitive gamma = a(phi) d(psi) of (F - c_F) omega for a zonal F on the
/// two-sphere; a is tabulated by cumulative Gauss quadrature and promoted to
/// an interpolation-backed expression.
PrimitiveReport zonal_primitive(const ScalarField& zonal, const ChartGrid& s2_grid);

/// Primitive beta = 2 p^* gamma + (2 c_H - H) alpha of iota_{X_H}(alpha ^ d alpha)
/// on the three-sphere, for H = F o p with zonal F.
PrimitiveReport beta_primitive_s3(const ScalarField& hamiltonian, const ChartGrid& s3_grid);

/// Appendix-style primitive data on the three-torus built from the Fourier
/// spectrum of H(z): real series F, G with beta = F dx + G dy - H alpha.
struct TorusPrimitive {
    FourierSpectrum f_series;
    FourierSpectrum g_series;
    Expr f_expr;
    Expr g_expr;
    KForm beta;
    double residual;
};

TorusPrimitive torus_primitives(const FourierSpectrum& spectrum, const ChartGrid& t3_grid);

/// Pull a scalar on the two-sphere back through the Hopf projection
/// (phi, psi) -> (2 eta, xi1 - xi2).
Expr hopf_pullback(const Expr& f_on_s2);

/// Zonality test: deviation of F from its psi-average along each latitude.
double zonal_defect(const ScalarField& f, const ChartGrid& s2_grid);

/// Cumulative antiderivative table: values int_{x0}^{x} g and exact nodal
/// derivatives g(x), on a uniform grid of `intervals` cells, by per-cell
/// Gauss quadrature. Used for primitives and twist Hamiltonians.
std::shared_ptr<const InterpTable> cumulative_table(const Expr& integrand,
                                                    const std::string& var, double x0,
                                                    double x1, int intervals,
                                                    const std::string& label);

} // namespace helicity
