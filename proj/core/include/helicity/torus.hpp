#pragma once

#include "helicity/calculus.hpp"
#include "helicity/contact.hpp"
#include "helicity/fourier.hpp"

namespace helicity {

/// Basic contact Hamiltonian on the three-torus: a real function of z alone,
/// represented by its Fourier spectrum.
struct TorusHamiltonian {
    explicit TorusHamiltonian(FourierSpectrum spectrum);

    FourierSpectrum spectrum;
    Expr expr() const { return spectrum.to_expr("z"); }
};

struct FluxReport {
    double a1;
    double b1;
    bool exact;
};

/// Flux class of the strictly contact field: a1 [dy^dz] + b1 [dx^dz] from
/// the n = 1 coefficient; the field is exact iff both vanish.
FluxReport torus_flux(const TorusHamiltonian& h);

/// Spectral weight 3 + 4/(n^2 - 1); the n = 0 value is -1, which is what
/// turns the diagonal sum into c_0^2 - 2 sum_{n>=2} ... .
double torus_weight(int n);

/// Closed-form helicity kappa * (c_0^2 - 2 sum_{n>=2} (3 + 4/(n^2-1)) |c_n|^2).
/// kappa is the volume normalization measured once by torus_kappa.
double torus_helicity_fourier(const TorusHamiltonian& h, double kappa);

/// Normalization constant: the direct helicity of H = 1, whose formula
/// bracket is exactly 1. Measured, not assumed.
double torus_kappa(const ChartGrid& t3_grid);

/// Direct quadrature of beta ^ d(beta) over the three-torus, cross-checked
/// against the reduced integrand 2 H (F cos z - G sin z) - 3 H^2.
HelicityResult torus_helicity_direct(const TorusHamiltonian& h, const ChartGrid& t3_grid,
                                     double residual_tolerance = kDefaultPrimitiveTolerance);

} // namespace helicity
