#pragma once

#include "helicity/calculus.hpp"
#include "helicity/contact.hpp"
#include "helicity/forms.hpp"

#include <array>

namespace helicity {

/// Time-dependent Hamiltonian on the unit disk, compactly supported in the
/// interior: the function and its first derivatives vanish for
/// r >= support_radius. Construction validates the variables; the support
/// condition is checked numerically by check_support.
struct IsotopySpec {
    IsotopySpec(Expr hamiltonian, double support_radius);

    Expr hamiltonian; // in (r, theta, t)
    double support_radius;
};

void check_support(const IsotopySpec& spec, double tolerance = 1e-9);

/// Suspension X_{F_t} + d/dt on the solid torus; the disk components are the
/// Hamiltonian field of F (iota_X omega = dF) and the t-component is 1.
struct SuspensionField {
    VectorField field;
    IsotopySpec spec;
};

/// Integral of F over D^2 x [0,1] against omega dt.
double calabi(const IsotopySpec& spec, const ChartGrid& disk_grid, int time_nodes);

SuspensionField suspension_field(const IsotopySpec& spec);

/// Direct helicity of the suspension from beta = F dt + (r^2/2) d theta;
/// asserted equal to twice the Calabi invariant.
HelicityResult suspension_helicity_direct(const IsotopySpec& spec,
                                          const ChartGrid& torus_grid);

/// Relative helicity of the disk component against d/dt; equals the Calabi
/// invariant, and is asserted to.
double relative_helicity_suspension(const IsotopySpec& spec, const ChartGrid& torus_grid);

/// Embeddings of the solid torus as {eta <= pi/4} (index 1) and
/// {eta >= pi/4} (index 2) in Hopf coordinates.
std::array<double, 3> embed_tau(int index, const std::array<double, 3>& point);

/// Pushforward of a suspension field under embed_tau at a solid-torus point.
std::array<double, 3> pushforward_tau(int index, const SuspensionField& field,
                                      const std::array<double, 3>& point);

struct DoubleSuspensionReport {
    double cal1;
    double cal2;
    double formula_value;   // 2 pi^2 (Cal1 + Cal2 + 2 pi^2)
    double h_sum;           // helicities of the two disk components, glued volume
    double r_reeb;          // relative helicity against the Reeb term, glued volume
    double h_reeb;          // helicity of the Reeb term, glued volume
    double termwise_total;  // pi^2 (h_sum + 2 r_reeb + h_reeb)
};

/// Helicity of the double suspension: the closed formula next to its
/// termwise decomposition, each term measured by quadrature against the
/// glued volume form of total volume 2 pi and rescaled by pi^2.
DoubleSuspensionReport double_suspension_helicity(const IsotopySpec& spec1,
                                                  const IsotopySpec& spec2,
                                                  const ChartGrid& torus_grid,
                                                  const ChartGrid& s3_grid);

/// Radial twist Hamiltonian F(r) = int_r^1 s rho(s) ds as a tabulated
/// expression with exact nodal derivatives.
Expr radial_twist_hamiltonian(const Expr& rho_of_r, int table_intervals = 2048);

} // namespace helicity
