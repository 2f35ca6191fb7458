#pragma once

#include "helicity/expr.hpp"
#include "helicity/manifold.hpp"

#include <vector>

namespace helicity {

/// Scalar field on a chart; construction validates that the expression's
/// variables are chart variables (plus "t" when time dependence is allowed).
struct ScalarField {
    ScalarField(ManifoldId manifold, Expr expr, bool allow_time = false);

    ManifoldId manifold;
    Expr expr;
};

/// Vector field with one component expression per coordinate frame vector.
struct VectorField {
    VectorField(ManifoldId manifold, std::vector<Expr> components, bool allow_time = false);

    ManifoldId manifold;
    std::vector<Expr> components;
};

/// Increasing multi-index basis of degree-k forms in dimension dim, in
/// lexicographic order. Shared by all form algebra below.
const std::vector<std::vector<int>>& form_basis(int dim, int degree);
int form_rank(int dim, int degree); // C(dim, degree)

/// Differential k-form with one coefficient expression per increasing
/// multi-index; antisymmetry is implicit in the basis.
class KForm {
public:
    KForm(ManifoldId manifold, int degree, std::vector<Expr> coefficients,
          bool allow_time = false);
    static KForm zero(ManifoldId manifold, int degree);

    ManifoldId manifold() const { return manifold_; }
    int degree() const { return degree_; }
    const std::vector<Expr>& coefficients() const { return coeffs_; }
    const Expr& coefficient(std::size_t basis_index) const { return coeffs_[basis_index]; }

private:
    ManifoldId manifold_;
    int degree_;
    std::vector<Expr> coeffs_;
};

KForm exterior_derivative(const KForm& form);
KForm wedge(const KForm& a, const KForm& b);
KForm contract(const VectorField& field, const KForm& form);

KForm operator+(const KForm& a, const KForm& b);
KForm operator-(const KForm& a, const KForm& b);
KForm operator*(const Expr& scalar, const KForm& form);

/// Canonical geometric objects in chart coordinates.
KForm contact_form(ManifoldId m);  // alpha on Sphere3 or Torus3
KForm area_form(ManifoldId m);     // omega on Sphere2 or Disk2
KForm volume_form(ManifoldId m);   // canonical top form on any chart
VectorField reeb_field(ManifoldId m);

/// Pointwise solver for the strictly contact vector field of a Hamiltonian:
/// alpha(X) = H together with iota_X d(alpha) = -dH, as an overdetermined
/// 4x3 frame system solved by normal equations at each point. Valid away
/// from chart degeneracy loci, which quadrature grids exclude.
class ContactFrameSolver {
public:
    ContactFrameSolver(ManifoldId manifold, Expr hamiltonian, bool allow_time = false);

    ManifoldId manifold() const { return manifold_; }
    std::array<double, 3> solve(const EvalEnv& env) const;

    /// Coefficients of iota_X mu against the increasing 2-form basis,
    /// where mu is the canonical volume form.
    std::array<double, 3> contraction_with_volume(const EvalEnv& env) const;

private:
    ManifoldId manifold_;
    Expr hamiltonian_;
    std::array<Expr, 3> alpha_;
    std::array<Expr, 3> dalpha_; // increasing basis (01, 02, 12)
    std::array<Expr, 3> grad_h_;
    Expr density_;
};

} // namespace helicity
