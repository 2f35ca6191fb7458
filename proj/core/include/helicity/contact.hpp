#pragma once

#include "helicity/calculus.hpp"
#include "helicity/forms.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace helicity {

enum class HelicityMethod { ContactFormula, DirectQuadrature, TimeDependentFormula };

const char* method_name(HelicityMethod method);

struct GridSummary {
    ManifoldId manifold;
    std::vector<int> resolution;
};

struct HelicityResult {
    double value;
    HelicityMethod method;
    std::optional<double> residual; // from the primitive, when one was used
    GridSummary grid;
};

/// Largest deviation of H from Reeb-flow invariance, sampled at 32 phases
/// over a subset of grid nodes. Zero (to tolerance) means H is basic.
double basic_defect(const ScalarField& h, const ChartGrid& grid);

inline constexpr double kBasicTolerance = 1e-9;

/// Strictly contact vector field of a basic Hamiltonian; components come
/// from the pointwise frame solve and can be evaluated anywhere on the chart.
class ContactField {
public:
    ContactField(ScalarField hamiltonian, const ChartGrid& grid,
                 double basic_tolerance = kBasicTolerance);

    const ScalarField& hamiltonian() const { return hamiltonian_; }
    std::array<double, 3> components(const EvalEnv& bound_point) const;
    std::array<double, 3> components(std::span<const double> point) const;
    const ContactFrameSolver& solver() const { return solver_; }

private:
    ScalarField hamiltonian_;
    ContactFrameSolver solver_;
};

ContactField contact_vector_field(const ScalarField& h, const ChartGrid& grid);

/// Closed-form helicity (4 c(H)^2 - 3 c(H^2)) vol of the strictly contact
/// field of a basic Hamiltonian, against the canonical volume form.
HelicityResult helicity_contact(const ScalarField& h, const ChartGrid& grid);

/// Polarization (4 c(H) c(K) - 3 c(H K)) vol; symmetric and bilinear.
double relative_helicity_contact(const ScalarField& h, const ScalarField& k,
                                 const ChartGrid& grid);

/// Direct definition: integral of beta ^ d(beta) for a checked primitive of
/// iota_X mu; cross-checked against the integral of beta(X) mu.
HelicityResult helicity_direct(const ContactField& field, const PrimitiveReport& beta,
                               const ChartGrid& grid,
                               double residual_tolerance = kDefaultPrimitiveTolerance,
                               double agreement_tolerance = 1e-6);

/// Time trapezoid of the per-slice closed formula for a Hamiltonian H(., t)
/// that is basic at every time node.
HelicityResult helicity_timedep(const ScalarField& h_time, const ChartGrid& grid,
                                int time_nodes);

struct BoundsReport {
    double lower;
    double value;
    double upper;
    bool tight_lower;
    bool tight_upper;
};

/// -3 |H|_{L^2}^2 <= helicity <= |H|_{L^2}^2, with tightness flags for the
/// mean-zero and constant cases.
BoundsReport bounds_check(const ScalarField& h, const ChartGrid& grid);

struct LiftReport {
    double value;
    bool constant_input;
};

/// Helicity (c(F)^2 - c(F^2)) vol of the horizontal lift of a Hamiltonian
/// field on the base two-sphere; never positive, zero only for constants.
LiftReport horizontal_lift_helicity(const ScalarField& f_on_s2, const ChartGrid& s2_grid);

/// Average of a zonal basic Hamiltonian recovered as the d(alpha)-integral
/// over the filling disc {xi1 = 0}, oriented so that H = 1 gives +1.
/// Cross-checked against the volume average of H.
double filling_disc_average(const ScalarField& h, const ChartGrid& s3_grid);

struct SignedPoint {
    std::array<double, 2> point; // (phi, psi) on the two-sphere
    int sign;                    // +1 or -1
};

/// Fiber-linking pairing of the contact field of H = F o p with the circle
/// bundle over a balanced signed point set: minus the signed sum of F values.
double fiber_linking(const ScalarField& f_on_s2, std::span<const SignedPoint> points);

struct LimitReport {
    std::vector<double> values;
    std::vector<double> sup_gaps; // sup norm of consecutive differences
};

/// Closed-formula helicities along a sequence of basic Hamiltonians plus the
/// sup-norm gaps demonstrating Cauchy-in-sup implies Cauchy-in-helicity.
LimitReport helicity_limit(std::span<const ScalarField> sequence, const ChartGrid& grid);

} // namespace helicity
