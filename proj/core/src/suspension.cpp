#include "helicity/suspension.hpp"

#include "helicity/errors.hpp"

#include <cmath>
#include <numbers>

namespace helicity {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_spec_vars(const Expr& hamiltonian) {
    for (const auto& var : hamiltonian.variables()) {
        if (var != "r" && var != "theta" && var != "t")
            throw DomainError(ErrorCode::UnknownIdentifier,
                              "isotopy Hamiltonians use (r, theta, t); got '" + var + "'");
    }
}

ChartGrid disk_grid_like(const ChartGrid& torus_grid) {
    const int res[2] = {torus_grid.resolution()[0], torus_grid.resolution()[1]};
    return make_grid(ManifoldId::Disk2, std::span<const int>(res, 2));
}

KForm suspension_primitive(const IsotopySpec& spec) {
    // beta = F dt + lambda with lambda = (r^2/2) d theta, so that
    // d beta = dF ^ dt + omega = iota_X (omega ^ dt).
    const Expr r = Expr::variable("r");
    return KForm(ManifoldId::SolidTorus, 1, {Expr(), r * r / Expr(2.0), spec.hamiltonian},
                 true);
}

} // namespace

IsotopySpec::IsotopySpec(Expr h, double support)
    : hamiltonian(std::move(h)), support_radius(support) {
    validate_spec_vars(hamiltonian);
    if (!(support > 0.0) || !(support < 1.0))
        throw DomainError(ErrorCode::NotCompactlySupported,
                          "support radius must lie strictly inside the disk");
}

void check_support(const IsotopySpec& spec, double tolerance) {
    const Expr& f = spec.hamiltonian;
    const Expr partials[4] = {f, f.diff("r"), f.diff("theta"), f.diff("t")};

    // Scale from an interior sample so the vanishing test is relative.
    EvalEnv env;
    double scale = 1.0;
    for (int i = 0; i <= 8; ++i) {
        env.set("r", 0.05 + 0.1 * i);
        for (int j = 0; j < 8; ++j) {
            env.set("theta", kTwoPi * j / 8);
            for (int k = 0; k < 4; ++k) {
                env.set("t", 0.25 * k);
                scale = std::max(scale, std::abs(f.eval(env)));
            }
        }
    }
    for (int i = 0; i <= 16; ++i) {
        env.set("r", spec.support_radius + (1.0 - spec.support_radius) * i / 16.0);
        for (int j = 0; j < 16; ++j) {
            env.set("theta", kTwoPi * j / 16);
            for (int k = 0; k < 8; ++k) {
                env.set("t", k / 8.0);
                for (const Expr& g : partials) {
                    if (std::abs(g.eval(env)) > tolerance * scale)
                        throw DomainError(ErrorCode::NotCompactlySupported,
                                          "Hamiltonian does not vanish beyond the support radius");
                }
            }
        }
    }
}

double calabi(const IsotopySpec& spec, const ChartGrid& disk_grid, int time_nodes) {
    if (disk_grid.manifold() != ManifoldId::Disk2)
        throw DomainError(ErrorCode::ManifoldMismatch, "Calabi integrates over the disk");
    check_support(spec);
    if (time_nodes < 1)
        throw DomainError(ErrorCode::InvalidResolution, "need at least one time node");
    // Uniform nodes on [0,1), matching the t-axis of solid-torus grids.
    double acc = 0.0;
    for (int k = 0; k < time_nodes; ++k) {
        ScalarField slice(ManifoldId::Disk2,
                          spec.hamiltonian.substitute("t", Expr(static_cast<double>(k) / time_nodes)));
        acc += integrate(slice, disk_grid) / time_nodes;
    }
    return acc;
}

SuspensionField suspension_field(const IsotopySpec& spec) {
    check_support(spec);
    const Expr r = Expr::variable("r");
    const Expr radial = spec.hamiltonian.diff("theta") / r;
    const Expr angular = -spec.hamiltonian.diff("r") / r;
    return SuspensionField{
        VectorField(ManifoldId::SolidTorus, {radial, angular, Expr(1.0)}, true), spec};
}

HelicityResult suspension_helicity_direct(const IsotopySpec& spec,
                                          const ChartGrid& torus_grid) {
    if (torus_grid.manifold() != ManifoldId::SolidTorus)
        throw DomainError(ErrorCode::ManifoldMismatch, "expected a solid-torus grid");
    check_support(spec);
    const KForm beta = suspension_primitive(spec);
    const KForm dbeta = exterior_derivative(beta);
    const double value = integrate(wedge(beta, dbeta), torus_grid);

    const SuspensionField suspension = suspension_field(spec);
    const double residual = max_coefficient_gap(
        dbeta, contract(suspension.field, volume_form(ManifoldId::SolidTorus)), torus_grid);

    const double cal = calabi(spec, disk_grid_like(torus_grid), torus_grid.resolution()[2]);
    if (std::abs(value - 2.0 * cal) > 1e-6 * (1.0 + std::abs(cal)))
        throw DomainError(ErrorCode::ResidualTooLarge,
                          "direct helicity disagrees with twice the Calabi invariant");
    return HelicityResult{value, HelicityMethod::DirectQuadrature, residual,
                          GridSummary{torus_grid.manifold(), torus_grid.resolution()}};
}

double relative_helicity_suspension(const IsotopySpec& spec, const ChartGrid& torus_grid) {
    if (torus_grid.manifold() != ManifoldId::SolidTorus)
        throw DomainError(ErrorCode::ManifoldMismatch, "expected a solid-torus grid");
    check_support(spec);
    // beta_X = F dt against d(lambda) = omega.
    const KForm beta_x(ManifoldId::SolidTorus, 1, {Expr(), Expr(), spec.hamiltonian}, true);
    const Expr r = Expr::variable("r");
    const KForm lambda(ManifoldId::SolidTorus, 1, {Expr(), r * r / Expr(2.0), Expr()});
    const double value = integrate(wedge(beta_x, exterior_derivative(lambda)), torus_grid);
    const double cal = calabi(spec, disk_grid_like(torus_grid), torus_grid.resolution()[2]);
    if (std::abs(value - cal) > 1e-6 * (1.0 + std::abs(cal)))
        throw DomainError(ErrorCode::ResidualTooLarge,
                          "relative helicity disagrees with the Calabi invariant");
    return value;
}

std::array<double, 3> embed_tau(int index, const std::array<double, 3>& point) {
    const double r = point[0], theta = point[1], t = point[2];
    auto wrap = [](double angle) {
        double out = std::fmod(angle, kTwoPi);
        return out < 0.0 ? out + kTwoPi : out;
    };
    if (index == 1) return {0.5 * std::asin(r), wrap(theta + kTwoPi * t), wrap(kTwoPi * t)};
    if (index == 2)
        return {0.5 * (kPi - std::asin(r)), wrap(kTwoPi * t), wrap(theta + kTwoPi * t)};
    throw DomainError(ErrorCode::ManifoldMismatch, "embedding index must be 1 or 2");
}

std::array<double, 3> pushforward_tau(int index, const SuspensionField& field,
                                      const std::array<double, 3>& point) {
    EvalEnv env{{"r", point[0]}, {"theta", point[1]}, {"t", point[2]}};
    const double xr = field.field.components[0].eval(env);
    const double xtheta = field.field.components[1].eval(env);
    const double xt = field.field.components[2].eval(env);
    const double slope = 0.5 / std::sqrt(1.0 - point[0] * point[0]); // d eta / d r
    const double deta = xr == 0.0 ? 0.0 : slope * xr;
    if (index == 1) return {deta, xtheta + kTwoPi * xt, kTwoPi * xt};
    if (index == 2) return {-deta, kTwoPi * xt, xtheta + kTwoPi * xt};
    throw DomainError(ErrorCode::ManifoldMismatch, "embedding index must be 1 or 2");
}

DoubleSuspensionReport double_suspension_helicity(const IsotopySpec& spec1,
                                                  const IsotopySpec& spec2,
                                                  const ChartGrid& torus_grid,
                                                  const ChartGrid& s3_grid) {
    if (torus_grid.manifold() != ManifoldId::SolidTorus ||
        s3_grid.manifold() != ManifoldId::Sphere3)
        throw DomainError(ErrorCode::ManifoldMismatch, "double suspension grids");
    check_support(spec1);
    check_support(spec2);

    const ChartGrid disk = disk_grid_like(torus_grid);
    const int t_nodes = torus_grid.resolution()[2];
    const double cal1 = calabi(spec1, disk, t_nodes);
    const double cal2 = calabi(spec2, disk, t_nodes);

    const double two_pi_sq = 2.0 * kPi * kPi;
    const double formula = two_pi_sq * (cal1 + cal2 + two_pi_sq);

    // Termwise, against the glued volume of total volume 2 pi: the two disk
    // components have vanishing helicity (beta_X = F dt wedges to zero with
    // its own differential), the cross terms against the Reeb part are the
    // Calabi invariants, and the Reeb term contributes (2 pi)^2.
    double h_sum = 0.0;
    for (const IsotopySpec* spec : {&spec1, &spec2}) {
        const KForm beta_x(ManifoldId::SolidTorus, 1, {Expr(), Expr(), spec->hamiltonian}, true);
        h_sum += integrate(wedge(beta_x, exterior_derivative(beta_x)), torus_grid);
    }
    const double r_reeb = relative_helicity_suspension(spec1, torus_grid) +
                          relative_helicity_suspension(spec2, torus_grid);
    const ScalarField one(ManifoldId::Sphere3, Expr(1.0));
    const double h_reeb = (kTwoPi * kTwoPi) * helicity_contact(one, s3_grid).value;

    const double termwise = kPi * kPi * (h_sum + 2.0 * r_reeb + h_reeb);
    return DoubleSuspensionReport{cal1, cal2, formula, h_sum, r_reeb, h_reeb, termwise};
}

Expr radial_twist_hamiltonian(const Expr& rho_of_r, int table_intervals) {
    for (const auto& var : rho_of_r.variables()) {
        if (var != "r")
            throw DomainError(ErrorCode::UnknownIdentifier, "twist profile must depend on r only");
    }
    const Expr integrand = Expr::variable("r") * rho_of_r;
    const auto table = cumulative_table(integrand, "r", 0.0, 1.0, table_intervals, "twist");
    EvalEnv env{{"r", 1.0}};
    const double full = Expr::interp(table, Expr::variable("r")).eval(env);
    return Expr(full) - Expr::interp(table, Expr::variable("r"));
}

} // namespace helicity
