#include "helicity/contact.hpp"

#include "helicity/errors.hpp"

#include <cmath>
#include <numbers>

namespace helicity {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

GridSummary summarize(const ChartGrid& grid) {
    return GridSummary{grid.manifold(), grid.resolution()};
}

double contact_formula(const ScalarField& h, const ChartGrid& grid) {
    const double mean = average(h, grid);
    ScalarField squared(h.manifold, h.expr * h.expr, true);
    const double mean_sq = average(squared, grid);
    return (4.0 * mean * mean - 3.0 * mean_sq) * total_volume(grid);
}

void require_basic(const ScalarField& h, const ChartGrid& grid, double tolerance) {
    const double scale = std::max(1.0, sup_norm(h, grid));
    if (basic_defect(h, grid) > tolerance * scale)
        throw DomainError(ErrorCode::NotBasic, "Hamiltonian is not Reeb-flow invariant");
}

} // namespace

const char* method_name(HelicityMethod method) {
    switch (method) {
        case HelicityMethod::ContactFormula: return "ContactFormula";
        case HelicityMethod::DirectQuadrature: return "DirectQuadrature";
        case HelicityMethod::TimeDependentFormula: return "TimeDependentFormula";
    }
    return "?";
}

double basic_defect(const ScalarField& h, const ChartGrid& grid) {
    const ManifoldId m = h.manifold;
    if (m != ManifoldId::Sphere3 && m != ManifoldId::Torus3)
        throw DomainError(ErrorCode::ManifoldMismatch, "basic functions live on s3 or t3");
    constexpr int kPhases = 32;
    // Subsample nodes so the check stays cheap on fine grids.
    const std::size_t stride = std::max<std::size_t>(1, grid.size() / 512);
    EvalEnv env;
    std::vector<double> point(3);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); i += stride) {
        grid.node(i, point);
        grid.bind(i, env);
        const double reference = h.expr.eval(env);
        for (int j = 1; j < kPhases; ++j) {
            const double s = kTwoPi * j / kPhases;
            if (m == ManifoldId::Sphere3) {
                // Reeb flow advances both Hopf angles at rate 2 pi; the phase
                // along the closed orbit is s/(2 pi) of a full period.
                env.set("xi1", std::fmod(point[1] + s, kTwoPi));
                env.set("xi2", std::fmod(point[2] + s, kTwoPi));
            } else {
                env.set("x", std::fmod(point[0] + s * std::cos(point[2]), kTwoPi));
                env.set("y", std::fmod(point[1] - s * std::sin(point[2]), kTwoPi));
            }
            worst = std::max(worst, std::abs(h.expr.eval(env) - reference));
        }
    }
    return worst;
}

ContactField::ContactField(ScalarField hamiltonian, const ChartGrid& grid, double basic_tolerance)
    : hamiltonian_(std::move(hamiltonian)), solver_(hamiltonian_.manifold, hamiltonian_.expr) {
    require_basic(hamiltonian_, grid, basic_tolerance);
}

std::array<double, 3> ContactField::components(const EvalEnv& bound_point) const {
    return solver_.solve(bound_point);
}

std::array<double, 3> ContactField::components(std::span<const double> point) const {
    const auto& axes = chart_axes(hamiltonian_.manifold);
    EvalEnv env;
    for (std::size_t i = 0; i < axes.size(); ++i) env.set(axes[i].var, point[i]);
    return solver_.solve(env);
}

ContactField contact_vector_field(const ScalarField& h, const ChartGrid& grid) {
    return ContactField(h, grid);
}

HelicityResult helicity_contact(const ScalarField& h, const ChartGrid& grid) {
    require_basic(h, grid, kBasicTolerance);
    return HelicityResult{contact_formula(h, grid), HelicityMethod::ContactFormula, std::nullopt,
                          summarize(grid)};
}

double relative_helicity_contact(const ScalarField& h, const ScalarField& k,
                                 const ChartGrid& grid) {
    require_basic(h, grid, kBasicTolerance);
    require_basic(k, grid, kBasicTolerance);
    const double ch = average(h, grid);
    const double ck = average(k, grid);
    ScalarField product(h.manifold, h.expr * k.expr, true);
    const double chk = average(product, grid);
    return (4.0 * ch * ck - 3.0 * chk) * total_volume(grid);
}

HelicityResult helicity_direct(const ContactField& field, const PrimitiveReport& beta,
                               const ChartGrid& grid, double residual_tolerance,
                               double agreement_tolerance) {
    if (beta.residual > residual_tolerance)
        throw DomainError(ErrorCode::ResidualTooLarge,
                          "primitive residual " + std::to_string(beta.residual) +
                              " exceeds tolerance");
    const KForm dbeta = exterior_derivative(beta.form);
    const double from_wedge = integrate(wedge(beta.form, dbeta), grid);

    // Second route: integral of beta(X) against the volume form.
    EvalEnv env;
    double pairing = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.bind(i, env);
        const auto x = field.components(env);
        double value = 0.0;
        for (std::size_t c = 0; c < 3; ++c) value += beta.form.coefficient(c).eval(env) * x[c];
        const double term = grid.weight(i) * grid.density(i) * value - comp;
        const double next = pairing + term;
        comp = (next - pairing) - term;
        pairing = next;
    }
    if (std::abs(from_wedge - pairing) > agreement_tolerance * (1.0 + std::abs(from_wedge)))
        throw DomainError(ErrorCode::ResidualTooLarge,
                          "beta ^ d(beta) and beta(X) mu quadratures disagree");
    return HelicityResult{from_wedge, HelicityMethod::DirectQuadrature, beta.residual,
                          summarize(grid)};
}

HelicityResult helicity_timedep(const ScalarField& h_time, const ChartGrid& grid,
                                int time_nodes) {
    if (time_nodes < 2)
        throw DomainError(ErrorCode::InvalidResolution, "need at least two time nodes");
    const double volume = total_volume(grid);
    const double step = 1.0 / time_nodes;
    double acc = 0.0;
    for (int k = 0; k <= time_nodes; ++k) {
        const double t = step * k;
        EvalEnv fixed;
        fixed.set("t", t);
        ScalarField slice(h_time.manifold, h_time.expr.substitute("t", Expr(t)), false);
        require_basic(slice, grid, kBasicTolerance);
        const double mean = average(slice, grid);
        ScalarField squared(slice.manifold, slice.expr * slice.expr);
        const double mean_sq = average(squared, grid);
        const double value = (4.0 * mean * mean - 3.0 * mean_sq) * volume;
        acc += (k == 0 || k == time_nodes) ? 0.5 * step * value : step * value;
    }
    return HelicityResult{acc, HelicityMethod::TimeDependentFormula, std::nullopt,
                          summarize(grid)};
}

BoundsReport bounds_check(const ScalarField& h, const ChartGrid& grid) {
    require_basic(h, grid, kBasicTolerance);
    const double norm_sq = l2_norm_sq(h, grid);
    const double value = contact_formula(h, grid);
    const double mean = average(h, grid);
    const double scale = std::max(1.0, sup_norm(h, grid));
    ScalarField centered(h.manifold, h.expr - Expr(mean), true);
    const bool mean_zero = std::abs(mean) <= 1e-10 * scale;
    const bool constant = sup_norm(centered, grid) <= 1e-10 * scale;
    return BoundsReport{-3.0 * norm_sq, value, norm_sq, mean_zero, constant};
}

LiftReport horizontal_lift_helicity(const ScalarField& f_on_s2, const ChartGrid& s2_grid) {
    if (f_on_s2.manifold != ManifoldId::Sphere2)
        throw DomainError(ErrorCode::ManifoldMismatch, "horizontal lift expects a base function");
    const double mean = average(f_on_s2, s2_grid);
    const double mean_sq = l2_norm_sq(f_on_s2, s2_grid) / total_volume(s2_grid);
    const double value = (mean * mean - mean_sq) * total_volume(s2_grid);
    const double scale = std::max(1.0, sup_norm(f_on_s2, s2_grid));
    ScalarField centered(f_on_s2.manifold, f_on_s2.expr - Expr(mean), true);
    const bool constant = sup_norm(centered, s2_grid) <= 1e-10 * scale;
    return LiftReport{value, constant};
}

double filling_disc_average(const ScalarField& h, const ChartGrid& s3_grid) {
    if (h.manifold != ManifoldId::Sphere3)
        throw DomainError(ErrorCode::ManifoldMismatch, "filling disc lives in s3");
    require_basic(h, s3_grid, kBasicTolerance);

    // D = {xi1 = 0}; integrate H d(alpha) with the orientation normalized by
    // the anchor H = 1 -> +1, i.e. (1/2pi) H sin(2 eta) d eta d xi2.
    std::vector<double> eta_nodes, eta_weights;
    gauss_legendre(s3_grid.resolution()[0], 0.0, std::numbers::pi / 2.0, eta_nodes, eta_weights);
    const int n_xi = s3_grid.resolution()[2];
    const double xi_weight = kTwoPi / n_xi;
    EvalEnv env;
    env.set("xi1", 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < eta_nodes.size(); ++i) {
        env.set("eta", eta_nodes[i]);
        double ring = 0.0;
        for (int j = 0; j < n_xi; ++j) {
            env.set("xi2", xi_weight * j);
            ring += h.expr.eval(env);
        }
        acc += eta_weights[i] * std::sin(2.0 * eta_nodes[i]) * xi_weight * ring / kTwoPi;
    }
    const double mean = average(h, s3_grid);
    if (std::abs(acc - mean) > 1e-8 * std::max(1.0, std::abs(mean)))
        throw DomainError(ErrorCode::ResidualTooLarge,
                          "filling-disc average disagrees with the volume average");
    return acc;
}

double fiber_linking(const ScalarField& f_on_s2, std::span<const SignedPoint> points) {
    if (f_on_s2.manifold != ManifoldId::Sphere2)
        throw DomainError(ErrorCode::ManifoldMismatch, "fiber linking expects a base function");
    long long total = 0;
    for (const auto& p : points) total += p.sign;
    if (total != 0)
        throw DomainError(ErrorCode::NotNullHomologous, "signs do not cancel");
    EvalEnv env;
    double acc = 0.0;
    for (const auto& p : points) {
        env.set("phi", p.point[0]);
        env.set("psi", p.point[1]);
        acc += static_cast<double>(p.sign) * f_on_s2.expr.eval(env);
    }
    return -acc;
}

LimitReport helicity_limit(std::span<const ScalarField> sequence, const ChartGrid& grid) {
    LimitReport report;
    report.values.reserve(sequence.size());
    for (const auto& h : sequence) {
        require_basic(h, grid, kBasicTolerance);
        report.values.push_back(contact_formula(h, grid));
    }
    for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
        ScalarField gap(sequence[i].manifold, sequence[i + 1].expr - sequence[i].expr, true);
        report.sup_gaps.push_back(sup_norm(gap, grid));
    }
    return report;
}

} // namespace helicity
