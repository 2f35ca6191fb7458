#include "helicity/calculus.hpp"

#include "helicity/errors.hpp"

#include <cmath>
#include <numbers>

namespace helicity {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class KahanSum {
public:
    void add(double term) {
        const double adjusted = term - comp_;
        const double next = sum_ + adjusted;
        comp_ = (next - sum_) - adjusted;
        sum_ = next;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

EvalEnv seeded_env(const EvalEnv* fixed) { return fixed ? *fixed : EvalEnv(); }

void require_manifold(ManifoldId expected, ManifoldId got, const char* what) {
    if (expected != got)
        throw DomainError(ErrorCode::ManifoldMismatch,
                          std::string(what) + ": expected " + std::string(manifold_token(expected)) +
                              ", got " + std::string(manifold_token(got)));
}

} // namespace

double integrate(const ScalarField& f, const ChartGrid& grid, const EvalEnv* fixed) {
    require_manifold(grid.manifold(), f.manifold, "integrate");
    EvalEnv env = seeded_env(fixed);
    KahanSum sum;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.bind(i, env);
        sum.add(grid.weight(i) * grid.density(i) * f.expr.eval(env));
    }
    return sum.value();
}

double integrate(const KForm& top_form, const ChartGrid& grid, const EvalEnv* fixed) {
    require_manifold(grid.manifold(), top_form.manifold(), "integrate");
    if (top_form.degree() != dimension(grid.manifold()))
        throw DomainError(ErrorCode::DegreeOverflow, "integrand must be a top-degree form");
    const Expr& coeff = top_form.coefficient(0);
    EvalEnv env = seeded_env(fixed);
    KahanSum sum;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.bind(i, env);
        sum.add(grid.weight(i) * coeff.eval(env));
    }
    return sum.value();
}

double average(const ScalarField& f, const ChartGrid& grid, const EvalEnv* fixed) {
    return integrate(f, grid, fixed) / total_volume(grid);
}

double l2_norm_sq(const ScalarField& f, const ChartGrid& grid, const EvalEnv* fixed) {
    ScalarField squared(f.manifold, f.expr * f.expr, true);
    return integrate(squared, grid, fixed);
}

double sup_norm(const ScalarField& f, const ChartGrid& grid, const EvalEnv* fixed) {
    require_manifold(grid.manifold(), f.manifold, "sup_norm");
    EvalEnv env = seeded_env(fixed);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.bind(i, env);
        worst = std::max(worst, std::abs(f.expr.eval(env)));
    }
    return worst;
}

double max_coefficient_gap(const KForm& a, const KForm& b, const ChartGrid& grid) {
    require_manifold(grid.manifold(), a.manifold(), "max_coefficient_gap");
    require_manifold(a.manifold(), b.manifold(), "max_coefficient_gap");
    if (a.degree() != b.degree())
        throw DomainError(ErrorCode::DegreeOverflow, "degree mismatch");
    EvalEnv env;
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.bind(i, env);
        for (std::size_t c = 0; c < a.coefficients().size(); ++c)
            worst = std::max(worst, std::abs(a.coefficient(c).eval(env) - b.coefficient(c).eval(env)));
    }
    return worst;
}

PrimitiveReport make_primitive_report(KForm beta, const Expr& hamiltonian,
                                      const ChartGrid& grid) {
    const KForm dbeta = exterior_derivative(beta);
    const ContactFrameSolver solver(grid.manifold(), hamiltonian);
    EvalEnv env;
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.bind(i, env);
        const auto target = solver.contraction_with_volume(env);
        for (std::size_t c = 0; c < 3; ++c)
            worst = std::max(worst, std::abs(dbeta.coefficient(c).eval(env) -
                                             target[c]));
    }
    return PrimitiveReport{std::move(beta), worst};
}

std::shared_ptr<const InterpTable> cumulative_table(const Expr& integrand,
                                                    const std::string& var, double x0,
                                                    double x1, int intervals,
                                                    const std::string& label) {
    std::vector<double> gl_nodes, gl_weights;
    gauss_legendre(8, 0.0, 1.0, gl_nodes, gl_weights);
    const double h = (x1 - x0) / intervals;
    std::vector<double> values(static_cast<std::size_t>(intervals) + 1);
    std::vector<double> derivs(static_cast<std::size_t>(intervals) + 1);
    EvalEnv env;
    env.set(var, x0);
    derivs[0] = integrand.eval(env);
    values[0] = 0.0;
    KahanSum acc;
    for (int cell = 0; cell < intervals; ++cell) {
        const double a = x0 + cell * h;
        for (std::size_t q = 0; q < gl_nodes.size(); ++q) {
            env.set(var, a + gl_nodes[q] * h);
            acc.add(h * gl_weights[q] * integrand.eval(env));
        }
        values[static_cast<std::size_t>(cell) + 1] = acc.value();
        env.set(var, a + h);
        derivs[static_cast<std::size_t>(cell) + 1] = integrand.eval(env);
    }
    return std::make_shared<InterpTable>(label, x0, x1, std::move(values), std::move(derivs));
}

double zonal_defect(const ScalarField& f, const ChartGrid& s2_grid) {
    require_manifold(ManifoldId::Sphere2, f.manifold, "zonal_defect");
    EvalEnv env;
    double worst = 0.0;
    for (double phi : s2_grid.axis_nodes(0)) {
        env.set("phi", phi);
        env.set("psi", s2_grid.axis_nodes(1).front());
        const double reference = f.expr.eval(env);
        for (double psi : s2_grid.axis_nodes(1)) {
            env.set("psi", psi);
            worst = std::max(worst, std::abs(f.expr.eval(env) - reference));
        }
    }
    return worst;
}

PrimitiveReport zonal_primitive(const ScalarField& zonal, const ChartGrid& s2_grid) {
    require_manifold(ManifoldId::Sphere2, zonal.manifold, "zonal_primitive");
    require_manifold(s2_grid.manifold(), zonal.manifold, "zonal_primitive");
    if (zonal_defect(zonal, s2_grid) > 1e-10)
        throw DomainError(ErrorCode::NotZonal, "input depends on psi");

    const double mean = average(zonal, s2_grid);
    // d(a(phi) d psi) = a'(phi) d phi ^ d psi must match (F - c_F) sin(phi)/(4 pi).
    const Expr phi = Expr::variable("phi");
    Expr profile = zonal.expr.substitute("psi", Expr()); // guard a stray psi-free occurrence
    const Expr integrand = (profile - Expr(mean)) * sin(phi) / (Expr(4.0) * Expr::pi());
    const auto table = cumulative_table(integrand, "phi", 0.0, std::numbers::pi, 512, "zonal_primitive");
    const Expr a_of_phi = Expr::interp(table, phi);
    KForm gamma(ManifoldId::Sphere2, 1, {Expr(), a_of_phi});

    const KForm dgamma = exterior_derivative(gamma);
    const KForm target = (profile - Expr(mean)) * area_form(ManifoldId::Sphere2);
    const double residual = max_coefficient_gap(dgamma, target, s2_grid);
    return PrimitiveReport{std::move(gamma), residual};
}

Expr hopf_pullback(const Expr& f_on_s2) {
    const Expr eta = Expr::variable("eta");
    const Expr xi1 = Expr::variable("xi1");
    const Expr xi2 = Expr::variable("xi2");
    return f_on_s2.substitute("phi", Expr(2.0) * eta).substitute("psi", xi1 - xi2);
}

PrimitiveReport beta_primitive_s3(const ScalarField& hamiltonian, const ChartGrid& s3_grid) {
    require_manifold(ManifoldId::Sphere3, hamiltonian.manifold, "beta_primitive_s3");
    require_manifold(s3_grid.manifold(), hamiltonian.manifold, "beta_primitive_s3");

    // H must be zonal basic: a function of eta alone in Hopf coordinates.
    {
        EvalEnv env;
        double worst = 0.0;
        double scale = 1.0;
        for (double eta : s3_grid.axis_nodes(0)) {
            env.set("eta", eta);
            env.set("xi1", 0.0);
            env.set("xi2", 0.0);
            const double reference = hamiltonian.expr.eval(env);
            scale = std::max(scale, std::abs(reference));
            for (double xi1 : s3_grid.axis_nodes(1)) {
                for (double xi2 : s3_grid.axis_nodes(2)) {
                    env.set("xi1", xi1);
                    env.set("xi2", xi2);
                    worst = std::max(worst, std::abs(hamiltonian.expr.eval(env) - reference));
                }
            }
        }
        if (worst > 1e-10 * scale)
            throw DomainError(ErrorCode::NotZonal, "Hamiltonian is not a zonal basic function");
    }

    // Descend to F(phi) = H(eta = phi/2) and take the zonal primitive there.
    Expr f_expr = hamiltonian.expr.substitute("xi1", Expr()).substitute("xi2", Expr());
    f_expr = f_expr.substitute("eta", Expr::variable("phi") / Expr(2.0));
    const int s2_res[2] = {std::max(2 * s3_grid.resolution()[0], 4),
                           std::max(s3_grid.resolution()[1], s3_grid.resolution()[2])};
    const ChartGrid s2_grid = make_grid(ManifoldId::Sphere2, std::span<const int>(s2_res, 2));
    const ScalarField f_field(ManifoldId::Sphere2, f_expr);
    const PrimitiveReport gamma = zonal_primitive(f_field, s2_grid);
    const double mean = average(f_field, s2_grid);

    // beta = 2 p^* gamma + (2 c_H - H) alpha.
    const Expr gamma_coeff = gamma.form.coefficient(1); // a(phi)
    const Expr pullback_a = gamma_coeff.substitute("phi", Expr(2.0) * Expr::variable("eta"));
    const KForm pulled(ManifoldId::Sphere3, 1, {Expr(), pullback_a, -pullback_a});
    const KForm beta = Expr(2.0) * pulled +
                       (Expr(2.0 * mean) - hamiltonian.expr) * contact_form(ManifoldId::Sphere3);
    return make_primitive_report(beta, hamiltonian.expr, s3_grid);
}

TorusPrimitive torus_primitives(const FourierSpectrum& spectrum, const ChartGrid& t3_grid) {
    require_manifold(ManifoldId::Torus3, t3_grid.manifold(), "torus_primitives");
    if (std::abs(spectrum.coeff(1)) > 1e-12 || std::abs(spectrum.coeff(-1)) > 1e-12)
        throw DomainError(ErrorCode::NotExact,
                          "flux obstruction: the n = 1 Fourier coefficient does not vanish");
    if (spectrum.reality_defect() > 1e-12)
        throw DomainError(ErrorCode::NotExact, "spectrum does not represent a real function");

    // F(z) = sum_n c_n (e^{i(n+1)z}/(n+1) - e^{i(n-1)z}/(n-1)); shifting the
    // summation index gives the m-th coefficient (c_{m-1} - c_{m+1})/m, m != 0.
    const int out_n = spectrum.max_index() + 1;
    FourierSpectrum f_series(out_n), g_series(out_n);
    for (int m = -out_n; m <= out_n; ++m) {
        if (m == 0) continue;
        const std::complex<double> lower = spectrum.coeff(m - 1);
        const std::complex<double> upper = spectrum.coeff(m + 1);
        const double denom = static_cast<double>(m);
        f_series.set(m, (lower - upper) / denom);
        g_series.set(m, std::complex<double>(0.0, 1.0) * (lower + upper) / denom);
    }

    const Expr z = Expr::variable("z");
    const Expr h_expr = spectrum.to_expr("z");
    const Expr f_expr = f_series.to_expr("z");
    const Expr g_expr = g_series.to_expr("z");
    // beta = F dx + G dy - H alpha with alpha = cos z dx - sin z dy.
    KForm beta(ManifoldId::Torus3, 1,
               {f_expr - h_expr * cos(z), g_expr + h_expr * sin(z), Expr()});
    PrimitiveReport report = make_primitive_report(std::move(beta), h_expr, t3_grid);
    return TorusPrimitive{std::move(f_series), std::move(g_series), f_expr, g_expr,
                          std::move(report.form), report.residual};
}

} // namespace helicity
