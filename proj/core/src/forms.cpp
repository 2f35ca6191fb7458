#include "helicity/forms.hpp"

#include "helicity/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace helicity {

namespace {

void validate_variables(ManifoldId m, const Expr& e, bool allow_time) {
    const auto& axes = chart_axes(m);
    for (const auto& var : e.variables()) {
        if (allow_time && var == "t") continue;
        bool known = false;
        for (const auto& axis : axes)
            if (axis.var == var) known = true;
        if (!known)
            throw DomainError(ErrorCode::UnknownIdentifier,
                              "variable '" + var + "' is not a coordinate of " +
                                  std::string(manifold_token(m)));
    }
}

void require_same_manifold(ManifoldId a, ManifoldId b) {
    if (a != b)
        throw DomainError(ErrorCode::ManifoldMismatch,
                          std::string(manifold_token(a)) + " vs " + std::string(manifold_token(b)));
}

// Sign of dx_j ^ dx_I relative to the sorted merge, 0 if j already occurs.
int insertion_sign(int j, const std::vector<int>& index_set) {
    int below = 0;
    for (int i : index_set) {
        if (i == j) return 0;
        if (i < j) ++below;
    }
    return below % 2 == 0 ? 1 : -1;
}

// Sign of dx_I ^ dx_J relative to the sorted merge, 0 on overlap.
int merge_sign(const std::vector<int>& lhs, const std::vector<int>& rhs, std::vector<int>& merged) {
    merged.clear();
    int inversions = 0;
    for (int j : rhs) {
        int above = 0;
        for (int i : lhs) {
            if (i == j) return 0;
            if (i > j) ++above;
        }
        inversions += above;
    }
    merged = lhs;
    merged.insert(merged.end(), rhs.begin(), rhs.end());
    std::sort(merged.begin(), merged.end());
    return inversions % 2 == 0 ? 1 : -1;
}

int basis_position(int dim, int degree, const std::vector<int>& index_set) {
    const auto& basis = form_basis(dim, degree);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == index_set) return static_cast<int>(i);
    return -1;
}

} // namespace

ScalarField::ScalarField(ManifoldId m, Expr e, bool allow_time)
    : manifold(m), expr(std::move(e)) {
    validate_variables(m, expr, allow_time);
}

VectorField::VectorField(ManifoldId m, std::vector<Expr> comps, bool allow_time)
    : manifold(m), components(std::move(comps)) {
    if (static_cast<int>(components.size()) != dimension(m))
        throw DomainError(ErrorCode::ManifoldMismatch,
                          "component count does not match chart dimension");
    for (const Expr& c : components) validate_variables(m, c, allow_time);
}

const std::vector<std::vector<int>>& form_basis(int dim, int degree) {
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    auto key = std::make_pair(dim, degree);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<std::vector<int>> basis;
    std::vector<int> current;
    // Lexicographic enumeration of increasing index tuples.
    auto recurse = [&](auto&& self, int start) -> void {
        if (static_cast<int>(current.size()) == degree) {
            basis.push_back(current);
            return;
        }
        for (int i = start; i < dim; ++i) {
            current.push_back(i);
            self(self, i + 1);
            current.pop_back();
        }
    };
    recurse(recurse, 0);
    return cache.emplace(key, std::move(basis)).first->second;
}

int form_rank(int dim, int degree) {
    return static_cast<int>(form_basis(dim, degree).size());
}

KForm::KForm(ManifoldId m, int degree, std::vector<Expr> coefficients, bool allow_time)
    : manifold_(m), degree_(degree), coeffs_(std::move(coefficients)) {
    const int dim = dimension(m);
    if (degree < 0 || degree > dim)
        throw DomainError(ErrorCode::DegreeOverflow,
                          "degree " + std::to_string(degree) + " on a " + std::to_string(dim) +
                              "-dimensional chart");
    if (static_cast<int>(coeffs_.size()) != form_rank(dim, degree))
        throw DomainError(ErrorCode::ManifoldMismatch, "coefficient count does not match degree");
    for (const Expr& c : coeffs_) validate_variables(m, c, allow_time);
}

KForm KForm::zero(ManifoldId m, int degree) {
    return KForm(m, degree, std::vector<Expr>(form_rank(dimension(m), degree)), true);
}

KForm exterior_derivative(const KForm& form) {
    const int dim = dimension(form.manifold());
    if (form.degree() >= dim)
        throw DomainError(ErrorCode::DegreeOverflow, "cannot raise degree above the dimension");
    const auto& axes = chart_axes(form.manifold());
    const auto& basis = form_basis(dim, form.degree());
    std::vector<Expr> out(form_rank(dim, form.degree() + 1));
    for (std::size_t b = 0; b < basis.size(); ++b) {
        const Expr& coeff = form.coefficient(b);
        for (int j = 0; j < dim; ++j) {
            const int sign = insertion_sign(j, basis[b]);
            if (sign == 0) continue;
            Expr partial = coeff.diff(axes[j].var);
            if (partial.is_zero()) continue;
            std::vector<int> merged = basis[b];
            merged.push_back(j);
            std::sort(merged.begin(), merged.end());
            const int pos = basis_position(dim, form.degree() + 1, merged);
            out[pos] = sign > 0 ? out[pos] + partial : out[pos] - partial;
        }
    }
    return KForm(form.manifold(), form.degree() + 1, std::move(out), true);
}

KForm wedge(const KForm& a, const KForm& b) {
    require_same_manifold(a.manifold(), b.manifold());
    const int dim = dimension(a.manifold());
    const int degree = a.degree() + b.degree();
    if (degree > dim)
        throw DomainError(ErrorCode::DegreeOverflow, "wedge degrees exceed the dimension");
    const auto& basis_a = form_basis(dim, a.degree());
    const auto& basis_b = form_basis(dim, b.degree());
    std::vector<Expr> out(form_rank(dim, degree));
    std::vector<int> merged;
    for (std::size_t i = 0; i < basis_a.size(); ++i) {
        if (a.coefficient(i).is_zero()) continue;
        for (std::size_t j = 0; j < basis_b.size(); ++j) {
            if (b.coefficient(j).is_zero()) continue;
            const int sign = merge_sign(basis_a[i], basis_b[j], merged);
            if (sign == 0) continue;
            const int pos = basis_position(dim, degree, merged);
            Expr term = a.coefficient(i) * b.coefficient(j);
            out[pos] = sign > 0 ? out[pos] + term : out[pos] - term;
        }
    }
    return KForm(a.manifold(), degree, std::move(out), true);
}

KForm contract(const VectorField& field, const KForm& form) {
    require_same_manifold(field.manifold, form.manifold());
    if (form.degree() < 1)
        throw DomainError(ErrorCode::DegreeOverflow, "cannot contract a 0-form");
    const int dim = dimension(form.manifold());
    const auto& basis = form_basis(dim, form.degree());
    std::vector<Expr> out(form_rank(dim, form.degree() - 1));
    for (std::size_t b = 0; b < basis.size(); ++b) {
        if (form.coefficient(b).is_zero()) continue;
        for (std::size_t m = 0; m < basis[b].size(); ++m) {
            std::vector<int> rest = basis[b];
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(m));
            const int pos = basis_position(dim, form.degree() - 1, rest);
            Expr term = field.components[basis[b][m]] * form.coefficient(b);
            out[pos] = m % 2 == 0 ? out[pos] + term : out[pos] - term;
        }
    }
    return KForm(form.manifold(), form.degree() - 1, std::move(out), true);
}

KForm operator+(const KForm& a, const KForm& b) {
    require_same_manifold(a.manifold(), b.manifold());
    if (a.degree() != b.degree())
        throw DomainError(ErrorCode::DegreeOverflow, "cannot add forms of different degree");
    std::vector<Expr> out;
    out.reserve(a.coefficients().size());
    for (std::size_t i = 0; i < a.coefficients().size(); ++i)
        out.push_back(a.coefficient(i) + b.coefficient(i));
    return KForm(a.manifold(), a.degree(), std::move(out), true);
}

KForm operator-(const KForm& a, const KForm& b) {
    require_same_manifold(a.manifold(), b.manifold());
    if (a.degree() != b.degree())
        throw DomainError(ErrorCode::DegreeOverflow, "cannot subtract forms of different degree");
    std::vector<Expr> out;
    out.reserve(a.coefficients().size());
    for (std::size_t i = 0; i < a.coefficients().size(); ++i)
        out.push_back(a.coefficient(i) - b.coefficient(i));
    return KForm(a.manifold(), a.degree(), std::move(out), true);
}

KForm operator*(const Expr& scalar, const KForm& form) {
    std::vector<Expr> out;
    out.reserve(form.coefficients().size());
    for (const Expr& c : form.coefficients()) out.push_back(scalar * c);
    return KForm(form.manifold(), form.degree(), std::move(out), true);
}

KForm contact_form(ManifoldId m) {
    if (m == ManifoldId::Sphere3) {
        const Expr eta = Expr::variable("eta");
        const Expr inv = Expr(1.0) / (Expr(2.0) * Expr::pi());
        return KForm(m, 1, {Expr(), inv * sin(eta) * sin(eta), inv * cos(eta) * cos(eta)});
    }
    if (m == ManifoldId::Torus3) {
        const Expr z = Expr::variable("z");
        return KForm(m, 1, {cos(z), -sin(z), Expr()});
    }
    throw DomainError(ErrorCode::ManifoldMismatch, "no canonical contact form on this chart");
}

KForm area_form(ManifoldId m) {
    if (m == ManifoldId::Sphere2) {
        const Expr phi = Expr::variable("phi");
        return KForm(m, 2, {sin(phi) / (Expr(4.0) * Expr::pi())});
    }
    if (m == ManifoldId::Disk2) return KForm(m, 2, {Expr::variable("r")});
    throw DomainError(ErrorCode::ManifoldMismatch, "no canonical area form on this chart");
}

KForm volume_form(ManifoldId m) {
    return KForm(m, dimension(m), {volume_density(m)});
}

VectorField reeb_field(ManifoldId m) {
    if (m == ManifoldId::Sphere3) {
        const Expr two_pi = Expr(2.0) * Expr::pi();
        return VectorField(m, {Expr(), two_pi, two_pi});
    }
    if (m == ManifoldId::Torus3) {
        const Expr z = Expr::variable("z");
        return VectorField(m, {cos(z), -sin(z), Expr()});
    }
    throw DomainError(ErrorCode::ManifoldMismatch, "no Reeb field on this chart");
}

ContactFrameSolver::ContactFrameSolver(ManifoldId m, Expr hamiltonian, bool allow_time)
    : manifold_(m), hamiltonian_(std::move(hamiltonian)) {
    if (dimension(m) != 3 || (m != ManifoldId::Sphere3 && m != ManifoldId::Torus3))
        throw DomainError(ErrorCode::ManifoldMismatch, "contact frame solve needs s3 or t3");
    validate_variables(m, hamiltonian_, allow_time);
    const KForm alpha = contact_form(m);
    const KForm dalpha = exterior_derivative(alpha);
    const auto& axes = chart_axes(m);
    for (int i = 0; i < 3; ++i) {
        alpha_[i] = alpha.coefficient(static_cast<std::size_t>(i));
        dalpha_[i] = dalpha.coefficient(static_cast<std::size_t>(i));
        grad_h_[i] = hamiltonian_.diff(axes[i].var);
    }
    density_ = volume_density(m);
}

std::array<double, 3> ContactFrameSolver::solve(const EvalEnv& env) const {
    const double a0 = alpha_[0].eval(env), a1 = alpha_[1].eval(env), a2 = alpha_[2].eval(env);
    const double d01 = dalpha_[0].eval(env), d02 = dalpha_[1].eval(env), d12 = dalpha_[2].eval(env);
    const double h = hamiltonian_.eval(env);
    const double g0 = grad_h_[0].eval(env), g1 = grad_h_[1].eval(env), g2 = grad_h_[2].eval(env);

    // Rows of the 4x3 system: alpha(X) = H and d(alpha)(X, e_j) = -dH(e_j).
    double A[4][3] = {
        {a0, a1, a2},
        {0.0, -d01, -d02}, // d(alpha)(X, e_0) = -X1 d01 - X2 d02
        {d01, 0.0, -d12},  // d(alpha)(X, e_1) =  X0 d01 - X2 d12
        {d02, d12, 0.0},   // d(alpha)(X, e_2) =  X0 d02 + X1 d12
    };
    double b[4] = {h, -g0, -g1, -g2};

    double M[3][3] = {};
    double rhs[3] = {};
    for (int r = 0; r < 4; ++r) {
        for (int i = 0; i < 3; ++i) {
            rhs[i] += A[r][i] * b[r];
            for (int j = 0; j < 3; ++j) M[i][j] += A[r][i] * A[r][j];
        }
    }

    // Gaussian elimination with partial pivoting on the 3x3 normal equations.
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(M[perm[r]][col]) > std::abs(M[perm[pivot]][col])) pivot = r;
        std::swap(perm[col], perm[pivot]);
        const double diag = M[perm[col]][col];
        if (std::abs(diag) < 1e-300)
            throw DomainError(ErrorCode::ChartDegeneracy, "singular frame solve");
        for (int r = col + 1; r < 3; ++r) {
            const double factor = M[perm[r]][col] / diag;
            for (int c = col; c < 3; ++c) M[perm[r]][c] -= factor * M[perm[col]][c];
            rhs[perm[r]] -= factor * rhs[perm[col]];
        }
    }
    std::array<double, 3> x{};
    for (int col = 2; col >= 0; --col) {
        double acc = rhs[perm[col]];
        for (int c = col + 1; c < 3; ++c) acc -= M[perm[col]][c] * x[static_cast<std::size_t>(c)];
        x[static_cast<std::size_t>(col)] = acc / M[perm[col]][col];
    }
    return x;
}

std::array<double, 3> ContactFrameSolver::contraction_with_volume(const EvalEnv& env) const {
    const auto x = solve(env);
    const double rho = density_.eval(env);
    // iota_X (rho dx0^dx1^dx2) = rho (X0 dx1^dx2 - X1 dx0^dx2 + X2 dx0^dx1).
    return {rho * x[2], -rho * x[1], rho * x[0]};
}

} // namespace helicity
