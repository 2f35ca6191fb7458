#include "helicity/manifold.hpp"

#include "helicity/errors.hpp"

#include <cmath>
#include <numbers>

namespace helicity {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<AxisSpec> build_axes(ManifoldId m) {
    switch (m) {
        case ManifoldId::Sphere3:
            return {{"eta", 0.0, kPi / 2.0, false}, {"xi1", 0.0, kTwoPi, true}, {"xi2", 0.0, kTwoPi, true}};
        case ManifoldId::Sphere2:
            return {{"phi", 0.0, kPi, false}, {"psi", 0.0, kTwoPi, true}};
        case ManifoldId::Torus3:
            return {{"x", 0.0, kTwoPi, true}, {"y", 0.0, kTwoPi, true}, {"z", 0.0, kTwoPi, true}};
        case ManifoldId::Torus2:
            return {{"x", 0.0, kTwoPi, true}, {"y", 0.0, kTwoPi, true}};
        case ManifoldId::SolidTorus:
            return {{"r", 0.0, 1.0, false}, {"theta", 0.0, kTwoPi, true}, {"t", 0.0, 1.0, true}};
        case ManifoldId::Disk2:
            return {{"r", 0.0, 1.0, false}, {"theta", 0.0, kTwoPi, true}};
    }
    return {};
}

} // namespace

int dimension(ManifoldId m) {
    switch (m) {
        case ManifoldId::Sphere3:
        case ManifoldId::Torus3:
        case ManifoldId::SolidTorus: return 3;
        default: return 2;
    }
}

const std::vector<AxisSpec>& chart_axes(ManifoldId m) {
    static const std::vector<AxisSpec> s3 = build_axes(ManifoldId::Sphere3);
    static const std::vector<AxisSpec> s2 = build_axes(ManifoldId::Sphere2);
    static const std::vector<AxisSpec> t3 = build_axes(ManifoldId::Torus3);
    static const std::vector<AxisSpec> t2 = build_axes(ManifoldId::Torus2);
    static const std::vector<AxisSpec> st = build_axes(ManifoldId::SolidTorus);
    static const std::vector<AxisSpec> d2 = build_axes(ManifoldId::Disk2);
    switch (m) {
        case ManifoldId::Sphere3: return s3;
        case ManifoldId::Sphere2: return s2;
        case ManifoldId::Torus3: return t3;
        case ManifoldId::Torus2: return t2;
        case ManifoldId::SolidTorus: return st;
        case ManifoldId::Disk2: return d2;
    }
    return s3;
}

Expr volume_density(ManifoldId m) {
    switch (m) {
        case ManifoldId::Sphere3:
            // alpha ^ d(alpha) = sin(2 eta)/(2 pi)^2 d(eta) ^ d(xi1) ^ d(xi2)
            return sin(Expr(2.0) * Expr::variable("eta")) / (Expr(4.0) * Expr::pi() * Expr::pi());
        case ManifoldId::Sphere2:
            return sin(Expr::variable("phi")) / (Expr(4.0) * Expr::pi());
        case ManifoldId::Torus3:
        case ManifoldId::Torus2: return Expr(1.0);
        case ManifoldId::SolidTorus:
        case ManifoldId::Disk2: return Expr::variable("r");
    }
    return Expr(1.0);
}

double exact_volume(ManifoldId m) {
    switch (m) {
        case ManifoldId::Sphere3:
        case ManifoldId::Sphere2: return 1.0;
        case ManifoldId::Torus3: return kTwoPi * kTwoPi * kTwoPi;
        case ManifoldId::Torus2: return kTwoPi * kTwoPi;
        case ManifoldId::SolidTorus:
        case ManifoldId::Disk2: return kPi;
    }
    return 0.0;
}

std::string_view manifold_token(ManifoldId m) {
    switch (m) {
        case ManifoldId::Sphere3: return "s3";
        case ManifoldId::Sphere2: return "s2";
        case ManifoldId::Torus3: return "t3";
        case ManifoldId::Torus2: return "t2";
        case ManifoldId::SolidTorus: return "solid-torus";
        case ManifoldId::Disk2: return "d2";
    }
    return "?";
}

std::optional<ManifoldId> manifold_from_token(std::string_view token) {
    if (token == "s3") return ManifoldId::Sphere3;
    if (token == "s2") return ManifoldId::Sphere2;
    if (token == "t3") return ManifoldId::Torus3;
    if (token == "t2") return ManifoldId::Torus2;
    if (token == "solid-torus") return ManifoldId::SolidTorus;
    if (token == "d2") return ManifoldId::Disk2;
    return std::nullopt;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - t * t) * dp * dp);
        nodes[i] = -t;
        nodes[n - 1 - i] = t;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    const double mid = 0.5 * (a + b), scale = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        nodes[i] = mid + scale * nodes[i];
        weights[i] *= scale;
    }
}

ChartGrid make_grid(ManifoldId m, std::span<const int> resolution) {
    const auto& axes = chart_axes(m);
    const int dim = static_cast<int>(axes.size());
    std::vector<int> res;
    if (resolution.size() == 1) {
        res.assign(dim, resolution[0]);
    } else if (static_cast<int>(resolution.size()) == dim) {
        res.assign(resolution.begin(), resolution.end());
    } else {
        throw DomainError(ErrorCode::InvalidResolution,
                          "expected 1 or " + std::to_string(dim) + " resolution entries");
    }
    for (int r : res)
        if (r < 4) throw DomainError(ErrorCode::InvalidResolution, "resolution must be at least 4");

    ChartGrid grid;
    grid.manifold_ = m;
    grid.resolution_ = res;
    grid.axes_nodes_.resize(dim);
    grid.axes_weights_.resize(dim);
    std::size_t total = 1;
    for (int axis = 0; axis < dim; ++axis) {
        const AxisSpec& spec = axes[axis];
        const int n = res[axis];
        if (spec.periodic) {
            // Uniform nodes with equal weights: the trapezoid rule on a
            // periodic axis, spectrally accurate for smooth integrands.
            const double h = (spec.hi - spec.lo) / n;
            auto& xs = grid.axes_nodes_[axis];
            auto& ws = grid.axes_weights_[axis];
            xs.resize(n);
            ws.assign(n, h);
            for (int j = 0; j < n; ++j) xs[j] = spec.lo + j * h;
        } else {
            gauss_legendre(n, spec.lo, spec.hi, grid.axes_nodes_[axis], grid.axes_weights_[axis]);
        }
        total *= static_cast<std::size_t>(n);
    }

    const Expr density = volume_density(m);
    grid.density_.resize(total);
    EvalEnv env;
    std::vector<double> point(dim);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        for (int axis = dim - 1; axis >= 0; --axis) {
            const std::size_t n = grid.axes_nodes_[axis].size();
            point[axis] = grid.axes_nodes_[axis][rest % n];
            rest /= n;
        }
        for (int axis = 0; axis < dim; ++axis) env.set(axes[axis].var, point[axis]);
        grid.density_[i] = density.eval(env);
    }
    return grid;
}

ChartGrid make_grid(ManifoldId m, int resolution) {
    const int res[1] = {resolution};
    return make_grid(m, std::span<const int>(res, 1));
}

void ChartGrid::node(std::size_t i, std::span<double> out) const {
    std::size_t rest = i;
    for (int axis = dim() - 1; axis >= 0; --axis) {
        const std::size_t n = axes_nodes_[axis].size();
        out[axis] = axes_nodes_[axis][rest % n];
        rest /= n;
    }
}

double ChartGrid::weight(std::size_t i) const {
    double w = 1.0;
    std::size_t rest = i;
    for (int axis = dim() - 1; axis >= 0; --axis) {
        const std::size_t n = axes_nodes_[axis].size();
        w *= axes_weights_[axis][rest % n];
        rest /= n;
    }
    return w;
}

void ChartGrid::bind(std::size_t i, EvalEnv& env) const {
    const auto& axes = chart_axes(manifold_);
    std::size_t rest = i;
    for (int axis = dim() - 1; axis >= 0; --axis) {
        const std::size_t n = axes_nodes_[axis].size();
        env.set(axes[axis].var, axes_nodes_[axis][rest % n]);
        rest /= n;
    }
}

double total_volume(const ChartGrid& grid) {
    // Kahan-compensated dot product of weights and densities.
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double term = grid.weight(i) * grid.density(i) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

std::array<double, 2> hopf_projection(const std::array<double, 3>& point) {
    double psi = std::fmod(point[1] - point[2], kTwoPi);
    if (psi < 0.0) psi += kTwoPi;
    return {2.0 * point[0], psi};
}

} // namespace helicity
