#pragma once

#include "helicity/expr.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace helicity {

/// The model manifolds. Each carries one fixed coordinate box; quadrature
/// nodes stay strictly inside it, so chart-degeneracy loci are never sampled.
enum class ManifoldId { Sphere3, Sphere2, Torus3, Torus2, SolidTorus, Disk2 };

struct AxisSpec {
    std::string var;
    double lo;
    double hi;
    bool periodic;
};

int dimension(ManifoldId m);
const std::vector<AxisSpec>& chart_axes(ManifoldId m);

/// Density of the canonical volume form against the positively oriented
/// coordinate top-form (e.g. sin(2 eta)/(2 pi)^2 for the three-sphere).
Expr volume_density(ManifoldId m);
double exact_volume(ManifoldId m);

/// Lowercase CLI/JSON token: "s3", "s2", "t3", "t2", "solid-torus", "d2".
std::string_view manifold_token(ManifoldId m);
std::optional<ManifoldId> manifold_from_token(std::string_view token);

/// Tensor-product quadrature grid for one chart: Gauss-Legendre on bounded
/// axes, uniform nodes on periodic axes, volume density pre-evaluated at the
/// nodes. Immutable after construction.
class ChartGrid {
public:
    ManifoldId manifold() const { return manifold_; }
    int dim() const { return static_cast<int>(axes_nodes_.size()); }
    std::size_t size() const { return density_.size(); }

    void node(std::size_t i, std::span<double> out) const;
    double weight(std::size_t i) const;
    double density(std::size_t i) const { return density_[i]; }

    const std::vector<double>& axis_nodes(int axis) const { return axes_nodes_[axis]; }
    const std::vector<double>& axis_weights(int axis) const { return axes_weights_[axis]; }
    const std::vector<int>& resolution() const { return resolution_; }

    /// Bind the chart variables of node i into an evaluation environment.
    void bind(std::size_t i, EvalEnv& env) const;

private:
    friend ChartGrid make_grid(ManifoldId, std::span<const int>);
    ManifoldId manifold_ = ManifoldId::Sphere3;
    std::vector<int> resolution_;
    std::vector<std::vector<double>> axes_nodes_;
    std::vector<std::vector<double>> axes_weights_;
    std::vector<double> density_; // flattened, axis 0 slowest
};

/// Build a grid with the given per-axis resolution (a single entry is
/// broadcast to every axis). Every resolution must be at least 4.
ChartGrid make_grid(ManifoldId m, std::span<const int> resolution);
ChartGrid make_grid(ManifoldId m, int resolution);

double total_volume(const ChartGrid& grid);

/// Hopf bundle projection in Hopf/spherical coordinates:
/// (eta, xi1, xi2) -> (2 eta, (xi1 - xi2) mod 2 pi).
std::array<double, 2> hopf_projection(const std::array<double, 3>& point);

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

} // namespace helicity
