#include "helicity/calculus.hpp"
#include "helicity/errors.hpp"
#include "helicity/manifold.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace helicity;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("grid volumes match the canonical volumes") {
    CHECK(std::abs(total_volume(make_grid(ManifoldId::Sphere3, 32)) - 1.0) < 1e-10);
    CHECK(std::abs(total_volume(make_grid(ManifoldId::Torus3, 16)) - std::pow(kTwoPi, 3)) < 1e-9);
    CHECK(std::abs(total_volume(make_grid(ManifoldId::SolidTorus, 24)) - std::numbers::pi) < 1e-10);
    CHECK(std::abs(total_volume(make_grid(ManifoldId::Sphere2, 32)) - 1.0) < 1e-10);
    CHECK(std::abs(total_volume(make_grid(ManifoldId::Disk2, 16)) - std::numbers::pi) < 1e-12);
    CHECK(std::abs(total_volume(make_grid(ManifoldId::Torus2, 8)) - kTwoPi * kTwoPi) < 1e-10);
}

TEST_CASE("resolution below four is rejected") {
    CHECK_THROWS_AS(make_grid(ManifoldId::Sphere3, 3), DomainError);
    const int res[3] = {8, 3, 8};
    CHECK_THROWS_AS(make_grid(ManifoldId::Sphere3, std::span<const int>(res, 3)), DomainError);
    const int two[2] = {8, 8};
    CHECK_THROWS_AS(make_grid(ManifoldId::Sphere3, std::span<const int>(two, 2)), DomainError);
}

TEST_CASE("volume error decreases under resolution doubling") {
    for (ManifoldId m : {ManifoldId::Sphere3, ManifoldId::Sphere2, ManifoldId::Torus3,
                         ManifoldId::SolidTorus, ManifoldId::Disk2}) {
        CAPTURE(manifold_token(m));
        double previous = std::abs(total_volume(make_grid(m, 4)) - exact_volume(m));
        for (int res : {8, 16}) {
            const double error = std::abs(total_volume(make_grid(m, res)) - exact_volume(m));
            CHECK(error <= previous + 5e-15);
            previous = error;
        }
    }
}

TEST_CASE("nodes stay off the chart degeneracy loci") {
    const ChartGrid s3 = make_grid(ManifoldId::Sphere3, 16);
    CHECK(s3.axis_nodes(0).front() > 0.0);
    CHECK(s3.axis_nodes(0).back() < std::numbers::pi / 2.0);
    const ChartGrid d2 = make_grid(ManifoldId::Disk2, 16);
    CHECK(d2.axis_nodes(0).front() > 0.0);
    const ChartGrid s2 = make_grid(ManifoldId::Sphere2, 16);
    CHECK(s2.axis_nodes(0).front() > 0.0);
    CHECK(s2.axis_nodes(0).back() < std::numbers::pi);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    std::vector<double> nodes, weights;
    gauss_legendre(4, 0.0, 1.0, nodes, weights);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * std::pow(nodes[i], 7);
    CHECK(acc == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("hopf projection formula") {
    const auto a = hopf_projection({std::numbers::pi / 4.0, 1.0, 1.0});
    CHECK(a[0] == doctest::Approx(std::numbers::pi / 2.0));
    CHECK(a[1] == doctest::Approx(0.0));

    const auto b = hopf_projection({0.0, 2.5, 0.7});
    CHECK(b[0] == doctest::Approx(0.0));
    CHECK(b[1] == doctest::Approx(1.8));

    const auto c = hopf_projection({std::numbers::pi / 2.0, 3.0, 1.0});
    CHECK(c[0] == doctest::Approx(std::numbers::pi));
    CHECK(c[1] == doctest::Approx(2.0));

    const auto wrapped = hopf_projection({0.3, 0.5, 1.5});
    CHECK(wrapped[1] == doctest::Approx(kTwoPi - 1.0));
}

TEST_CASE("projected grid covers every cell of the base") {
    const ChartGrid s3 = make_grid(ManifoldId::Sphere3, 32);
    constexpr int kCells = 8;
    std::set<int> hit;
    std::vector<double> point(3);
    for (std::size_t i = 0; i < s3.size(); ++i) {
        s3.node(i, point);
        const auto [phi, psi] = hopf_projection({point[0], point[1], point[2]});
        const int cell_phi = std::min(kCells - 1, static_cast<int>(phi / std::numbers::pi * kCells));
        const int cell_psi = std::min(kCells - 1, static_cast<int>(psi / kTwoPi * kCells));
        hit.insert(cell_phi * kCells + cell_psi);
    }
    CHECK(hit.size() == kCells * kCells);
}

TEST_CASE("pullback through the projection preserves integrals") {
    const ChartGrid s3 = make_grid(ManifoldId::Sphere3, 32);
    const ChartGrid s2 = make_grid(ManifoldId::Sphere2, 64);
    const char* cases[] = {"cos(phi)", "cos(phi)^2", "sin(phi)*sin(psi)+cos(phi)^2",
                           "exp(cos(phi))"};
    for (const char* text : cases) {
        CAPTURE(text);
        const Expr f = parse_expr(text);
        const ScalarField base(ManifoldId::Sphere2, f);
        const ScalarField lifted(ManifoldId::Sphere3, hopf_pullback(f));
        CHECK(std::abs(integrate(lifted, s3) - integrate(base, s2)) < 1e-8);
    }
}

TEST_CASE("manifold tokens round-trip") {
    for (ManifoldId m : {ManifoldId::Sphere3, ManifoldId::Sphere2, ManifoldId::Torus3,
                         ManifoldId::Torus2, ManifoldId::SolidTorus, ManifoldId::Disk2}) {
        CHECK(manifold_from_token(manifold_token(m)) == m);
    }
    CHECK(!manifold_from_token("s4").has_value());
}
