#include "helicity/calculus.hpp"
#include "helicity/conjugacy.hpp"
#include "helicity/contact.hpp"
#include "helicity/suspension.hpp"

#include <benchmark/benchmark.h>

using namespace helicity;

namespace {

void bm_make_grid_s3(benchmark::State& state) {
    const int res = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(make_grid(ManifoldId::Sphere3, res));
}
BENCHMARK(bm_make_grid_s3)->Arg(16)->Arg(32)->Arg(48);

void bm_integrate_s3(benchmark::State& state) {
    const ChartGrid grid = make_grid(ManifoldId::Sphere3, static_cast<int>(state.range(0)));
    const ScalarField h(ManifoldId::Sphere3, parse_expr("cos(2*eta)^2"));
    for (auto _ : state) benchmark::DoNotOptimize(integrate(h, grid));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(grid.size()));
}
BENCHMARK(bm_integrate_s3)->Arg(16)->Arg(32)->Arg(48);

void bm_helicity_contact(benchmark::State& state) {
    const ChartGrid grid = make_grid(ManifoldId::Sphere3, static_cast<int>(state.range(0)));
    const ScalarField h(ManifoldId::Sphere3, parse_expr("cos(2*eta)"));
    for (auto _ : state) benchmark::DoNotOptimize(helicity_contact(h, grid).value);
}
BENCHMARK(bm_helicity_contact)->Arg(32)->Arg(48);

void bm_helicity_direct(benchmark::State& state) {
    const ChartGrid grid = make_grid(ManifoldId::Sphere3, static_cast<int>(state.range(0)));
    const ScalarField h(ManifoldId::Sphere3, parse_expr("cos(2*eta)"));
    const auto beta = beta_primitive_s3(h, grid);
    const ContactField field(h, grid);
    for (auto _ : state) benchmark::DoNotOptimize(helicity_direct(field, beta, grid).value);
}
BENCHMARK(bm_helicity_direct)->Arg(24)->Arg(32);

void bm_suspension_direct(benchmark::State& state) {
    const int res[3] = {static_cast<int>(state.range(0)), 16, 8};
    const ChartGrid torus = make_grid(ManifoldId::SolidTorus, std::span<const int>(res, 3));
    const IsotopySpec spec(radial_twist_hamiltonian(parse_expr("bump(r/0.9)")), 0.9);
    for (auto _ : state)
        benchmark::DoNotOptimize(suspension_helicity_direct(spec, torus).value);
}
BENCHMARK(bm_suspension_direct)->Arg(32)->Arg(64);

void bm_split_function(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    FourierSpectrum f(n);
    for (int k = 1; k <= n; ++k) {
        f.set(k, {1.0 / (k * k), 0.5 / (k * k)});
        f.set(-k, {1.0 / (k * k), -0.5 / (k * k)});
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(split_function(f, 0.6180339887498949, n).residual_sup);
}
BENCHMARK(bm_split_function)->Arg(8)->Arg(64);

void bm_orbit(benchmark::State& state) {
    FourierSpectrum f(2);
    f.set(1, {0.1, 0.0});
    f.set(-1, {0.1, 0.0});
    const auto map = make_furstenberg_map(0.6180339887498949, 1, f);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            orbit_discrepancy(map, {0.1, 0.2}, static_cast<int>(state.range(0)), 8));
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(bm_orbit)->Arg(10000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
