#pragma once

#include "helicity/expr.hpp"
#include "helicity/fourier.hpp"

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace helicity {

/// Area preserving torus map (u, v) -> (u + theta, d u + v + f(u)) written in
/// angle coordinates on [0,1)^2; f is evaluated from its spectrum at z = 2 pi u.
struct FurstenbergMap {
    double theta;
    int d;
    FourierSpectrum f;

    std::array<double, 2> apply(const std::array<double, 2>& uv) const;
};

/// Heuristic irrationality guard: rejects theta within 1e-12 of a fraction
/// with denominator at most max_denominator.
FurstenbergMap make_furstenberg_map(double theta, int d, FourierSpectrum f,
                                    int max_denominator = 64);

/// Orbit {start, phi(start), ..., phi^n(start)}, angles reduced mod 1.
std::vector<std::array<double, 2>> furstenberg_apply(const FurstenbergMap& map,
                                                     const std::array<double, 2>& start,
                                                     int iterations);

struct SplitReport {
    FourierSpectrum g;
    double eta;          // mean of f
    double residual_sup; // sup |g(u) - g(u+theta) - f(u) + eta| on a fine grid
    std::vector<double> c0_partial_sums; // sum_{0<|n|<=m} |g_n|
    std::vector<double> c1_partial_sums; // sum_{0<|n|<=m} |n g_n|
    double small_divisor_min;
};

/// Coefficientwise solution of g(u) - g(u + theta) = f(u) - eta with
/// divisors 1 - e^{2 pi i n theta}; g_0 is normalized to zero.
SplitReport split_function(const FourierSpectrum& f, double theta, int max_index);

struct FurstenbergExample {
    bool relaxed;
    double theta;
    std::vector<long long> frequencies;     // n_k
    std::vector<double> fractional_parts;   // {n_k theta}, certified positive
    std::vector<double> frequency_bounds;   // 2^{-n_k} (strict) or 2^{-k} (relaxed)
    std::vector<std::complex<double>> f_coeffs; // coefficient at +n_k
    std::vector<double> g_coeffs;               // 1/k^2 at +-n_k
    std::vector<double> c0_partial_sums;        // sum 1/j^2: bounded, g continuous
    std::vector<double> c1_partial_sums;        // sum n_j/j^2: unbounded, g not C^1
    double split_residual;                      // sup over a 4096-point grid
    std::optional<FourierSpectrum> f_dense;     // strict mode only
    std::optional<FourierSpectrum> g_dense;
};

/// The splittable-but-not-C^1 construction. Strict mode (K <= 3) builds a
/// Liouville-type theta by continued fractions with exact integer arithmetic
/// and certifies 0 < {n_k theta} <= 2^{-n_k}; relaxed mode (K <= 12) uses a
/// dyadic theta with frequencies n_k = 4^k certified against 2^{-k}.
FurstenbergExample furstenberg_example(int terms, bool relaxed);

using TorusMap = std::function<std::array<double, 2>(const std::array<double, 2>&)>;

/// Distance on the unit torus: Euclidean norm of componentwise wrapped gaps.
double torus_distance(const std::array<double, 2>& a, const std::array<double, 2>& b);

/// sup over an n x n grid of distance(psi(phi_a(x)), phi_b(psi(x))).
double conjugacy_check(const TorusMap& psi, const TorusMap& phi_a, const TorusMap& phi_b,
                       int grid_per_axis);

/// psi(u, v) = (u + (m theta + eta + k)/d, m u + v + g(u)) built from a split.
TorusMap kodaka_conjugacy(const FurstenbergMap& map, const SplitReport& split,
                          int m_int = 0, int k_int = 0);

/// Radial twist (r, theta) -> (r, theta + rho(r)), rho unbounded near 0 and
/// cut off at cutoff_radius. Never evaluated below r = 1e-8.
struct TwistHomeo {
    Expr rho; // expression in r, valid on (0, 1]
    double growth_exponent;
    double cutoff_radius;

    double rho_at(double r) const;
};

struct TwistReport {
    std::function<double(double, double)> h; // composed Hamiltonian, polar input
    std::vector<double> radii;               // probe radii 1e-1 .. 1e-4
    std::vector<std::array<double, 3>> partials; // max |order 1..3 difference| per radius
};

/// H = F o phi_rho for a Hamiltonian that is flat at the origin; reports
/// finite-difference partials certifying that the composition stays smooth.
TwistReport twist_conjugated_hamiltonian(const Expr& f_of_r_theta, const TwistHomeo& tw);

struct LipschitzPair {
    int n;
    double r_n;       // rho(r_n) = pi/2 mod 2 pi
    double r_prime_n; // rho(r'_n) = pi  mod 2 pi, largest such below r_n
    double lower_bound; // (1/4)(3/r_n + 1)
};

struct LipschitzReport {
    std::vector<LipschitzPair> pairs; // strictly increasing lower bounds
    int skipped;                      // pairs dropped by the gap condition
};

/// Certificate sequence L_n -> infinity: any conjugacy matching the twisted
/// Hamiltonian to the straight one has Lipschitz constant above every L_n.
LipschitzReport lipschitz_lower_bounds(const TwistHomeo& tw, int n_max);

/// Box-count equidistribution defect: max over k x k cells of
/// |empirical frequency - 1/k^2| along an orbit of length n.
double orbit_discrepancy(const FurstenbergMap& map, const std::array<double, 2>& start,
                         int iterations, int cells_per_axis);

} // namespace helicity
