#include "helicity/conjugacy.hpp"

#include "helicity/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace helicity {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac(double x) {
    double out = x - std::floor(x);
    if (out >= 1.0) out -= 1.0;
    return out;
}

double wrapped_gap(double a, double b) {
    const double d = frac(a - b);
    return std::min(d, 1.0 - d);
}

// Angle 2 pi (n u mod 1), reducing before the trig call so that large
// frequencies keep full precision when n u is exactly representable.
double reduced_angle(long long n, double u) {
    return kTwoPi * frac(static_cast<double>(n) * u);
}

} // namespace

std::array<double, 2> FurstenbergMap::apply(const std::array<double, 2>& uv) const {
    const double u = uv[0], v = uv[1];
    return {frac(u + theta), frac(v + d * u + f.eval(kTwoPi * u))};
}

FurstenbergMap make_furstenberg_map(double theta, int d, FourierSpectrum f,
                                    int max_denominator) {
    for (int q = 1; q <= max_denominator; ++q) {
        const double scaled = theta * q;
        if (std::abs(scaled - std::round(scaled)) < 1e-12 * q)
            throw DomainError(ErrorCode::ResonantDivisor,
                              "theta is indistinguishable from a fraction with denominator " +
                                  std::to_string(q));
    }
    return FurstenbergMap{theta, d, std::move(f)};
}

std::vector<std::array<double, 2>> furstenberg_apply(const FurstenbergMap& map,
                                                     const std::array<double, 2>& start,
                                                     int iterations) {
    if (iterations < 1)
        throw DomainError(ErrorCode::InvalidResolution, "need at least one iteration");
    std::vector<std::array<double, 2>> orbit;
    orbit.reserve(static_cast<std::size_t>(iterations) + 1);
    orbit.push_back({frac(start[0]), frac(start[1])});
    for (int i = 0; i < iterations; ++i) orbit.push_back(map.apply(orbit.back()));
    return orbit;
}

SplitReport split_function(const FourierSpectrum& f, double theta, int max_index) {
    if (max_index > f.max_index())
        throw DomainError(ErrorCode::InvalidResolution,
                          "requested bandwidth exceeds the input spectrum");
    SplitReport report{FourierSpectrum(max_index), f.coeff(0).real(), 0.0, {}, {}, 0.0};
    double divisor_min = 2.0;
    for (int n = 1; n <= max_index; ++n) {
        const std::complex<double> divisor = 1.0 - std::polar(1.0, kTwoPi * n * theta);
        if (std::abs(divisor) < 1e-12)
            throw DomainError(ErrorCode::ResonantDivisor,
                              "1 - e^{2 pi i n theta} vanishes at n = " + std::to_string(n));
        divisor_min = std::min(divisor_min, std::abs(divisor));
        report.g.set(n, f.coeff(n) / divisor);
        const std::complex<double> divisor_neg = 1.0 - std::polar(1.0, -kTwoPi * n * theta);
        report.g.set(-n, f.coeff(-n) / divisor_neg);
    }
    report.small_divisor_min = divisor_min;

    double c0 = 0.0, c1 = 0.0;
    for (int n = 1; n <= max_index; ++n) {
        c0 += std::abs(report.g.coeff(n)) + std::abs(report.g.coeff(-n));
        c1 += n * (std::abs(report.g.coeff(n)) + std::abs(report.g.coeff(-n)));
        report.c0_partial_sums.push_back(c0);
        report.c1_partial_sums.push_back(c1);
    }

    constexpr int kGrid = 4096;
    double sup = 0.0;
    for (int j = 0; j < kGrid; ++j) {
        const double u = static_cast<double>(j) / kGrid;
        const double lhs = report.g.eval(kTwoPi * u) - report.g.eval(kTwoPi * frac(u + theta));
        const double rhs = f.eval(kTwoPi * u) - report.eta;
        sup = std::max(sup, std::abs(lhs - rhs));
    }
    report.residual_sup = sup;
    return report;
}

// ---------------------------------------------------------------------------
// Furstenberg example

namespace {

using BigInt = boost::multiprecision::cpp_int;

struct LiouvilleTheta {
    double value;
    BigInt p, q; // final convergent p/q approximating from which value is taken
    std::vector<long long> frequencies;
    std::vector<double> fractional_parts;
};

// Continued fraction [0; 1, 1, 3, 1, 57, 1, a7, 1] with a7 = ceil(2^529/529)+1.
// The even-index denominators q2 = 2, q4 = 9, q6 = 529 serve as frequencies:
// each satisfies 0 < {q_j theta} < 1/q_{j+1} <= 2^{-q_j} by construction.
LiouvilleTheta build_strict_theta(int terms) {
    const BigInt a7 = (BigInt(1) << 529) / 529 + 2;
    const std::vector<BigInt> partials = {0, 1, 1, 3, 1, 57, 1, a7, 1};
    std::vector<BigInt> p{1, 0}, q{0, 1}; // p_{-1}, p_0 and q_{-1}, q_0
    for (std::size_t k = 1; k < partials.size(); ++k) {
        p.push_back(partials[k] * p[k] + p[k - 1]);
        q.push_back(partials[k] * q[k] + q[k - 1]);
    }
    // Arrays are offset by one: p[j + 1] is the j-th convergent numerator.
    const BigInt& pn = p.back();
    const BigInt& qn = q.back();

    LiouvilleTheta out;
    out.p = pn;
    out.q = qn;
    // Shift far enough that even fractional parts near 2^{-529} survive the
    // conversion to double.
    static constexpr unsigned kShift = 700;
    auto to_double = [](const BigInt& numerator, const BigInt& denominator) {
        const BigInt scaled = (numerator << kShift) / denominator;
        return scaled.convert_to<double>() * std::ldexp(1.0, -static_cast<int>(kShift));
    };
    out.value = to_double(pn, qn);

    const int even_indices[3] = {2, 4, 6};
    for (int k = 0; k < terms; ++k) {
        const BigInt& freq = q[static_cast<std::size_t>(even_indices[k]) + 1];
        const long long n = freq.convert_to<long long>();
        BigInt numerator = (freq * pn) % qn;
        if (numerator <= 0)
            throw DomainError(ErrorCode::PrecisionExhausted, "fractional part is not positive");
        // Certify {n theta} <= 2^{-n} exactly.
        if (numerator * (BigInt(1) << static_cast<unsigned>(n)) > qn)
            throw DomainError(ErrorCode::PrecisionExhausted, "frequency bound violated");
        out.frequencies.push_back(n);
        out.fractional_parts.push_back(to_double(numerator, qn));
    }
    return out;
}

} // namespace

FurstenbergExample furstenberg_example(int terms, bool relaxed) {
    if (terms < 1)
        throw DomainError(ErrorCode::InvalidResolution, "need at least one term");
    FurstenbergExample out;
    out.relaxed = relaxed;

    if (!relaxed) {
        if (terms > 3)
            throw DomainError(ErrorCode::PrecisionExhausted,
                              "strict mode certifies at most 3 terms; use relaxed mode");
        LiouvilleTheta theta = build_strict_theta(terms);
        out.theta = theta.value;
        out.frequencies = theta.frequencies;
        out.fractional_parts = theta.fractional_parts;
        for (long long n : out.frequencies)
            out.frequency_bounds.push_back(std::ldexp(1.0, -static_cast<int>(n)));
    } else {
        if (terms > 12)
            throw DomainError(ErrorCode::PrecisionExhausted,
                              "relaxed mode certifies at most 12 terms");
        // Dyadic theta: {4^k theta} = 2^{2k-49} + 2^{2k-99} exactly, which
        // stays in (0, 2^{-k}] for k <= 16.
        out.theta = std::ldexp(1.0, -49) + std::ldexp(1.0, -99);
        for (int k = 1; k <= terms; ++k) {
            const long long n = 1LL << (2 * k);
            out.frequencies.push_back(n);
            const double fractional = std::ldexp(1.0, 2 * k - 49) + std::ldexp(1.0, 2 * k - 99);
            out.fractional_parts.push_back(fractional);
            out.frequency_bounds.push_back(std::ldexp(1.0, -k));
            if (!(fractional > 0.0) || fractional > out.frequency_bounds.back())
                throw DomainError(ErrorCode::PrecisionExhausted, "frequency bound violated");
        }
    }

    double c0 = 0.0, c1 = 0.0;
    for (int k = 1; k <= terms; ++k) {
        const long long n = out.frequencies[static_cast<std::size_t>(k - 1)];
        const double amplitude = 1.0 / (static_cast<double>(k) * k);
        out.g_coeffs.push_back(amplitude);
        const double phase = kTwoPi * out.fractional_parts[static_cast<std::size_t>(k - 1)];
        out.f_coeffs.push_back(amplitude * (1.0 - std::polar(1.0, phase)));
        c0 += amplitude;
        c1 += static_cast<double>(n) * amplitude;
        out.c0_partial_sums.push_back(c0);
        out.c1_partial_sums.push_back(c1);
    }

    // Residual of the splitting equation on a fine grid, evaluated sparsely.
    constexpr int kGrid = 4096;
    double sup = 0.0;
    for (int j = 0; j < kGrid; ++j) {
        const double u = static_cast<double>(j) / kGrid;
        double lhs = 0.0, rhs = 0.0;
        for (int k = 0; k < terms; ++k) {
            const long long n = out.frequencies[static_cast<std::size_t>(k)];
            const double a = out.g_coeffs[static_cast<std::size_t>(k)];
            const double angle_u = reduced_angle(n, u);
            const double angle_shift =
                kTwoPi * frac(frac(static_cast<double>(n) * u) +
                              out.fractional_parts[static_cast<std::size_t>(k)]);
            lhs += 2.0 * a * (std::cos(angle_u) - std::cos(angle_shift));
            const auto fc = out.f_coeffs[static_cast<std::size_t>(k)];
            rhs += 2.0 * (fc * std::polar(1.0, angle_u)).real();
        }
        sup = std::max(sup, std::abs(lhs - rhs));
    }
    out.split_residual = sup;

    if (!relaxed) {
        const int n_max = static_cast<int>(out.frequencies.back());
        FourierSpectrum f_dense(n_max), g_dense(n_max);
        for (int k = 0; k < terms; ++k) {
            const int n = static_cast<int>(out.frequencies[static_cast<std::size_t>(k)]);
            const auto fc = out.f_coeffs[static_cast<std::size_t>(k)];
            const double gc = out.g_coeffs[static_cast<std::size_t>(k)];
            f_dense.set(n, fc);
            f_dense.set(-n, std::conj(fc));
            g_dense.set(n, gc);
            g_dense.set(-n, gc);
        }
        out.f_dense = std::move(f_dense);
        out.g_dense = std::move(g_dense);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conjugacy checks

double torus_distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double du = wrapped_gap(a[0], b[0]);
    const double dv = wrapped_gap(a[1], b[1]);
    return std::sqrt(du * du + dv * dv);
}

double conjugacy_check(const TorusMap& psi, const TorusMap& phi_a, const TorusMap& phi_b,
                       int grid_per_axis) {
    if (grid_per_axis < 1)
        throw DomainError(ErrorCode::InvalidResolution, "grid must be positive");
    double sup = 0.0;
    for (int i = 0; i < grid_per_axis; ++i) {
        for (int j = 0; j < grid_per_axis; ++j) {
            const std::array<double, 2> x = {static_cast<double>(i) / grid_per_axis,
                                             static_cast<double>(j) / grid_per_axis};
            sup = std::max(sup, torus_distance(psi(phi_a(x)), phi_b(psi(x))));
        }
    }
    return sup;
}

TorusMap kodaka_conjugacy(const FurstenbergMap& map, const SplitReport& split, int m_int,
                          int k_int) {
    if (map.d == 0)
        throw DomainError(ErrorCode::InvalidResolution, "conjugacy form needs nonzero degree");
    const double shift = (m_int * map.theta + split.eta + k_int) / map.d;
    const FourierSpectrum g = split.g;
    const int m = m_int;
    return [shift, g, m](const std::array<double, 2>& uv) -> std::array<double, 2> {
        const double u = uv[0], v = uv[1];
        return {frac(u + shift), frac(m * u + v + g.eval(kTwoPi * u))};
    };
}

// ---------------------------------------------------------------------------
// Twist homeomorphisms

double TwistHomeo::rho_at(double r) const {
    if (r >= cutoff_radius) return 0.0;
    EvalEnv env{{"r", std::max(r, 1e-8)}};
    return rho.eval(env);
}

TwistReport twist_conjugated_hamiltonian(const Expr& f_of_r_theta, const TwistHomeo& tw) {
    for (const auto& var : f_of_r_theta.variables()) {
        if (var != "r" && var != "theta")
            throw DomainError(ErrorCode::UnknownIdentifier,
                              "Hamiltonian must be a function of (r, theta)");
    }
    // Super-polynomial decay at the origin: |F| <= exp(-0.05/r^2) on probes.
    {
        EvalEnv env;
        for (double r : {0.05, 0.02, 0.01, 0.005}) {
            env.set("r", r);
            const double cap = std::exp(-0.05 / (r * r));
            for (int j = 0; j < 16; ++j) {
                env.set("theta", kTwoPi * j / 16);
                if (std::abs(f_of_r_theta.eval(env)) > cap)
                    throw DomainError(ErrorCode::NotFlat,
                                      "Hamiltonian does not decay fast enough at the origin");
            }
        }
    }

    TwistReport report;
    const Expr f_expr = f_of_r_theta;
    const TwistHomeo twist = tw;
    report.h = [f_expr, twist](double r, double theta) -> double {
        if (r < 1e-8) return 0.0;
        EvalEnv env{{"r", r}, {"theta", theta + twist.rho_at(r)}};
        return f_expr.eval(env);
    };

    auto value_at = [&report](double x, double y) {
        const double r = std::hypot(x, y);
        return report.h(r, std::atan2(y, x));
    };

    report.radii = {1e-1, 1e-2, 1e-3, 1e-4};
    for (double h : report.radii) {
        std::array<double, 3> orders{0.0, 0.0, 0.0};
        for (int dir = 0; dir < 8; ++dir) {
            const double cx = std::cos(std::numbers::pi * dir / 8.0);
            const double cy = std::sin(std::numbers::pi * dir / 8.0);
            auto sample = [&](double s) { return value_at(s * h * cx, s * h * cy); };
            const double f1 = (sample(1) - sample(-1)) / (2 * h);
            const double f2 = (sample(1) - 2 * sample(0) + sample(-1)) / (h * h);
            const double f3 = (sample(2) - 2 * sample(1) + 2 * sample(-1) - sample(-2)) /
                              (2 * h * h * h);
            orders[0] = std::max(orders[0], std::abs(f1));
            orders[1] = std::max(orders[1], std::abs(f2));
            orders[2] = std::max(orders[2], std::abs(f3));
        }
        report.partials.push_back(orders);
    }
    return report;
}

LipschitzReport lipschitz_lower_bounds(const TwistHomeo& tw, int n_max) {
    constexpr double kFloor = 1e-8;
    LipschitzReport report{{}, 0};
    if (n_max == 0) return report;
    if (n_max < 0)
        throw DomainError(ErrorCode::InvalidResolution, "pair count must be nonnegative");

    const double hi = std::nextafter(tw.cutoff_radius, 0.0);
    // Monotonicity spot check on the profile's support.
    {
        double prev = tw.rho_at(kFloor);
        for (double r : {1e-6, 1e-4, 1e-2, 0.1, hi}) {
            const double cur = tw.rho_at(r);
            if (!(cur < prev))
                throw DomainError(ErrorCode::InsufficientPairs,
                                  "profile is not strictly decreasing on its support");
            prev = cur;
        }
    }
    const double rho_top = tw.rho_at(kFloor);

    auto solve = [&](double target) -> std::optional<double> {
        if (target > rho_top || target < tw.rho_at(hi)) return std::nullopt;
        double lo = kFloor, up = hi;
        for (int iter = 0; iter < 200 && up - lo > 1e-16 * up; ++iter) {
            const double mid = 0.5 * (lo + up);
            if (tw.rho_at(mid) >= target)
                lo = mid;
            else
                up = mid;
        }
        return 0.5 * (lo + up);
    };

    constexpr double kPi = std::numbers::pi;
    for (int n = 1; static_cast<int>(report.pairs.size()) < n_max; ++n) {
        const auto r_n = solve(kPi / 2.0 + kTwoPi * n);
        if (!r_n.has_value()) {
            if (kPi / 2.0 + kTwoPi * n > rho_top)
                throw DomainError(ErrorCode::InsufficientPairs,
                                  "only " + std::to_string(report.pairs.size()) +
                                      " valid pairs before the profile was exhausted");
            ++report.skipped;
            continue;
        }
        const auto r_prime = solve(kPi + kTwoPi * n);
        if (!r_prime.has_value() || !(*r_prime < *r_n) || !(*r_n - *r_prime < *r_n * *r_n)) {
            ++report.skipped;
            continue;
        }
        const double bound = 0.25 * (3.0 / *r_n + 1.0);
        if (!report.pairs.empty())
            assert(bound > report.pairs.back().lower_bound);
        report.pairs.push_back(LipschitzPair{n, *r_n, *r_prime, bound});
    }
    return report;
}

double orbit_discrepancy(const FurstenbergMap& map, const std::array<double, 2>& start,
                         int iterations, int cells_per_axis) {
    const long long cells = static_cast<long long>(cells_per_axis) * cells_per_axis;
    if (iterations < cells)
        throw DomainError(ErrorCode::InvalidResolution,
                          "orbit shorter than the number of cells");
    std::vector<long long> counts(static_cast<std::size_t>(cells), 0);
    std::array<double, 2> point = {frac(start[0]), frac(start[1])};
    for (int i = 0; i < iterations; ++i) {
        point = map.apply(point);
        const auto cu = std::min<long long>(cells_per_axis - 1,
                                            static_cast<long long>(point[0] * cells_per_axis));
        const auto cv = std::min<long long>(cells_per_axis - 1,
                                            static_cast<long long>(point[1] * cells_per_axis));
        ++counts[static_cast<std::size_t>(cu * cells_per_axis + cv)];
    }
    const double expected = 1.0 / static_cast<double>(cells);
    double worst = 0.0;
    for (long long c : counts)
        worst = std::max(worst, std::abs(static_cast<double>(c) / iterations - expected));
    return worst;
}

} // namespace helicity
