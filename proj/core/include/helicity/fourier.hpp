#pragma once

#include "helicity/expr.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace helicity {

/// Finite Fourier spectrum c_n, |n| <= N, of a 2 pi periodic function
/// f(z) = sum c_n e^{i n z}. Real functions satisfy c_{-n} = conj(c_n).
class FourierSpectrum {
public:
    explicit FourierSpectrum(int max_index);
    FourierSpectrum(int max_index, std::vector<std::complex<double>> coeffs);

    int max_index() const { return max_index_; }
    std::complex<double> coeff(int n) const;
    void set(int n, std::complex<double> value);
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

    /// Real-part evaluation of sum c_n e^{i n z}.
    double eval(double z) const;

    /// Largest deviation from the reality condition c_{-n} = conj(c_n).
    double reality_defect() const;

    /// Trig-polynomial expression c_0 + sum_n (2 Re c_n cos(n var) - 2 Im c_n sin(n var)).
    Expr to_expr(const std::string& var) const;

    /// Plancherel square norm: sum |c_n|^2 = (1/2pi) int |f|^2.
    double l2_sq() const;

private:
    int max_index_;
    std::vector<std::complex<double>> coeffs_; // n = -N .. N
};

/// Coefficients by uniform-node quadrature with max(4N, 8) samples of a
/// 2 pi periodic expression in one variable; exact for band-limited input.
FourierSpectrum fourier_coeffs(const Expr& f, const std::string& var, int max_index);

/// Same, from samples at z_j = 2 pi j / M, M = samples.size().
FourierSpectrum fourier_coeffs(std::span<const double> samples, int max_index);

} // namespace helicity
