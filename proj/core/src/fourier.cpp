#include "helicity/fourier.hpp"

#include "helicity/errors.hpp"

#include <cmath>
#include <numbers>

namespace helicity {

FourierSpectrum::FourierSpectrum(int max_index)
    : max_index_(max_index), coeffs_(2 * static_cast<std::size_t>(max_index) + 1) {
    if (max_index < 0) throw DomainError(ErrorCode::InvalidResolution, "negative spectrum size");
}

FourierSpectrum::FourierSpectrum(int max_index, std::vector<std::complex<double>> coeffs)
    : max_index_(max_index), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != 2 * static_cast<std::size_t>(max_index) + 1)
        throw DomainError(ErrorCode::InvalidResolution, "coefficient count must be 2N+1");
}

std::complex<double> FourierSpectrum::coeff(int n) const {
    if (n < -max_index_ || n > max_index_) return {0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(n + max_index_)];
}

void FourierSpectrum::set(int n, std::complex<double> value) {
    coeffs_.at(static_cast<std::size_t>(n + max_index_)) = value;
}

double FourierSpectrum::eval(double z) const {
    std::complex<double> acc{0.0, 0.0};
    for (int n = -max_index_; n <= max_index_; ++n) {
        const auto c = coeffs_[static_cast<std::size_t>(n + max_index_)];
        if (c == std::complex<double>{0.0, 0.0}) continue;
        acc += c * std::polar(1.0, n * z);
    }
    return acc.real();
}

double FourierSpectrum::reality_defect() const {
    double worst = 0.0;
    for (int n = 0; n <= max_index_; ++n)
        worst = std::max(worst, std::abs(coeff(-n) - std::conj(coeff(n))));
    return worst;
}

Expr FourierSpectrum::to_expr(const std::string& var) const {
    const Expr z = Expr::variable(var);
    Expr acc = Expr(coeff(0).real());
    for (int n = 1; n <= max_index_; ++n) {
        const auto c = coeff(n);
        const double a = 2.0 * c.real();
        const double b = -2.0 * c.imag();
        if (a != 0.0) acc = acc + Expr(a) * cos(Expr(n) * z);
        if (b != 0.0) acc = acc + Expr(b) * sin(Expr(n) * z);
    }
    return acc;
}

double FourierSpectrum::l2_sq() const {
    double acc = 0.0;
    for (const auto& c : coeffs_) acc += std::norm(c);
    return acc;
}

FourierSpectrum fourier_coeffs(std::span<const double> samples, int max_index) {
    const std::size_t m = samples.size();
    if (m < 2 * static_cast<std::size_t>(max_index) + 1)
        throw DomainError(ErrorCode::InvalidResolution, "too few samples for the requested bandwidth");
    FourierSpectrum out(max_index);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
    for (int n = -max_index; n <= max_index; ++n) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < m; ++j)
            acc += samples[j] * std::polar(1.0, -n * step * static_cast<double>(j));
        out.set(n, acc / static_cast<double>(m));
    }
    return out;
}

FourierSpectrum fourier_coeffs(const Expr& f, const std::string& var, int max_index) {
    const std::size_t m = static_cast<std::size_t>(std::max(4 * max_index, 8));
    std::vector<double> samples(m);
    EvalEnv env;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) {
        env.set(var, step * static_cast<double>(j));
        samples[j] = f.eval(env);
    }
    return fourier_coeffs(samples, max_index);
}

} // namespace helicity
