#pragma once

// Analytic reduced purity, its cosine modes and lower-bound curve, and
// Simpson-rule mode extraction from a sampled purity series.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qprime/statevector.hpp"

namespace qprime {

/// |c_n|^2 for n = 1..d, stored zero-based.
class InitialCoefficients {
public:
    /// |c_n|^2 = 1/d.
    static InitialCoefficients uniform(std::uint64_t d);
    /// Every weight > 0 and sum within 1e-12 of 1, else DomainError.
    static InitialCoefficients from_weights(std::vector<double> weights);

    std::uint64_t d() const noexcept { return weights_.size(); }
    /// |c_n|^2, 1-based.
    double weight(std::uint64_t n) const noexcept { return weights_[n - 1]; }
    std::span<const double> weights() const noexcept { return weights_; }
    bool is_uniform() const noexcept { return uniform_; }

    /// P[delta] = sum_k |c_k|^2 |c_{k+delta}|^2 for delta = 0..d-1.
    std::vector<double> pair_weights() const;

private:
    std::vector<double> weights_;
    bool uniform_ = false;
};

/// Quadruple-sum purity; returns the real part and writes the imaginary
/// residue when asked. O(d^4).
double analytic_purity_direct(const InitialCoefficients& c, double omega, double t,
                              double* imag_residue = nullptr);

/// O(d^2) regrouping over pair-difference weights; matches the direct form.
double analytic_purity(const InitialCoefficients& c, double omega, double t);

enum class SpectrumSource : std::uint8_t { Analytic, Simpson };

std::string_view to_string(SpectrumSource source) noexcept;

/// Cosine modes alpha_n for n = 1..nmax; alpha_0 only for analytic spectra.
struct FourierSpectrum {
    std::uint64_t d = 0;
    SpectrumSource source = SpectrumSource::Analytic;
    std::optional<double> mean;           // alpha_0
    std::vector<double> alpha;            // alpha[n-1]
    std::vector<std::optional<double>> bound;  // B_n for n >= 2, bound[n-1]

    std::uint64_t nmax() const noexcept { return alpha.size(); }
    double at(std::uint64_t n) const;
    std::optional<double> bound_at(std::uint64_t n) const;
};

/// alpha_n by direct enumeration of all index quadruples. O(d^4).
FourierSpectrum fourier_modes_enumerated(const InitialCoefficients& c);

/// alpha_n = B_n + non-trivial divisor contributions. O(d^2 * divisors) per n.
FourierSpectrum fourier_modes_divisor(const InitialCoefficients& c);

/// Enumeration up to d = 16, divisor form above.
FourierSpectrum analytic_fourier_modes(const InitialCoefficients& c);

/// Trivial-decomposition lower bound, 2 <= n <= (d-1)^2.
double lower_bound(const InitialCoefficients& c, std::uint64_t n);

/// Piecewise-linear closed form for the uniform state: a line of slope
/// -8(d-1)/d^4 for n < d, zero above.
double lower_bound_uniform(std::uint64_t d, std::uint64_t n);

/// Sets B_n for every n in [2, nmax].
void attach_bounds(FourierSpectrum& spectrum, const InitialCoefficients& c);

/// Purity samples on t_i = i (T/2) / p, i = 0..p.
struct PuritySeries {
    std::uint64_t d = 0;
    double omega = 0.1;
    std::uint64_t partitions = 0;
    std::vector<double> times;
    std::vector<double> gamma;
    std::vector<PurityMethod> methods;
    std::uint64_t shots = 0;

    std::size_t size() const noexcept { return gamma.size(); }
};

/// p + 1 evenly spaced points over [0, pi/omega]; p >= 2.
std::vector<double> half_period_grid(double omega, std::uint64_t partitions);

/// Noiseless series from analytic_purity on the half-period grid.
PuritySeries analytic_series(const InitialCoefficients& c, double omega, std::uint64_t partitions);

/// Composite Simpson weights {1, 4, 2, ..., 4, 1} * h / 3. An odd interval
/// count takes the 3/8 rule over its last three intervals.
std::vector<double> simpson_weights(std::uint64_t partitions, double step);

/// alpha_n = (2 omega / pi) * Simpson(gamma(t) cos(n omega t)) over [0, T/2]
/// for n = 1..nmax.
FourierSpectrum simpson_fourier(const PuritySeries& series, std::uint64_t nmax);

/// Standard deviation of the Simpson estimate of alpha_n when each purity
/// sample is 2 * Binomial(shots, p0_i) / shots - 1 with p0_i = (1 + gamma_i) / 2.
double simpson_mode_sigma(const PuritySeries& exact, std::uint64_t n, std::uint64_t shots);

}  // namespace qprime
