#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "qprime/spectral.hpp"

namespace qprime {

/// I: 2 <= n <= d-1, II: d <= n <= 2(d-1), III: 2(d-1) < n <= (d-1)^2.
enum class Regime : std::uint8_t { I, II, III };

Regime regime_of(std::uint64_t n, std::uint64_t d);
std::string_view to_string(Regime regime) noexcept;

enum class Verdict : std::uint8_t { Prime, Composite, Inconclusive };

std::string_view to_string(Verdict verdict) noexcept;

struct ClassificationRow {
    std::uint64_t n = 0;
    Regime regime = Regime::I;
    double alpha = 0.0;
    double bound = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    bool oracle_prime = false;
    /// Verdict consistent with the sieve; inconclusive rows are consistent.
    bool agree = true;
};

struct ClassificationReport {
    std::uint64_t d = 0;
    double tolerance = 0.0;
    std::vector<ClassificationRow> rows;

    std::size_t count(Verdict v) const noexcept;
    /// Rows in regimes I and II whose verdict differs from the sieve.
    std::size_t domain_disagreements() const noexcept;
    std::size_t disagreements() const noexcept;
};

/// Decision rule: regime I prime iff |alpha - B| <= tau; regime II prime iff
/// alpha <= tau; regime III composite iff alpha > tau, else inconclusive.
/// Classifies every n in [2, nmax]. Throws DomainError if the spectrum stops
/// short of 2(d-1) or lacks bounds for regime I/II.
ClassificationReport classify(const FourierSpectrum& spectrum, double tolerance);

/// Primes <= n by the sieve of Eratosthenes. Validation only.
std::vector<std::uint64_t> sieve_oracle(std::uint64_t n);

/// Primality table for 0..n from the same sieve.
std::vector<bool> sieve_table(std::uint64_t n);

/// Worst-case standard deviation of a Simpson-extracted mode when each of the
/// p + 1 purity samples carries shot noise of at most 1/sqrt(shots):
///   sigma = (2/pi) sqrt(sum_i (omega w_i)^2) / sqrt(shots),
/// which does not depend on omega.
double simpson_noise_bound(std::uint64_t partitions, std::uint64_t shots);

/// tau = 2/d^4 (half the smallest composite excess 4/d^4 of the uniform
/// state), plus 3 * simpson_noise_bound(p, shots) when shots > 0.
double default_tolerance(std::uint64_t d, std::uint64_t shots, std::uint64_t partitions);

}  // namespace qprime
