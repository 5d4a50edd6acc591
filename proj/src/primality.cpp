#include "qprime/primality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qprime/error.hpp"

namespace qprime {

Regime regime_of(std::uint64_t n, std::uint64_t d) {
    const std::uint64_t top = d < 2 ? 0 : std::max(2 * (d - 1), (d - 1) * (d - 1));
    if (n < 2 || n > top) {
        throw DomainError("n=" + std::to_string(n) + " has no regime for d=" + std::to_string(d));
    }
    if (n <= d - 1) return Regime::I;
    if (n <= 2 * (d - 1)) return Regime::II;
    return Regime::III;
}

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::I: return "I";
        case Regime::II: return "II";
        case Regime::III: return "III";
    }
    return "?";
}

std::string_view to_string(Verdict verdict) noexcept {
    switch (verdict) {
        case Verdict::Prime: return "prime";
        case Verdict::Composite: return "composite";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::size_t ClassificationReport::count(Verdict v) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [v](const auto& r) { return r.verdict == v; }));
}

std::size_t ClassificationReport::domain_disagreements() const noexcept {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) {
        return r.regime != Regime::III && !r.agree;
    }));
}

std::size_t ClassificationReport::disagreements() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.agree; }));
}

ClassificationReport classify(const FourierSpectrum& spectrum, double tolerance) {
    const std::uint64_t d = spectrum.d;
    if (d < 3) throw DomainError("classification needs d >= 3");
    if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) {
        throw DomainError("tolerance must be finite and non-negative");
    }
    const std::uint64_t domain_end = 2 * (d - 1);
    if (spectrum.nmax() < domain_end) {
        throw DomainError("spectrum stops at n=" + std::to_string(spectrum.nmax()) +
                          ", classification needs modes up to " + std::to_string(domain_end));
    }
    const auto is_prime = sieve_table(spectrum.nmax());

    ClassificationReport report;
    report.d = d;
    report.tolerance = tolerance;
    for (std::uint64_t n = 2; n <= spectrum.nmax(); ++n) {
        ClassificationRow row;
        row.n = n;
        row.regime = regime_of(n, d);
        row.alpha = spectrum.at(n);
        row.oracle_prime = is_prime[n];
        const auto bound = spectrum.bound_at(n);
        if (row.regime != Regime::III && !bound) {
            throw DomainError("missing lower bound for n=" + std::to_string(n));
        }
        row.bound = bound.value_or(0.0);

        switch (row.regime) {
            case Regime::I:
                row.verdict = std::abs(row.alpha - row.bound) <= tolerance ? Verdict::Prime
                                                                           : Verdict::Composite;
                break;
            case Regime::II:
                row.verdict = row.alpha <= tolerance ? Verdict::Prime : Verdict::Composite;
                break;
            case Regime::III:
                row.verdict = row.alpha > tolerance ? Verdict::Composite : Verdict::Inconclusive;
                break;
        }
        switch (row.verdict) {
            case Verdict::Prime: row.agree = row.oracle_prime; break;
            case Verdict::Composite: row.agree = !row.oracle_prime; break;
            case Verdict::Inconclusive: row.agree = true; break;
        }
        report.rows.push_back(row);
    }
    return report;
}

std::vector<bool> sieve_table(std::uint64_t n) {
    std::vector<bool> prime(n + 1, true);
    prime[0] = false;
    if (n >= 1) prime[1] = false;
    for (std::uint64_t i = 2; i * i <= n; ++i) {
        if (!prime[i]) continue;
        for (std::uint64_t k = i * i; k <= n; k += i) prime[k] = false;
    }
    return prime;
}

std::vector<std::uint64_t> sieve_oracle(std::uint64_t n) {
    if (n < 2) throw DomainError("sieve bound must be at least 2");
    const auto table = sieve_table(n);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (table[i]) primes.push_back(i);
    }
    return primes;
}

double simpson_noise_bound(std::uint64_t partitions, std::uint64_t shots) {
    if (shots == 0) return 0.0;
    // With omega = 1 the half period is pi and the step pi / p.
    const auto w = simpson_weights(partitions, std::numbers::pi / static_cast<double>(partitions));
    double sum_sq = 0.0;
    for (double x : w) sum_sq += x * x;
    return (2.0 / std::numbers::pi) * std::sqrt(sum_sq) / std::sqrt(static_cast<double>(shots));
}

double default_tolerance(std::uint64_t d, std::uint64_t shots, std::uint64_t partitions) {
    if (d < 3) throw DomainError("tolerance needs d >= 3");
    const double d4 = std::pow(static_cast<double>(d), 4);
    double tau = 2.0 / d4;

    // Half the smallest composite excess over the decidable range.
    const auto c = InitialCoefficients::uniform(d);
    const auto modes = fourier_modes_divisor(c);
    const auto is_prime = sieve_table(2 * (d - 1));
    double smallest = std::numeric_limits<double>::infinity();
    for (std::uint64_t n = 4; n <= 2 * (d - 1); ++n) {
        if (!is_prime[n]) smallest = std::min(smallest, modes.at(n) - lower_bound(c, n));
    }
    tau = std::min(tau, smallest / 2.0);

    return tau + 3.0 * simpson_noise_bound(partitions, shots);
}

}  // namespace qprime
