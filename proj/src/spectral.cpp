#include "qprime/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qprime/error.hpp"

namespace qprime {

InitialCoefficients InitialCoefficients::uniform(std::uint64_t d) {
    if (d < 2) throw DomainError("dimension must be at least 2");
    InitialCoefficients c;
    c.weights_.assign(d, 1.0 / static_cast<double>(d));
    c.uniform_ = true;
    return c;
}

InitialCoefficients InitialCoefficients::from_weights(std::vector<double> weights) {
    if (weights.size() < 2) throw DomainError("need at least two coefficients");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw DomainError("every |c_n|^2 must be positive");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw DomainError("coefficients are not normalized");
    }
    InitialCoefficients c;
    c.weights_ = std::move(weights);
    c.uniform_ = std::all_of(c.weights_.begin(), c.weights_.end(),
                             [&](double w) { return w == c.weights_.front(); });
    return c;
}

std::vector<double> InitialCoefficients::pair_weights() const {
    const std::size_t d = weights_.size();
    std::vector<double> p(d, 0.0);
    for (std::size_t delta = 0; delta < d; ++delta) {
        for (std::size_t k = 0; k + delta < d; ++k) p[delta] += weights_[k] * weights_[k + delta];
    }
    return p;
}

double analytic_purity_direct(const InitialCoefficients& c, double omega, double t,
                              double* imag_residue) {
    const auto w = c.weights();
    const std::size_t d = w.size();
    const double wt = omega * t;
    Complex sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            const double jk = w[j] * w[k];
            const double dj = static_cast<double>(j) - static_cast<double>(k);
            for (std::size_t l = 0; l < d; ++l) {
                for (std::size_t m = 0; m < d; ++m) {
                    const double dl = static_cast<double>(l) - static_cast<double>(m);
                    sum += jk * w[l] * w[m] * std::polar(1.0, -wt * dj * dl);
                }
            }
        }
    }
    if (imag_residue) *imag_residue = sum.imag();
    return sum.real();
}

double analytic_purity(const InitialCoefficients& c, double omega, double t) {
    // Grouping index pairs by difference: gamma = sum_{a,b} W_a W_b cos(wt a b)
    // over signed differences, W_{-a} = W_a = P[a].
    const auto p = c.pair_weights();
    const std::size_t d = p.size();
    const double wt = omega * t;
    double sum = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        const double ma = a == 0 ? 1.0 : 2.0;
        for (std::size_t b = 0; b < d; ++b) {
            const double mb = b == 0 ? 1.0 : 2.0;
            sum += ma * mb * p[a] * p[b] *
                   std::cos(wt * static_cast<double>(a) * static_cast<double>(b));
        }
    }
    return sum;
}

std::string_view to_string(SpectrumSource source) noexcept {
    return source == SpectrumSource::Analytic ? "analytic" : "simpson";
}

double FourierSpectrum::at(std::uint64_t n) const {
    if (n == 0) {
        if (!mean) throw DomainError("spectrum carries no alpha_0");
        return *mean;
    }
    if (n > alpha.size()) throw DomainError("mode index beyond spectrum: " + std::to_string(n));
    return alpha[n - 1];
}

std::optional<double> FourierSpectrum::bound_at(std::uint64_t n) const {
    if (n == 0 || n > bound.size()) return std::nullopt;
    return bound[n - 1];
}

namespace {

std::uint64_t max_mode(std::uint64_t d) { return (d - 1) * (d - 1); }

FourierSpectrum empty_analytic(std::uint64_t d) {
    FourierSpectrum s;
    s.d = d;
    s.source = SpectrumSource::Analytic;
    s.alpha.assign(max_mode(d), 0.0);
    s.bound.assign(max_mode(d), std::nullopt);
    return s;
}

}  // namespace

FourierSpectrum fourier_modes_enumerated(const InitialCoefficients& c) {
    const auto w = c.weights();
    const std::size_t d = w.size();
    FourierSpectrum s = empty_analytic(d);
    double mean = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t l = 0; l < d; ++l) {
                for (std::size_t m = 0; m < d; ++m) {
                    const double weight = w[j] * w[k] * w[l] * w[m];
                    if (j == k || l == m) {
                        mean += weight;
                    } else if (j > k && l > m) {
                        s.alpha[(j - k) * (l - m) - 1] += 4.0 * weight;
                    }
                }
            }
        }
    }
    s.mean = mean;
    return s;
}

FourierSpectrum fourier_modes_divisor(const InitialCoefficients& c) {
    const std::uint64_t d = c.d();
    const auto p = c.pair_weights();
    auto pw = [&](std::uint64_t delta) { return delta < d ? p[delta] : 0.0; };

    FourierSpectrum s = empty_analytic(d);
    s.mean = p[0] * (2.0 - p[0]);
    s.alpha[0] = 4.0 * pw(1) * pw(1);
    for (std::uint64_t n = 2; n <= max_mode(d); ++n) {
        double a = 8.0 * pw(n) * pw(1);  // trivial decomposition, B_n
        for (std::uint64_t y = 2; y < n && y < d; ++y) {
            if (n % y == 0) a += 4.0 * pw(n / y) * pw(y);
        }
        s.alpha[n - 1] = a;
    }
    return s;
}

FourierSpectrum analytic_fourier_modes(const InitialCoefficients& c) {
    return c.d() <= 16 ? fourier_modes_enumerated(c) : fourier_modes_divisor(c);
}

namespace {

void check_bound_range(std::uint64_t d, std::uint64_t n) {
    if (n < 2 || n > max_mode(d)) {
        throw DomainError("lower bound defined for 2 <= n <= (d-1)^2, got n=" + std::to_string(n));
    }
}

}  // namespace

double lower_bound(const InitialCoefficients& c, std::uint64_t n) {
    const std::uint64_t d = c.d();
    check_bound_range(d, n);
    double sum = 0.0;
    for (std::uint64_t k = 1; k + n <= d; ++k) {
        for (std::uint64_t m = 1; m <= d - 1; ++m) {
            sum += c.weight(k) * c.weight(m) * c.weight(k + n) * c.weight(m + 1);
        }
    }
    return 8.0 * sum;
}

double lower_bound_uniform(std::uint64_t d, std::uint64_t n) {
    check_bound_range(d, n);
    if (n >= d) return 0.0;
    const double dd = static_cast<double>(d);
    const double nn = static_cast<double>(n);
    return -8.0 * (dd - 1.0) * nn / std::pow(dd, 4) + (8.0 * dd - 8.0) / std::pow(dd, 3);
}

void attach_bounds(FourierSpectrum& spectrum, const InitialCoefficients& c) {
    if (c.d() != spectrum.d) throw DomainError("coefficients and spectrum disagree on d");
    spectrum.bound.assign(spectrum.nmax(), std::nullopt);
    for (std::uint64_t n = 2; n <= spectrum.nmax(); ++n) {
        spectrum.bound[n - 1] = lower_bound(c, n);
    }
}

std::vector<double> half_period_grid(double omega, std::uint64_t partitions) {
    if (!(omega > 0.0)) throw DomainError("omega must be positive");
    if (partitions < 2) {
        throw DomainError("need at least two partitions, got " + std::to_string(partitions));
    }
    const double half_period = std::numbers::pi / omega;
    std::vector<double> t(partitions + 1);
    for (std::uint64_t i = 0; i <= partitions; ++i) {
        t[i] = static_cast<double>(i) * half_period / static_cast<double>(partitions);
    }
    return t;
}

PuritySeries analytic_series(const InitialCoefficients& c, double omega, std::uint64_t partitions) {
    PuritySeries s;
    s.d = c.d();
    s.omega = omega;
    s.partitions = partitions;
    s.times = half_period_grid(omega, partitions);
    s.gamma.reserve(s.times.size());
    for (double t : s.times) s.gamma.push_back(analytic_purity(c, omega, t));
    s.methods.assign(s.times.size(), PurityMethod::ExactTrace);
    return s;
}

std::vector<double> simpson_weights(std::uint64_t partitions, double step) {
    if (partitions < 2) {
        throw DomainError("Simpson integration needs at least two partitions");
    }
    // Odd interval counts close with a 3/8-rule panel over the last three.
    const std::uint64_t tail = partitions % 2 ? 3 : 0;
    const std::uint64_t body = partitions - tail;
    std::vector<double> w(partitions + 1, 0.0);
    for (std::uint64_t i = 0; i <= body && body > 0; ++i) {
        const double c = (i == 0 || i == body) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        w[i] += c * step / 3.0;
    }
    if (tail) {
        const double e = 3.0 * step / 8.0;
        w[body] += e;
        w[body + 1] += 3.0 * e;
        w[body + 2] += 3.0 * e;
        w[body + 3] += e;
    }
    return w;
}

namespace {

void check_series(const PuritySeries& series) {
    if (series.partitions < 2) {
        throw DomainError("Simpson integration needs at least two partitions, got " +
                          std::to_string(series.partitions));
    }
    if (series.times.size() != series.partitions + 1 || series.gamma.size() != series.times.size()) {
        throw DomainError("series does not hold p + 1 samples");
    }
    if (!(series.omega > 0.0)) throw DomainError("omega must be positive");
}

}  // namespace

FourierSpectrum simpson_fourier(const PuritySeries& series, std::uint64_t nmax) {
    check_series(series);
    if (series.d < 2 || nmax < 1 || nmax > max_mode(series.d)) {
        throw DomainError("nmax must lie in [1, (d-1)^2]");
    }
    const double step = (std::numbers::pi / series.omega) / static_cast<double>(series.partitions);
    const auto w = simpson_weights(series.partitions, step);
    const double scale = 2.0 * series.omega / std::numbers::pi;

    FourierSpectrum s;
    s.d = series.d;
    s.source = SpectrumSource::Simpson;
    s.alpha.resize(nmax);
    s.bound.assign(nmax, std::nullopt);
    for (std::uint64_t n = 1; n <= nmax; ++n) {
        const double freq = static_cast<double>(n) * series.omega;
        double sum = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            sum += w[i] * series.gamma[i] * std::cos(freq * series.times[i]);
        }
        s.alpha[n - 1] = scale * sum;
    }
    return s;
}

double simpson_mode_sigma(const PuritySeries& exact, std::uint64_t n, std::uint64_t shots) {
    check_series(exact);
    if (shots == 0) return 0.0;
    const double step = (std::numbers::pi / exact.omega) / static_cast<double>(exact.partitions);
    const auto w = simpson_weights(exact.partitions, step);
    const double scale = 2.0 * exact.omega / std::numbers::pi;
    const double freq = static_cast<double>(n) * exact.omega;
    double var = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double p0 = std::clamp((1.0 + exact.gamma[i]) / 2.0, 0.0, 1.0);
        const double coeff = scale * w[i] * std::cos(freq * exact.times[i]);
        var += coeff * coeff * 4.0 * p0 * (1.0 - p0) / static_cast<double>(shots);
    }
    return std::sqrt(var);
}

}  // namespace qprime
