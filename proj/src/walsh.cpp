#include "qprime/walsh.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qprime/error.hpp"

namespace qprime {

namespace {

constexpr int kMaxQubits = 62;

void check_qubits(int q) {
    if (q < 1 || q > kMaxQubits) {
        throw DomainError("qubit count out of range: " + std::to_string(q));
    }
}

void check_index(Index i, int q, const char* what) {
    if (i >> q) {
        throw DomainError(std::string(what) + " index " + std::to_string(i) +
                          " out of range for q=" + std::to_string(q));
    }
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw DomainError("raw Walsh angle overflows int64");
    }
    return out;
}

std::int64_t exact_div(std::int64_t num, std::int64_t den) {
    if (num % den != 0) {
        throw std::logic_error("closed-form Walsh angle is not an integer");
    }
    return num / den;
}

}  // namespace

int hamming_weight(Index j) noexcept { return std::popcount(j); }

Index bit_reverse(Index k, int q) noexcept {
    Index out = 0;
    for (int i = 0; i < q; ++i) {
        out = (out << 1) | ((k >> i) & 1U);
    }
    return out;
}

bool is_power_of_two(std::uint64_t n) noexcept { return std::has_single_bit(n); }

int qubits_for_dimension(std::uint64_t d) {
    if (d < 2 || !is_power_of_two(d)) {
        throw DomainError("dimension must be a power of two >= 2, got " + std::to_string(d));
    }
    const int half = std::countr_zero(d);
    if (2 * half > kMaxQubits) {
        throw DomainError("dimension too large: " + std::to_string(d));
    }
    return 2 * half;
}

int walsh_function(Index j, Index k, int q) {
    check_qubits(q);
    check_index(j, q, "row");
    check_index(k, q, "column");
    return (std::popcount(j & bit_reverse(k, q)) & 1) ? -1 : 1;
}

std::vector<std::int8_t> walsh_row(Index j, int q) {
    check_qubits(q);
    check_index(j, q, "row");
    const std::size_t length = std::size_t{1} << q;
    if (j == 0) {
        return std::vector<std::int8_t>(length, 1);
    }

    // Set-bit positions m_1 < ... < m_h, 1-based. Block period T_m = 2^(q-m).
    std::vector<int> positions;
    for (int m = 1; m <= q; ++m) {
        if ((j >> (m - 1)) & 1U) positions.push_back(m);
    }

    // Innermost block R_{m_h} is T_{m_h} copies of +1; each outer block
    // alternates (R, -R) until it reaches the next period, ending at 2^q.
    std::vector<std::int8_t> block(std::size_t{1} << (q - positions.back()), 1);
    for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
        const auto next = std::next(it);
        const std::size_t outer = next == positions.rend()
                                      ? length
                                      : (std::size_t{1} << (q - *next));
        std::vector<std::int8_t> grown;
        grown.reserve(outer);
        std::int8_t sign = 1;
        while (grown.size() < outer) {
            for (auto v : block) grown.push_back(static_cast<std::int8_t>(sign * v));
            sign = static_cast<std::int8_t>(-sign);
        }
        block = std::move(grown);
    }
    return block;
}

int PhaseVector::qubits() const { return qubits_for_dimension(d); }

PhaseVector phase_vector(std::uint64_t d) {
    const int q = qubits_for_dimension(d);
    if (q > 40) {
        throw DomainError("phase vector too large for d=" + std::to_string(d));
    }
    PhaseVector f;
    f.d = d;
    f.entries.reserve(d * d);
    for (std::uint64_t a = 1; a <= d; ++a) {
        for (std::uint64_t b = 1; b <= d; ++b) {
            f.entries.push_back(static_cast<std::int64_t>(a * b));
        }
    }
    return f;
}

std::int64_t WalshSpectrum::at(Index j) const noexcept {
    auto it = entries.find(j);
    return it == entries.end() ? 0 : it->second;
}

namespace {

// Length check plus an L1 guard: every coefficient is bounded by sum |f_k|.
int checked_transform_input(std::span<const std::int64_t> f) {
    const std::size_t n = f.size();
    if (n < 2 || !is_power_of_two(n)) {
        throw DomainError("transform length must be a power of two >= 2");
    }
    std::int64_t l1 = 0;
    for (auto v : f) {
        if (v == INT64_MIN || __builtin_add_overflow(l1, v < 0 ? -v : v, &l1)) {
            throw DomainError("Walsh transform input could overflow int64");
        }
    }
    return std::countr_zero(n);
}

}  // namespace

std::vector<std::int64_t> paley_transform(std::span<const std::int64_t> f) {
    const int q = checked_transform_input(f);
    const std::size_t n = f.size();

    // Paley order = natural-order Hadamard transform of the bit-reversed input.
    std::vector<std::int64_t> a(n);
    for (std::size_t k = 0; k < n; ++k) {
        a[bit_reverse(k, q)] = f[k];
    }
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t k = i; k < i + h; ++k) {
                const std::int64_t x = a[k];
                const std::int64_t y = a[k + h];
                a[k] = x + y;
                a[k + h] = x - y;
            }
        }
    }
    return a;
}

WalshSpectrum walsh_transform(std::span<const std::int64_t> f) {
    const auto dense = paley_transform(f);
    WalshSpectrum out;
    out.q = std::countr_zero(dense.size());
    for (Index j = 1; j < dense.size(); ++j) {
        if (dense[j] != 0) out.entries.emplace_hint(out.entries.end(), j, dense[j]);
    }
    return out;
}

WalshSpectrum walsh_transform(const PhaseVector& f) { return walsh_transform(std::span(f.entries)); }

WalshSpectrum direct_walsh_transform(std::span<const std::int64_t> f) {
    const int q = checked_transform_input(f);
    WalshSpectrum out;
    out.q = q;
    for (Index j = 1; j < f.size(); ++j) {
        std::int64_t a = 0;
        for (Index k = 0; k < f.size(); ++k) a += walsh_function(j, k, q) * f[k];
        if (a != 0) out.entries.emplace_hint(out.entries.end(), j, a);
    }
    return out;
}

WalshSpectrum closed_form_spectrum(std::uint64_t d) {
    const int q = qubits_for_dimension(d);
    const auto dd = static_cast<std::int64_t>(d);
    const std::int64_t d3 = checked_mul(checked_mul(dd, dd), dd);
    const std::int64_t d4 = checked_mul(d3, dd);
    const std::int64_t d5 = checked_mul(d4, dd);
    const std::int64_t low_numerator = checked_mul(1 + dd, d3);
    const std::int64_t high_numerator = checked_mul(1 + dd, d4);

    WalshSpectrum out;
    out.q = q;
    const int half = q / 2;

    // Single-bit rows: j <= d/2 on the low half, j >= d on the high half.
    for (int r = 0; r < q; ++r) {
        const std::int64_t j = std::int64_t{1} << r;
        const std::int64_t num = r < half ? low_numerator : high_numerator;
        out.entries[static_cast<Index>(j)] = -exact_div(num, checked_mul(8, j));
    }
    // Two-bit rows with one bit in each half.
    for (int r1 = 0; r1 < half; ++r1) {
        for (int r2 = half; r2 < q; ++r2) {
            const std::int64_t l1 = std::int64_t{1} << r1;
            const std::int64_t l2 = std::int64_t{1} << r2;
            out.entries[static_cast<Index>(l1 + l2)] =
                exact_div(d5, checked_mul(16, checked_mul(l1, l2)));
        }
    }
    return out;
}

double EvolutionParams::period() const { return 2.0 * std::numbers::pi / omega; }

ScaledSpectrum scale_angles(const WalshSpectrum& spectrum, const EvolutionParams& params) {
    if (!(params.omega > 0.0) || !std::isfinite(params.omega) || !std::isfinite(params.t)) {
        throw DomainError("omega must be positive and t finite");
    }
    if (qubits_for_dimension(params.d) != spectrum.q) {
        throw DomainError("spectrum and evolution parameters disagree on d");
    }
    const double d2 = static_cast<double>(params.d) * static_cast<double>(params.d);
    const double factor = -params.omega * params.t / d2;
    ScaledSpectrum out;
    out.q = spectrum.q;
    for (const auto& [j, a] : spectrum.entries) {
        out.entries.emplace_hint(out.entries.end(), j, factor * static_cast<double>(a));
    }
    return out;
}

}  // namespace qprime
