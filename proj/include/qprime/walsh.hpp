#pragma once

// Paley-ordered Walsh functions and the sparse Walsh spectrum of the
// coupled-oscillator phase vector.
//
// Bit conventions, fixed for the whole library:
//   * a row index j is read in binary, j_1 = least significant bit;
//   * a column index k is read dyadically, k_1 = most significant bit
//     of a q-bit word.
// So w(j, k) = (-1)^popcount(j & bit_reverse_q(k)).

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace qprime {

using Index = std::uint64_t;

/// Number of set bits of j.
int hamming_weight(Index j) noexcept;

/// Reverses the low q bits of k.
Index bit_reverse(Index k, int q) noexcept;

/// True for 1, 2, 4, ...
bool is_power_of_two(std::uint64_t n) noexcept;

/// q such that d*d == 2^q; throws DomainError unless d >= 2 is a power of 2.
int qubits_for_dimension(std::uint64_t d);

/// Paley-ordered discrete Walsh function, +1 or -1.
int walsh_function(Index j, Index k, int q);

/// Row j of the 2^q x 2^q Paley Walsh matrix, assembled from the nested
/// alternating blocks of its Rademacher factors (shortest period innermost).
std::vector<std::int8_t> walsh_row(Index j, int q);

/// f_k for k = (n_A - 1) * d + (n_B - 1) equals n_A * n_B.
struct PhaseVector {
    std::uint64_t d = 0;
    std::vector<std::int64_t> entries;

    int qubits() const;
};

PhaseVector phase_vector(std::uint64_t d);

/// Sparse raw Walsh angles: j -> a_j with a_j = sum_k f_k w(j, k).
/// Absent keys are zero; j = 0 is never stored.
struct WalshSpectrum {
    int q = 0;
    std::map<Index, std::int64_t> entries;

    std::size_t size() const noexcept { return entries.size(); }
    std::int64_t at(Index j) const noexcept;
};

/// Dense Paley transform of an integer vector of length 2^q, all 2^q raw
/// coefficients including j = 0. O(q 2^q). Throws DomainError on a length
/// that is not a power of two or if the coefficients could overflow int64.
std::vector<std::int64_t> paley_transform(std::span<const std::int64_t> f);

/// Sparse raw spectrum of f (j >= 1, zeros omitted).
WalshSpectrum walsh_transform(std::span<const std::int64_t> f);
WalshSpectrum walsh_transform(const PhaseVector& f);

/// Same spectrum summed term by term from walsh_function. O(4^q); used to
/// cross-check the fast and closed-form paths.
WalshSpectrum direct_walsh_transform(std::span<const std::int64_t> f);

/// Closed-form sparse spectrum of phase_vector(d) in O(q^2): the q
/// single-bit entries and the q^2/4 two-bit entries pairing one low-half bit
/// with one high-half bit. Throws DomainError unless d is a power of two, and
/// on int64 overflow.
WalshSpectrum closed_form_spectrum(std::uint64_t d);

struct EvolutionParams {
    double omega = 0.1;
    double t = 0.0;
    std::uint64_t d = 2;

    double period() const;
};

/// Time-scaled angles a_j(t) = (-omega t / d^2) a_j.
struct ScaledSpectrum {
    int q = 0;
    std::map<Index, double> entries;
};

ScaledSpectrum scale_angles(const WalshSpectrum& spectrum, const EvolutionParams& params);

}  // namespace qprime
