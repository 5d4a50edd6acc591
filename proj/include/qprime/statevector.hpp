#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qprime/circuit.hpp"

namespace qprime {

using Complex = std::complex<double>;

/// Dense statevector over `width` qubits; qubit 0 is the most significant bit
/// of the amplitude index.
class StateVector {
public:
    /// |0...0>
    explicit StateVector(int width);
    /// Takes ownership of 2^width amplitudes; throws DomainError on a length
    /// that is not a power of two.
    explicit StateVector(std::vector<Complex> amplitudes);

    int width() const noexcept { return width_; }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    std::span<Complex> amplitudes() noexcept { return amps_; }
    const Complex& operator[](std::size_t i) const noexcept { return amps_[i]; }

    double norm_squared() const noexcept;

    void apply(const Gate& gate);

private:
    std::uint64_t mask(int qubit) const noexcept {
        return std::uint64_t{1} << (width_ - 1 - qubit);
    }

    int width_;
    std::vector<Complex> amps_;
};

/// Applies every gate in order. Throws DomainError on width mismatch or if
/// the circuit contains a measurement.
void apply_circuit_inplace(StateVector& state, const Circuit& circuit);
StateVector apply_circuit(StateVector state, const Circuit& circuit);

enum class PurityMethod : std::uint8_t { ExactTrace, SwapExact, SwapSampled };

std::string_view to_string(PurityMethod method) noexcept;

struct PurityEstimate {
    double value = 1.0;
    PurityMethod method = PurityMethod::ExactTrace;
    std::uint64_t shots = 0;
    double p0 = 1.0;          // swap methods
    double imag_residue = 0;  // exact-trace only
};

/// Tr(rho_A^2) with subsystem A the first `cut` qubits. Requires
/// 2 * cut == state.width().
PurityEstimate reduced_purity_exact(const StateVector& state, int cut);

/// Probability that qubit 0 reads 0.
double swap_test_p0(const StateVector& state);

/// SplitMix64 finalizer; a counter-based hash used for every random draw.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for time point `index` of a sweep seeded with `base_seed`.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept;

/// Draws `shots` Bernoulli(p0) outcomes, the i-th from hash(seed, i), and
/// returns 2 * (successes / shots) - 1.
PurityEstimate sample_purity(double p0, std::uint64_t shots, std::uint64_t seed);

/// Largest circuit width the swap-exact backend accepts.
inline constexpr int kMaxSwapExactWidth = 25;

enum class Backend : std::uint8_t { ExactTrace, SwapExact, FastSampled };

std::string_view to_string(Backend backend) noexcept;
Backend backend_from_string(std::string_view name);

/// Purity of the uniformly prepared, evolved state at time params.t.
/// ExactTrace ignores shots. SwapExact simulates the full 2q+1 circuit and
/// samples from its P0 when shots > 0. FastSampled samples from
/// (1 + exact purity) / 2 when shots > 0.
PurityEstimate simulate_purity(std::uint64_t d, const EvolutionParams& params, Backend backend,
                               std::uint64_t shots, std::uint64_t seed);

}  // namespace qprime
