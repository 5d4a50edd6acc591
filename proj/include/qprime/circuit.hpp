#pragma once

// Elementary-gate circuit IR, diagonal-unitary synthesis and gate audits.
//
// Qubit i of a circuit of width n addresses bit (n - 1 - i) of the amplitude
// index, so qubit 0 is the most significant bit. Inside a q-qubit register
// starting at offset o, register qubit q_i (1-based) sits at circuit index
// o + i - 1 and carries the dyadic bit k_i of the basis label |k>.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qprime/walsh.hpp"

namespace qprime {

enum class GateKind : std::uint8_t { Hadamard, RotationZ, ControlledNot, ControlledSwap, MeasureZ };

/// Pipeline stage a gate belongs to; used by audits.
enum class Stage : std::uint8_t { Preparation, Evolution, PurityTest };

std::string_view to_string(GateKind kind) noexcept;
std::string_view to_string(Stage stage) noexcept;

struct Gate {
    GateKind kind = GateKind::Hadamard;
    int target = 0;
    int control = -1;   // ControlledNot, ControlledSwap
    int target2 = -1;   // second swap target
    double angle = 0.0; // RotationZ only, radians
    Stage stage = Stage::Preparation;

    static Gate hadamard(int target, Stage stage = Stage::Preparation);
    static Gate rotation_z(int target, double angle, Stage stage = Stage::Evolution);
    static Gate cnot(int control, int target, Stage stage = Stage::Evolution);
    static Gate cswap(int control, int a, int b, Stage stage = Stage::PurityTest);
    static Gate measure_z(int target, Stage stage = Stage::PurityTest);

    friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
public:
    explicit Circuit(int width);

    int width() const noexcept { return width_; }
    const std::vector<Gate>& gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool has_measurement() const noexcept;

    /// Validates indices, angle finiteness and measurement placement.
    void add(const Gate& gate);
    /// Appends every gate of a fragment of equal width.
    void append(const Circuit& fragment);

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    int width_;
    std::vector<Gate> gates_;
};

enum class SynthesisMode : std::uint8_t {
    Faithful,  // emit every rotation, including zero angles
    Optimized  // drop rotations with |theta| < kPruneThreshold
};

inline constexpr double kPruneThreshold = 1e-15;

/// exp(i a_j w_j) for every entry, ascending j: a CNOT ladder from the lower
/// set bits of j onto its most significant set bit, Rz(-2 a_j) there, and the
/// mirrored ladder. The result realizes the diagonal unitary up to the
/// dropped j = 0 global phase.
Circuit synthesize_diagonal(const ScaledSpectrum& scaled, int width, int register_offset,
                            SynthesisMode mode = SynthesisMode::Faithful);

/// Single staircase fragment for one Walsh term.
Circuit walsh_term_fragment(Index j, double angle, int q, int width, int register_offset);

/// One Hadamard per register qubit.
Circuit prepare_uniform(int q, int width, int register_offset);

/// Width 2q+1: ancilla 0, copy one at 1..q, copy two at q+1..2q. H, q/2
/// controlled swaps over the subsystem-A qubits, H, measurement.
Circuit build_swap_test(int q, bool with_measurement = true);

enum class PipelineMode : std::uint8_t { StateOnly, SwapTest };

Circuit build_pipeline(std::uint64_t d, const EvolutionParams& params, PipelineMode mode,
                       SynthesisMode synthesis = SynthesisMode::Faithful,
                       bool with_measurement = true);

struct GateCountPrediction {
    std::int64_t g1 = 0;
    std::int64_t g2 = 0;
    std::int64_t g3 = 0;
};

/// G1 = q, G2 = 3q^2/4 + q, G3 = 3q/2 + 2.
GateCountPrediction predicted_gate_counts(int q);

/// Elementary weight used when comparing against G3: a controlled swap
/// counts as three gates, measurements count as zero.
inline constexpr int kControlledSwapWeight = 3;

struct StageCounts {
    std::array<std::int64_t, 5> by_kind{};  // indexed by GateKind
    std::int64_t elementary = 0;

    std::int64_t count(GateKind kind) const noexcept {
        return by_kind[static_cast<std::size_t>(kind)];
    }
};

struct GateCountReport {
    int q = 0;
    int copies = 1;  // 2 for swap-test pipelines
    std::array<StageCounts, 3> stages{};  // indexed by Stage
    GateCountPrediction predicted;
    bool has_purity_stage = false;
    std::array<bool, 3> matches{};
    bool pruned = false;  // evolution stage below its faithful count

    const StageCounts& stage(Stage s) const noexcept { return stages[static_cast<std::size_t>(s)]; }
    bool all_match() const noexcept;
};

GateCountReport audit_gates(const Circuit& circuit, std::uint64_t d);

}  // namespace qprime
