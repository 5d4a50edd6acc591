#include "qprime/circuit.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qprime/error.hpp"

namespace qprime {

std::string_view to_string(GateKind kind) noexcept {
    switch (kind) {
        case GateKind::Hadamard: return "H";
        case GateKind::RotationZ: return "RZ";
        case GateKind::ControlledNot: return "CNOT";
        case GateKind::ControlledSwap: return "CSWAP";
        case GateKind::MeasureZ: return "MEASURE";
    }
    return "?";
}

std::string_view to_string(Stage stage) noexcept {
    switch (stage) {
        case Stage::Preparation: return "preparation";
        case Stage::Evolution: return "evolution";
        case Stage::PurityTest: return "purity";
    }
    return "?";
}

Gate Gate::hadamard(int target, Stage stage) {
    return Gate{GateKind::Hadamard, target, -1, -1, 0.0, stage};
}

Gate Gate::rotation_z(int target, double angle, Stage stage) {
    return Gate{GateKind::RotationZ, target, -1, -1, angle, stage};
}

Gate Gate::cnot(int control, int target, Stage stage) {
    return Gate{GateKind::ControlledNot, target, control, -1, 0.0, stage};
}

Gate Gate::cswap(int control, int a, int b, Stage stage) {
    return Gate{GateKind::ControlledSwap, a, control, b, 0.0, stage};
}

Gate Gate::measure_z(int target, Stage stage) {
    return Gate{GateKind::MeasureZ, target, -1, -1, 0.0, stage};
}

Circuit::Circuit(int width) : width_(width) {
    if (width < 1 || width > 62) {
        throw DomainError("circuit width out of range: " + std::to_string(width));
    }
}

bool Circuit::has_measurement() const noexcept {
    return !gates_.empty() && gates_.back().kind == GateKind::MeasureZ;
}

void Circuit::add(const Gate& gate) {
    auto in_range = [this](int i) { return i >= 0 && i < width_; };
    if (!in_range(gate.target)) {
        throw DomainError("gate target out of range: " + std::to_string(gate.target));
    }
    switch (gate.kind) {
        case GateKind::ControlledNot:
            if (!in_range(gate.control) || gate.control == gate.target) {
                throw DomainError("invalid CNOT qubits");
            }
            break;
        case GateKind::ControlledSwap:
            if (!in_range(gate.control) || !in_range(gate.target2) || gate.control == gate.target ||
                gate.control == gate.target2 || gate.target == gate.target2) {
                throw DomainError("invalid CSWAP qubits");
            }
            break;
        case GateKind::RotationZ:
            if (!std::isfinite(gate.angle)) throw DomainError("non-finite rotation angle");
            break;
        case GateKind::Hadamard:
        case GateKind::MeasureZ:
            break;
    }
    if (gate.kind != GateKind::MeasureZ && has_measurement()) {
        throw DomainError("unitary gate after measurement");
    }
    gates_.push_back(gate);
}

void Circuit::append(const Circuit& fragment) {
    if (fragment.width() != width_) {
        throw DomainError("fragment width mismatch");
    }
    for (const auto& g : fragment.gates()) add(g);
}

namespace {

void check_register(int q, int width, int offset) {
    if (q < 1 || offset < 0 || offset + q > width) {
        throw DomainError("register does not fit in circuit width");
    }
}

}  // namespace

Circuit walsh_term_fragment(Index j, double angle, int q, int width, int register_offset) {
    check_register(q, width, register_offset);
    if (j == 0 || (j >> q)) {
        throw DomainError("Walsh index out of range: " + std::to_string(j));
    }
    Circuit out(width);
    // Bit m-1 of j selects register qubit q_m, i.e. circuit index offset + m - 1.
    const int top = register_offset + (63 - std::countl_zero(j));
    std::vector<int> controls;
    for (int b = 0; b < q; ++b) {
        const int qubit = register_offset + b;
        if (((j >> b) & 1U) && qubit != top) controls.push_back(qubit);
    }
    for (int c : controls) out.add(Gate::cnot(c, top));
    out.add(Gate::rotation_z(top, -2.0 * angle));
    for (auto it = controls.rbegin(); it != controls.rend(); ++it) out.add(Gate::cnot(*it, top));
    return out;
}

Circuit synthesize_diagonal(const ScaledSpectrum& scaled, int width, int register_offset,
                            SynthesisMode mode) {
    check_register(scaled.q, width, register_offset);
    Circuit out(width);
    for (const auto& [j, a] : scaled.entries) {
        if (mode == SynthesisMode::Optimized && std::abs(2.0 * a) < kPruneThreshold) continue;
        out.append(walsh_term_fragment(j, a, scaled.q, width, register_offset));
    }
    return out;
}

Circuit prepare_uniform(int q, int width, int register_offset) {
    check_register(q, width, register_offset);
    Circuit out(width);
    for (int i = 0; i < q; ++i) out.add(Gate::hadamard(register_offset + i));
    return out;
}

Circuit build_swap_test(int q, bool with_measurement) {
    if (q < 2 || q % 2 != 0) {
        throw DomainError("swap test needs an even register size, got " + std::to_string(q));
    }
    Circuit out(2 * q + 1);
    out.add(Gate::hadamard(0, Stage::PurityTest));
    for (int i = 1; i <= q / 2; ++i) {
        out.add(Gate::cswap(0, i, q + i));
    }
    out.add(Gate::hadamard(0, Stage::PurityTest));
    if (with_measurement) out.add(Gate::measure_z(0));
    return out;
}

Circuit build_pipeline(std::uint64_t d, const EvolutionParams& params, PipelineMode mode,
                       SynthesisMode synthesis, bool with_measurement) {
    const int q = qubits_for_dimension(d);
    EvolutionParams p = params;
    p.d = d;
    const ScaledSpectrum angles = scale_angles(closed_form_spectrum(d), p);

    if (mode == PipelineMode::StateOnly) {
        Circuit out = prepare_uniform(q, q, 0);
        out.append(synthesize_diagonal(angles, q, 0, synthesis));
        return out;
    }
    const int width = 2 * q + 1;
    Circuit out(width);
    out.append(prepare_uniform(q, width, 1));
    out.append(prepare_uniform(q, width, q + 1));
    out.append(synthesize_diagonal(angles, width, 1, synthesis));
    out.append(synthesize_diagonal(angles, width, q + 1, synthesis));
    out.append(build_swap_test(q, with_measurement));
    return out;
}

GateCountPrediction predicted_gate_counts(int q) {
    if (q < 2 || q % 2 != 0) {
        throw DomainError("gate-count formulas need an even q");
    }
    const std::int64_t qq = q;
    return {qq, 3 * qq * qq / 4 + qq, 3 * qq / 2 + 2};
}

bool GateCountReport::all_match() const noexcept {
    return matches[0] && matches[1] && matches[2];
}

GateCountReport audit_gates(const Circuit& circuit, std::uint64_t d) {
    GateCountReport report;
    report.q = qubits_for_dimension(d);
    if (circuit.width() == report.q) {
        report.copies = 1;
    } else if (circuit.width() == 2 * report.q + 1) {
        report.copies = 2;
    } else {
        throw DomainError("circuit width does not match d");
    }
    report.predicted = predicted_gate_counts(report.q);

    for (const auto& g : circuit.gates()) {
        auto& stage = report.stages[static_cast<std::size_t>(g.stage)];
        stage.by_kind[static_cast<std::size_t>(g.kind)] += 1;
        switch (g.kind) {
            case GateKind::ControlledSwap: stage.elementary += kControlledSwapWeight; break;
            case GateKind::MeasureZ: break;
            default: stage.elementary += 1; break;
        }
    }
    const auto& purity = report.stage(Stage::PurityTest);
    for (auto n : purity.by_kind) report.has_purity_stage |= n > 0;

    const std::int64_t copies = report.copies;
    report.matches[0] = report.stage(Stage::Preparation).elementary == copies * report.predicted.g1;
    report.matches[1] = report.stage(Stage::Evolution).elementary == copies * report.predicted.g2;
    report.matches[2] = !report.has_purity_stage || purity.elementary == report.predicted.g3;
    report.pruned = report.stage(Stage::Evolution).elementary < copies * report.predicted.g2;
    return report;
}

}  // namespace qprime
