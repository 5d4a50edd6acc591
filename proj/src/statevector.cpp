#include "qprime/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qprime/error.hpp"

namespace qprime {

namespace {

// Spreads i over the positions whose bit in `hole` is zero (hole is one bit).
inline std::uint64_t insert_zero(std::uint64_t i, std::uint64_t hole) noexcept {
    const std::uint64_t low = i & (hole - 1);
    return ((i - low) << 1) | low;
}

}  // namespace

StateVector::StateVector(int width) : width_(width) {
    if (width < 1 || width > 30) {
        throw DomainError("statevector width out of range: " + std::to_string(width));
    }
    amps_.assign(std::size_t{1} << width, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : width_(0), amps_(std::move(amplitudes)) {
    if (amps_.size() < 2 || !std::has_single_bit(amps_.size())) {
        throw DomainError("amplitude count must be a power of two >= 2");
    }
    width_ = std::countr_zero(amps_.size());
}

double StateVector::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

void StateVector::apply(const Gate& gate) {
    const std::uint64_t half = amps_.size() / 2;
    const std::uint64_t t = mask(gate.target);
    switch (gate.kind) {
        case GateKind::Hadamard: {
            const double r = std::numbers::sqrt2 / 2.0;
            for (std::uint64_t i = 0; i < half; ++i) {
                const std::uint64_t i0 = insert_zero(i, t);
                const Complex a = amps_[i0];
                const Complex b = amps_[i0 | t];
                amps_[i0] = r * (a + b);
                amps_[i0 | t] = r * (a - b);
            }
            break;
        }
        case GateKind::RotationZ: {
            const Complex lo = std::polar(1.0, -gate.angle / 2.0);
            const Complex hi = std::polar(1.0, gate.angle / 2.0);
            for (std::uint64_t i = 0; i < half; ++i) {
                const std::uint64_t i0 = insert_zero(i, t);
                amps_[i0] *= lo;
                amps_[i0 | t] *= hi;
            }
            break;
        }
        case GateKind::ControlledNot: {
            const std::uint64_t c = mask(gate.control);
            for (std::uint64_t i = 0; i < half; ++i) {
                const std::uint64_t i0 = insert_zero(i, t);
                if (i0 & c) std::swap(amps_[i0], amps_[i0 | t]);
            }
            break;
        }
        case GateKind::ControlledSwap: {
            const std::uint64_t c = mask(gate.control);
            const std::uint64_t b = mask(gate.target2);
            for (std::uint64_t i = 0; i < half; ++i) {
                const std::uint64_t i0 = insert_zero(i, t);
                // Visit each (a=0, b=1) / (a=1, b=0) pair once.
                if ((i0 & c) && (i0 & b)) std::swap(amps_[i0], amps_[(i0 | t) & ~b]);
            }
            break;
        }
        case GateKind::MeasureZ:
            throw DomainError("measurement is not a unitary gate; sample from P0 instead");
    }
}

void apply_circuit_inplace(StateVector& state, const Circuit& circuit) {
    if (state.width() != circuit.width()) {
        throw DomainError("state width " + std::to_string(state.width()) +
                          " does not match circuit width " + std::to_string(circuit.width()));
    }
    if (circuit.has_measurement()) {
        throw DomainError("circuit contains a measurement");
    }
    for (const auto& g : circuit.gates()) state.apply(g);
}

StateVector apply_circuit(StateVector state, const Circuit& circuit) {
    apply_circuit_inplace(state, circuit);
    return state;
}

std::string_view to_string(PurityMethod method) noexcept {
    switch (method) {
        case PurityMethod::ExactTrace: return "exact-trace";
        case PurityMethod::SwapExact: return "swap-exact";
        case PurityMethod::SwapSampled: return "swap-sampled";
    }
    return "?";
}

PurityEstimate reduced_purity_exact(const StateVector& state, int cut) {
    if (cut < 1 || 2 * cut != state.width()) {
        throw DomainError("subsystem cut must be half the register width");
    }
    const std::size_t dim_a = std::size_t{1} << cut;
    const std::size_t dim_b = std::size_t{1} << (state.width() - cut);
    const auto m = state.amplitudes();

    // rho_A = M M^dagger with M[a][b] = amplitude(a * dim_b + b).
    std::vector<Complex> rho(dim_a * dim_a);
    for (std::size_t a = 0; a < dim_a; ++a) {
        for (std::size_t a2 = a; a2 < dim_a; ++a2) {
            Complex s = 0.0;
            for (std::size_t b = 0; b < dim_b; ++b) {
                s += m[a * dim_b + b] * std::conj(m[a2 * dim_b + b]);
            }
            rho[a * dim_a + a2] = s;
            rho[a2 * dim_a + a] = std::conj(s);
        }
    }
    Complex trace = 0.0;
    for (std::size_t a = 0; a < dim_a; ++a) {
        for (std::size_t a2 = 0; a2 < dim_a; ++a2) {
            trace += rho[a * dim_a + a2] * rho[a2 * dim_a + a];
        }
    }
    PurityEstimate out;
    out.value = trace.real();
    out.method = PurityMethod::ExactTrace;
    out.p0 = (1.0 + out.value) / 2.0;
    out.imag_residue = trace.imag();
    return out;
}

double swap_test_p0(const StateVector& state) {
    const auto amps = state.amplitudes();
    double p0 = 0.0;
    for (std::size_t i = 0; i < amps.size() / 2; ++i) p0 += std::norm(amps[i]);
    return p0;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
    return mix64(base_seed ^ mix64((index + 1) * kGolden));
}

PurityEstimate sample_purity(double p0, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw DomainError("sampling needs at least one shot");
    if (!(p0 >= -1e-12 && p0 <= 1.0 + 1e-12)) {
        throw DomainError("P0 outside [0, 1]: " + std::to_string(p0));
    }
    p0 = std::clamp(p0, 0.0, 1.0);
    std::uint64_t successes = 0;
    for (std::uint64_t i = 0; i < shots; ++i) {
        const std::uint64_t h = mix64(seed + (i + 1) * kGolden);
        const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
        successes += u < p0 ? 1 : 0;
    }
    PurityEstimate out;
    out.method = PurityMethod::SwapSampled;
    out.shots = shots;
    out.p0 = p0;
    out.value = 2.0 * (static_cast<double>(successes) / static_cast<double>(shots)) - 1.0;
    return out;
}

std::string_view to_string(Backend backend) noexcept {
    switch (backend) {
        case Backend::ExactTrace: return "exact-trace";
        case Backend::SwapExact: return "swap-exact";
        case Backend::FastSampled: return "fast-sampled";
    }
    return "?";
}

Backend backend_from_string(std::string_view name) {
    if (name == "exact-trace") return Backend::ExactTrace;
    if (name == "swap-exact") return Backend::SwapExact;
    if (name == "fast-sampled") return Backend::FastSampled;
    throw DomainError("unknown backend: " + std::string(name));
}

PurityEstimate simulate_purity(std::uint64_t d, const EvolutionParams& params, Backend backend,
                               std::uint64_t shots, std::uint64_t seed) {
    const int q = qubits_for_dimension(d);
    if (backend == Backend::SwapExact) {
        if (2 * q + 1 > kMaxSwapExactWidth) {
            throw ResourceError("swap-exact backend needs width " + std::to_string(2 * q + 1) +
                                " > " + std::to_string(kMaxSwapExactWidth) +
                                "; use the fast-sampled backend");
        }
        const Circuit circuit = build_pipeline(d, params, PipelineMode::SwapTest,
                                               SynthesisMode::Faithful, false);
        StateVector state(circuit.width());
        apply_circuit_inplace(state, circuit);
        const double p0 = swap_test_p0(state);
        if (shots > 0) return sample_purity(p0, shots, seed);
        PurityEstimate out;
        out.method = PurityMethod::SwapExact;
        out.p0 = p0;
        out.value = 2.0 * p0 - 1.0;
        return out;
    }

    const Circuit circuit = build_pipeline(d, params, PipelineMode::StateOnly);
    StateVector state(q);
    apply_circuit_inplace(state, circuit);
    const PurityEstimate exact = reduced_purity_exact(state, q / 2);
    if (backend == Backend::ExactTrace || shots == 0) return exact;
    return sample_purity((1.0 + exact.value) / 2.0, shots, seed);
}

}  // namespace qprime
