#include <doctest.h>

#include <random>

#include "qprime/error.hpp"
#include "qprime/spectral.hpp"
#include "qprime/statevector.hpp"
#include "support/oracles.hpp"

using namespace qprime;
using qprime::testing::cplx;

namespace {

// Dense 2^n x 2^n reference for a single gate, built from its action on bits.
std::vector<cplx> dense_apply(const Gate& g, int width, const std::vector<cplx>& in) {
    const std::size_t n = in.size();
    auto bit = [&](std::size_t idx, int qubit) { return (idx >> (width - 1 - qubit)) & 1U; };
    auto flip = [&](std::size_t idx, int qubit) { return idx ^ (std::size_t{1} << (width - 1 - qubit)); };
    std::vector<cplx> out(n, 0.0);
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 0; k < n; ++k) {
        switch (g.kind) {
            case GateKind::Hadamard:
                // H|b> = (|0> + (-1)^b |1>) / sqrt2
                out[k & ~(std::size_t{1} << (width - 1 - g.target))] += r * in[k];
                out[k | (std::size_t{1} << (width - 1 - g.target))] += (bit(k, g.target) ? -r : r) * in[k];
                break;
            case GateKind::RotationZ:
                out[k] += std::polar(1.0, (bit(k, g.target) ? 0.5 : -0.5) * g.angle) * in[k];
                break;
            case GateKind::ControlledNot:
                out[bit(k, g.control) ? flip(k, g.target) : k] += in[k];
                break;
            case GateKind::ControlledSwap: {
                std::size_t m = k;
                if (bit(k, g.control) && bit(k, g.target) != bit(k, g.target2)) {
                    m = flip(flip(k, g.target), g.target2);
                }
                out[m] += in[k];
                break;
            }
            case GateKind::MeasureZ: break;
        }
    }
    return out;
}

Gate random_gate(int width, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 3), qubit(0, width - 1);
    std::uniform_real_distribution<double> angle(-7.0, 7.0);
    auto distinct = [&](std::vector<int> taken) {
        int x;
        do { x = qubit(rng); } while (std::find(taken.begin(), taken.end(), x) != taken.end());
        return x;
    };
    const int t = qubit(rng);
    switch (kind(rng)) {
        case 0: return Gate::hadamard(t);
        case 1: return Gate::rotation_z(t, angle(rng));
        case 2: return Gate::cnot(distinct({t}), t);
        default: {
            const int c = distinct({t});
            return Gate::cswap(c, t, distinct({t, c}));
        }
    }
}

std::vector<cplx> random_state(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    double s = 0.0;
    for (auto& x : v) {
        x = cplx(g(rng), g(rng));
        s += std::norm(x);
    }
    for (auto& x : v) x /= std::sqrt(s);
    return v;
}

}  // namespace

TEST_CASE("initial state is |0...0>") {
    StateVector s(3);
    CHECK(s.width() == 3);
    CHECK(s[0] == cplx(1.0, 0.0));
    CHECK(s.norm_squared() == 1.0);
    CHECK_THROWS_AS(StateVector(0), DomainError);
    CHECK_THROWS_AS(StateVector(std::vector<cplx>(6)), DomainError);
}

TEST_CASE("each gate matches its dense matrix") {
    std::mt19937_64 rng(17);
    for (int width = 3; width <= 5; ++width) {
        for (int trial = 0; trial < 200; ++trial) {
            const auto g = random_gate(width, rng);
            const auto in = random_state(std::size_t{1} << width, rng);
            StateVector s(in);
            s.apply(g);
            const auto want = dense_apply(g, width, in);
            double err = 0.0;
            for (std::size_t k = 0; k < in.size(); ++k) err = std::max(err, std::abs(s[k] - want[k]));
            CHECK(err <= 1e-14);
        }
    }
}

TEST_CASE("qubit 0 is the most significant bit") {
    StateVector s(3);
    s.apply(Gate::hadamard(0));
    CHECK(std::abs(s[4]) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(s[1]) == 0.0);
}

TEST_CASE("norm is preserved over 10^4 random gates") {
    std::mt19937_64 rng(99);
    StateVector s(random_state(std::size_t{1} << 8, rng));
    for (int i = 0; i < 10000; ++i) s.apply(random_gate(8, rng));
    CHECK(std::abs(s.norm_squared() - 1.0) <= 1e-12);
}

TEST_CASE("measurement is refused by the simulator") {
    StateVector s(2);
    CHECK_THROWS_AS(s.apply(Gate::measure_z(0)), DomainError);
    Circuit c(2);
    c.add(Gate::measure_z(0));
    CHECK_THROWS_AS(apply_circuit_inplace(s, c), DomainError);
    CHECK_THROWS_AS(apply_circuit_inplace(s, Circuit(3)), DomainError);
}

TEST_CASE("reduced purity of reference states") {
    StateVector product(4);
    CHECK(reduced_purity_exact(product, 2).value == doctest::Approx(1.0).epsilon(1e-15));

    // Bell pair across the cut.
    Circuit bell(2);
    bell.add(Gate::hadamard(0));
    bell.add(Gate::cnot(0, 1));
    const auto b = apply_circuit(StateVector(2), bell);
    CHECK(reduced_purity_exact(b, 1).value == doctest::Approx(0.5).epsilon(1e-15));

    // Two Bell pairs across a 2|2 cut: maximally mixed, purity 1/4.
    Circuit two(4);
    two.add(Gate::hadamard(0));
    two.add(Gate::hadamard(1));
    two.add(Gate::cnot(0, 2));
    two.add(Gate::cnot(1, 3));
    CHECK(reduced_purity_exact(apply_circuit(StateVector(4), two), 2).value ==
          doctest::Approx(0.25).epsilon(1e-15));

    CHECK_THROWS_AS(reduced_purity_exact(product, 1), DomainError);
}

TEST_CASE("purity of random states lies in [1/d, 1]") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        StateVector s(random_state(64, rng));
        const auto p = reduced_purity_exact(s, 3);
        CHECK(p.value >= 1.0 / 8.0 - 1e-12);
        CHECK(p.value <= 1.0 + 1e-12);
        CHECK(std::abs(p.imag_residue) <= 1e-12);
    }
}

TEST_CASE("SWAP trace identity: Tr((V1 x V2) SWAP) = Tr(V1 V2)") {
    std::mt19937_64 rng(21);
    for (std::size_t n : {2u, 3u, 4u, 8u}) {
        const auto v1 = testing::random_matrix(n, rng);
        const auto v2 = testing::random_matrix(n, rng);
        const auto lhs = testing::trace_kron_swap_dense(v1, v2);
        const auto rhs = testing::trace_product(v1, v2);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
        CHECK(std::abs(testing::trace_kron_swap(v1, v2) - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("backends agree with each other and with the analytic purity") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> tt(0.0, 40.0);
    for (std::uint64_t d : {2u, 4u, 8u}) {
        const auto c = InitialCoefficients::uniform(d);
        for (int trial = 0; trial < 8; ++trial) {
            const EvolutionParams params{0.1, tt(rng), d};
            const double exact = simulate_purity(d, params, Backend::ExactTrace, 0, 0).value;
            const double swap = simulate_purity(d, params, Backend::SwapExact, 0, 0).value;
            const double analytic = analytic_purity(c, params.omega, params.t);
            CHECK(std::abs(exact - swap) <= 1e-9);
            CHECK(std::abs(exact - analytic) <= 1e-9);
        }
    }
}

TEST_CASE("swap-exact refuses widths beyond its limit") {
    CHECK_THROWS_AS(simulate_purity(128, {0.1, 1.0, 128}, Backend::SwapExact, 0, 0), ResourceError);
}

TEST_CASE("backend names round-trip") {
    for (auto b : {Backend::ExactTrace, Backend::SwapExact, Backend::FastSampled}) {
        CHECK(backend_from_string(to_string(b)) == b);
    }
    CHECK_THROWS_AS(backend_from_string("qasm"), DomainError);
}

TEST_CASE("sample_purity") {
    CHECK(sample_purity(1.0, 1000, 5).value == 1.0);
    CHECK(sample_purity(0.0, 1000, 5).value == -1.0);
    const auto est = sample_purity(0.9, 100000, 12345);
    CHECK(std::abs(est.value - 0.8) <= 0.012);
    CHECK(est.shots == 100000);
    CHECK(sample_purity(0.9, 5000, 1).value == sample_purity(0.9, 5000, 1).value);
    CHECK_THROWS_AS(sample_purity(0.5, 0, 1), DomainError);
    CHECK_THROWS_AS(sample_purity(1.5, 10, 1), DomainError);
}

TEST_CASE("sampled backends are reproducible for a fixed seed") {
    const EvolutionParams params{0.1, 3.0, 4};
    const auto a = simulate_purity(4, params, Backend::FastSampled, 2000, 77);
    const auto b = simulate_purity(4, params, Backend::FastSampled, 2000, 77);
    CHECK(a.value == b.value);
    CHECK(a.method == PurityMethod::SwapSampled);
    const auto s = simulate_purity(4, params, Backend::SwapExact, 2000, 77);
    // Same P0 to rounding and the same draws give the same count.
    CHECK(std::abs(s.value - a.value) <= 2.0 / 2000);
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}
