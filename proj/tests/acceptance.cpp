// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "qprime/circuit.hpp"
#include "qprime/primality.hpp"
#include "qprime/spectral.hpp"
#include "qprime/statevector.hpp"
#include "qprime/sweep.hpp"
#include "qprime/walsh.hpp"
#include "support/oracles.hpp"

using namespace qprime;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

std::uint64_t dim_for(int q) { return std::uint64_t{1} << (q / 2); }

// Support predicted for the phase vector: single bits, and pairs of one bit
// from the low half with one bit from the high half.
std::set<Index> predicted_support(int q) {
    std::set<Index> s;
    const int half = q / 2;
    for (int i = 0; i < q; ++i) s.insert(Index{1} << i);
    for (int lo = 0; lo < half; ++lo)
        for (int hi = half; hi < q; ++hi) s.insert((Index{1} << lo) | (Index{1} << hi));
    return s;
}

Outcome walsh_sparsity() {
    Outcome o;
    for (int q = 2; q <= 12; q += 2) {
        const auto d = dim_for(q);
        const auto direct = direct_walsh_transform(phase_vector(d).entries);
        std::set<Index> support;
        for (const auto& [j, a] : direct.entries) support.insert(j);
        o.require(support == predicted_support(q), "support differs at q=" + std::to_string(q));
        o.require(direct.size() == static_cast<std::size_t>(q * q / 4 + q), "count differs at q=" + std::to_string(q));
        o.require(direct.entries == closed_form_spectrum(d).entries, "values differ at q=" + std::to_string(q));
    }
    o.detail = o.pass ? "q = 2..12: support W1 u W2, q^2/4 + q entries, closed form exact" : o.detail;
    return o;
}

Outcome synthesis_correctness() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> om(0.01, 2.0), tt(-100.0, 100.0);
    double worst = 0.0;
    for (std::uint64_t d : {2u, 4u, 8u}) {
        const int q = qubits_for_dimension(d);
        for (int trial = 0; trial < 20; ++trial) {
            const double omega = om(rng), t = tt(rng);
            const auto c = synthesize_diagonal(scale_angles(closed_form_spectrum(d), {omega, t, d}), q, 0);
            const double err = testing::phase_aligned_distance(testing::realized_diagonal(c),
                                                               testing::target_diagonal(d, omega, t));
            worst = std::max(worst, err);
        }
    }
    o.require(worst <= 1e-10, "distance " + std::to_string(worst));
    if (o.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "d = 2, 4, 8 x 20 draws, max distance %.2e", worst);
        o.detail = buf;
    }
    return o;
}

Outcome gate_counts() {
    Outcome o;
    for (int q = 2; q <= 12; q += 2) {
        const auto d = dim_for(q);
        const auto p = predicted_gate_counts(q);
        o.require(p.g1 == q && 4 * p.g2 == 3 * q * q + 4 * q && 2 * p.g3 == 3 * q + 4,
                  "formula at q=" + std::to_string(q));
        const auto r = audit_gates(build_pipeline(d, {0.1, 1.7, d}, PipelineMode::SwapTest), d);
        o.require(r.all_match(), "audit mismatch at q=" + std::to_string(q));
        o.require(r.stage(Stage::Preparation).elementary == 2 * p.g1 &&
                      r.stage(Stage::Evolution).elementary == 2 * p.g2 &&
                      r.stage(Stage::PurityTest).elementary == p.g3,
                  "stage totals at q=" + std::to_string(q));
        const auto single = audit_gates(build_pipeline(d, {0.1, 1.7, d}, PipelineMode::StateOnly), d);
        o.require(single.stage(Stage::Evolution).elementary == p.g2, "single copy at q=" + std::to_string(q));
    }
    if (o.pass) o.detail = "even q = 2..12, controlled swap counted as 3";
    return o;
}

Outcome purity_agreement() {
    Outcome o;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> tt(0.0, 2.0 * std::numbers::pi / 0.1);
    double worst = 0.0;
    for (std::uint64_t d : {2u, 4u, 8u}) {
        const auto c = InitialCoefficients::uniform(d);
        for (int trial = 0; trial < 10; ++trial) {
            const EvolutionParams params{0.1, tt(rng), d};
            const double exact = simulate_purity(d, params, Backend::ExactTrace, 0, 0).value;
            const double swap = simulate_purity(d, params, Backend::SwapExact, 0, 0).value;
            const double analytic = analytic_purity(c, params.omega, params.t);
            worst = std::max({worst, std::abs(exact - swap), std::abs(exact - analytic), std::abs(swap - analytic)});
        }
    }
    o.require(worst <= 1e-9, "purity spread " + std::to_string(worst));
    double trace_err = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const auto v1 = testing::random_matrix(16, rng);
        const auto v2 = testing::random_matrix(16, rng);
        trace_err = std::max(trace_err, std::abs(testing::trace_kron_swap_dense(v1, v2) - testing::trace_product(v1, v2)));
    }
    o.require(trace_err <= 1e-10, "swap trace error " + std::to_string(trace_err));
    if (o.pass) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "max pairwise %.2e; SWAP trace identity on 16x16 %.2e", worst, trace_err);
        o.detail = buf;
    }
    return o;
}

Outcome noiseless_separation() {
    Outcome o;
    for (std::uint64_t d : {4u, 8u, 16u, 32u}) {
        const auto c = InitialCoefficients::uniform(d);
        const double d4 = std::pow(static_cast<double>(d), 4);
        const double tau = 2.0 / d4;
        const std::uint64_t top = 2 * (d - 1);
        const auto is_prime = sieve_table(top);

        auto analytic = analytic_fourier_modes(c);
        attach_bounds(analytic, c);

        SweepOptions opt;
        opt.d = d;
        opt.partitions = default_partitions(d);
        opt.backend = Backend::ExactTrace;
        opt.threads = 0;
        auto simpson = simpson_fourier(simulate_series(opt), top);
        attach_bounds(simpson, c);

        for (const auto* s : {&analytic, &simpson}) {
            const std::string tag = (s == &analytic ? "analytic" : "simpson") + std::string(" d=") + std::to_string(d);
            for (std::uint64_t n = 2; n <= top; ++n) {
                const double excess = s->at(n) - *s->bound_at(n);
                if (is_prime[n]) {
                    o.require(std::abs(excess) <= tau, tag + " prime n=" + std::to_string(n));
                } else {
                    o.require(excess >= 4.0 / d4 - 1e-12, tag + " composite n=" + std::to_string(n));
                }
            }
            o.require(classify(*s, tau).domain_disagreements() == 0, tag + " classification");
        }
    }
    if (o.pass) o.detail = "d = 4, 8, 16, 32: analytic and Simpson modes, default p, sieve-exact on D";
    return o;
}

Outcome sampled_reproduction() {
    Outcome o;
    const std::uint64_t d = 16, p = 375, shots = 100000;
    SweepOptions opt;
    opt.d = d;
    opt.omega = 0.1;
    opt.partitions = p;
    opt.backend = Backend::FastSampled;
    opt.shots = shots;
    opt.seed = 1;
    opt.threads = 0;
    const std::uint64_t top = 2 * (d - 1);
    const auto c = InitialCoefficients::uniform(d);

    auto sampled = simpson_fourier(simulate_series(opt), top);
    attach_bounds(sampled, c);
    const auto report = classify(sampled, default_tolerance(d, shots, p));
    o.require(report.domain_disagreements() == 0, "classification disagrees with the sieve");

    const auto exact_series = analytic_series(c, 0.1, p);
    const auto exact = analytic_fourier_modes(c);
    std::uint64_t inside = 0, total = 0;
    for (std::uint64_t n = 2; n <= top; ++n, ++total) {
        const double sigma = simpson_mode_sigma(exact_series, n, shots);
        inside += std::abs(sampled.at(n) - exact.at(n)) <= 3.0 * sigma ? 1 : 0;
    }
    o.require(static_cast<double>(inside) >= 0.95 * static_cast<double>(total),
              std::to_string(inside) + "/" + std::to_string(total) + " modes inside 3 sigma");
    if (o.pass) {
        o.detail = "d=16, p=375, 1e5 shots: sieve-exact on D, " + std::to_string(inside) + "/" +
                   std::to_string(total) + " modes inside 3 sigma";
    }
    return o;
}

Outcome regime_three() {
    Outcome o;
    const std::uint64_t d = 8;
    const auto c = InitialCoefficients::uniform(d);
    auto s = analytic_fourier_modes(c);
    attach_bounds(s, c);
    const auto report = classify(s, 2.0 / std::pow(8.0, 4));
    auto row = [&](std::uint64_t n) { return report.rows[n - 2]; };
    o.require(s.at(29) == 0.0 && row(29).verdict == Verdict::Inconclusive, "n=29");
    o.require(s.at(22) == 0.0 && row(22).verdict == Verdict::Inconclusive, "n=22");
    o.require(s.at(21) > 0.0 && row(21).verdict == Verdict::Composite, "n=21");
    o.require(report.disagreements() == 0, "a regime-III prime was called composite");
    if (o.pass) o.detail = "d=8: alpha_29 = alpha_22 = 0 (inconclusive), alpha_21 > 0 (composite)";
    return o;
}

Outcome property_suites() {
    Outcome o;
    std::mt19937_64 rng(8);

    // Norm preservation.
    {
        std::uniform_int_distribution<int> kind(0, 3), qubit(0, 9);
        std::uniform_real_distribution<double> angle(-4.0, 4.0);
        StateVector s(10);
        s.apply(Gate::hadamard(0));
        for (int i = 0; i < 10000; ++i) {
            const int a = qubit(rng);
            int b = qubit(rng);
            while (b == a) b = qubit(rng);
            int e = qubit(rng);
            while (e == a || e == b) e = qubit(rng);
            switch (kind(rng)) {
                case 0: s.apply(Gate::hadamard(a)); break;
                case 1: s.apply(Gate::rotation_z(a, angle(rng))); break;
                case 2: s.apply(Gate::cnot(a, b)); break;
                default: s.apply(Gate::cswap(a, b, e)); break;
            }
        }
        o.require(std::abs(s.norm_squared() - 1.0) <= 1e-12, "norm drift");
    }

    // Purity bounds and symmetry about T/2.
    for (std::uint64_t d : {4u, 8u}) {
        const double omega = 0.1, period = 2.0 * std::numbers::pi / omega;
        std::uniform_real_distribution<double> tt(0.0, period);
        const auto c = InitialCoefficients::uniform(d);
        for (int i = 0; i < 50; ++i) {
            const double t = tt(rng);
            const double g = simulate_purity(d, {omega, t, d}, Backend::ExactTrace, 0, 0).value;
            o.require(g >= 1.0 / static_cast<double>(d) - 1e-12 && g <= 1.0 + 1e-12, "purity out of [1/d, 1]");
            o.require(std::abs(analytic_purity(c, omega, t) - analytic_purity(c, omega, period - t)) <= 1e-12,
                      "purity not symmetric about T/2");
        }
    }

    // Mode-purity reconstruction.
    for (std::uint64_t d : {4u, 8u, 16u}) {
        const auto c = InitialCoefficients::uniform(d);
        const auto s = analytic_fourier_modes(c);
        std::uniform_real_distribution<double> tt(0.0, 100.0);
        for (int i = 0; i < 50; ++i) {
            const double t = tt(rng);
            double g = *s.mean;
            for (std::uint64_t n = 1; n <= s.nmax(); ++n) g += s.at(n) * std::cos(static_cast<double>(n) * 0.1 * t);
            o.require(std::abs(g - analytic_purity(c, 0.1, t)) <= 1e-12, "reconstruction");
        }
    }

    // Transform round-trip.
    for (int q = 1; q <= 10; ++q) {
        const std::size_t n = std::size_t{1} << q;
        std::uniform_int_distribution<std::int64_t> dist(-1000, 1000);
        std::vector<std::int64_t> f(n);
        for (auto& v : f) v = dist(rng);
        const auto a = paley_transform(f);
        for (std::size_t k = 0; k < n; ++k) {
            std::int64_t acc = 0;
            for (std::size_t j = 0; j < n; ++j) acc += a[j] * walsh_function(j, k, q);
            o.require(acc == static_cast<std::int64_t>(n) * f[k], "round-trip at q=" + std::to_string(q));
        }
    }

    // Fragment order independence.
    {
        const std::uint64_t d = 8;
        const auto scaled = scale_angles(closed_form_spectrum(d), {0.3, 5.0, d});
        const auto reference = testing::realized_diagonal(synthesize_diagonal(scaled, 6, 0));
        std::vector<std::pair<Index, double>> terms(scaled.entries.begin(), scaled.entries.end());
        for (int trial = 0; trial < 5; ++trial) {
            std::shuffle(terms.begin(), terms.end(), rng);
            Circuit circuit(6);
            for (const auto& [j, a] : terms) circuit.append(walsh_term_fragment(j, a, 6, 6, 0));
            o.require(testing::phase_aligned_distance(testing::realized_diagonal(circuit), reference) <= 1e-12,
                      "fragment order changes the unitary");
        }
    }
    if (o.pass) o.detail = "norm, purity bounds, T/2 symmetry, reconstruction, round-trip, order independence";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"walsh sparsity", walsh_sparsity},
        {"synthesis correctness", synthesis_correctness},
        {"gate-count formulas", gate_counts},
        {"purity oracle agreement", purity_agreement},
        {"noiseless prime/composite separation", noiseless_separation},
        {"sampled reproduction", sampled_reproduction},
        {"regime-III caveat", regime_three},
        {"property suites", property_suites},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        std::printf("criterion %d %s  %s: %s (%.2f s)\n", index, outcome.pass ? "PASS" : "FAIL", name,
                    outcome.detail.c_str(), dt.count());
        std::fflush(stdout);
        failures += outcome.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
