#pragma once

// Test-only reference implementations. Each one takes the slow, literal route
// so that it stays independent of the library code path it checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "qprime/circuit.hpp"
#include "qprime/statevector.hpp"
#include "qprime/walsh.hpp"

namespace qprime::testing {

using cplx = std::complex<double>;

/// O(4^q) transform summing f_k * w(j, k) from the bit-by-bit definition.
inline std::vector<std::int64_t> brute_walsh(const std::vector<std::int64_t>& f, int q) {
    const std::size_t n = std::size_t{1} << q;
    std::vector<std::int64_t> a(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            // bin(j) LSB-first against dyad(k) MSB-first.
            int s = 0;
            for (int i = 1; i <= q; ++i) {
                const int ji = (j >> (i - 1)) & 1;
                const int ki = (k >> (q - i)) & 1;
                s += ji * ki;
            }
            a[j] += (s % 2 ? -1 : 1) * f[k];
        }
    }
    return a;
}

/// Diagonal of the unitary a diagonal circuit realizes, one basis state at a
/// time. Only the first `q` qubits of the circuit are exercised.
inline std::vector<cplx> realized_diagonal(const Circuit& circuit) {
    const int width = circuit.width();
    const std::size_t n = std::size_t{1} << width;
    std::vector<cplx> diag(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<cplx> amps(n, 0.0);
        amps[k] = 1.0;
        StateVector s(std::move(amps));
        apply_circuit_inplace(s, circuit);
        diag[k] = s[k];
    }
    return diag;
}

/// max_k |a_k - e^{i phi} b_k| with phi fixed by the first entry.
inline double phase_aligned_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const cplx phase = a[0] / b[0];
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::max(worst, std::abs(a[k] - phase * b[k]));
    }
    return worst;
}

/// diag(exp(-i omega n_A n_B t)) on k = (n_A - 1) d + (n_B - 1).
inline std::vector<cplx> target_diagonal(std::uint64_t d, double omega, double t) {
    std::vector<cplx> out;
    out.reserve(d * d);
    for (std::uint64_t a = 1; a <= d; ++a) {
        for (std::uint64_t b = 1; b <= d; ++b) {
            out.push_back(std::polar(1.0, -omega * static_cast<double>(a * b) * t));
        }
    }
    return out;
}

using Matrix = std::vector<std::vector<cplx>>;

inline Matrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix m(n, std::vector<cplx>(n));
    for (auto& row : m) {
        for (auto& x : row) x = cplx(g(rng), g(rng));
    }
    return m;
}

/// Tr((V1 (x) V2) SWAP) from explicit matrix elements:
/// <j l| (V1 (x) V2) SWAP |j l> = <j l|(V1 (x) V2)|l j>.
inline cplx trace_kron_swap(const Matrix& v1, const Matrix& v2) {
    const std::size_t n = v1.size();
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) s += v1[j][l] * v2[l][j];
    }
    return s;
}

/// Tr(V1 V2) through an explicit product.
inline cplx trace_product(const Matrix& v1, const Matrix& v2) {
    const std::size_t n = v1.size();
    cplx s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) s += v1[i][k] * v2[k][i];
    }
    return s;
}

/// Tr((V1 (x) V2) SWAP) by materializing the n^2 x n^2 operators.
inline cplx trace_kron_swap_dense(const Matrix& v1, const Matrix& v2) {
    const std::size_t n = v1.size();
    const std::size_t nn = n * n;
    // (V1 (x) V2)[(a,b),(c,e)] = V1[a][c] V2[b][e]; SWAP[(c,e),(x,y)] = [c==y][e==x].
    cplx trace = 0.0;
    for (std::size_t row = 0; row < nn; ++row) {
        const std::size_t a = row / n, b = row % n;
        // column of SWAP picked by the diagonal entry: (x, y) = (a, b)
        for (std::size_t mid = 0; mid < nn; ++mid) {
            const std::size_t c = mid / n, e = mid % n;
            const cplx kron = v1[a][c] * v2[b][e];
            const bool swap_hit = (c == b) && (e == a);
            if (swap_hit) trace += kron;
        }
    }
    return trace;
}

/// Mode map n -> alpha_n from the plain quadruple sum with j > k, l > m.
inline std::map<std::uint64_t, double> brute_modes(const std::vector<double>& w) {
    std::map<std::uint64_t, double> out;
    const std::size_t d = w.size();
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < j; ++k)
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t m = 0; m < l; ++m)
                    out[(j - k) * (l - m)] += 4.0 * w[j] * w[k] * w[l] * w[m];
    return out;
}

inline bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t i = 2; i * i <= n; ++i)
        if (n % i == 0) return false;
    return true;
}

}  // namespace qprime::testing
