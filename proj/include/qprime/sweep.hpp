#pragma once

#include <cstdint>
#include <vector>

#include "qprime/spectral.hpp"
#include "qprime/statevector.hpp"

namespace qprime {

struct SweepOptions {
    std::uint64_t d = 16;
    double omega = 0.1;
    std::uint64_t partitions = 375;
    Backend backend = Backend::FastSampled;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;  // 0 = hardware concurrency
};

/// Purity at every point of the half-period grid. Point i is simulated
/// independently with seed derive_seed(options.seed, i) and stored by index,
/// so the result does not depend on the thread count.
PuritySeries simulate_series(const SweepOptions& options);

/// Partition count used when none is given: 375, 1500 and 6000 for d = 16,
/// 32 and 64; otherwise the smallest even p above 2(d-1)^2, which resolves
/// every mode exactly.
std::uint64_t default_partitions(std::uint64_t d);

/// Seeds used by simulate_series, one per grid point.
std::vector<std::uint64_t> sweep_seeds(std::uint64_t base_seed, std::uint64_t partitions);

}  // namespace qprime
