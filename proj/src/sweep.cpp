#include "qprime/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "qprime/error.hpp"

namespace qprime {

std::vector<std::uint64_t> sweep_seeds(std::uint64_t base_seed, std::uint64_t partitions) {
    std::vector<std::uint64_t> seeds(partitions + 1);
    for (std::uint64_t i = 0; i <= partitions; ++i) seeds[i] = derive_seed(base_seed, i);
    return seeds;
}

PuritySeries simulate_series(const SweepOptions& options) {
    PuritySeries series;
    series.d = options.d;
    series.omega = options.omega;
    series.partitions = options.partitions;
    series.shots = options.backend == Backend::ExactTrace ? 0 : options.shots;
    series.times = half_period_grid(options.omega, options.partitions);
    const std::size_t count = series.times.size();
    series.gamma.assign(count, 0.0);
    series.methods.assign(count, PurityMethod::ExactTrace);
    const auto seeds = sweep_seeds(options.seed, options.partitions);

    // Fail fast on configuration errors before spawning workers.
    qubits_for_dimension(options.d);

    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(count));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (std::size_t i = next++; i < count; i = next++) {
                EvolutionParams params{options.omega, series.times[i], options.d};
                const auto estimate =
                    simulate_purity(options.d, params, options.backend, options.shots, seeds[i]);
                series.gamma[i] = estimate.value;
                series.methods[i] = estimate.method;
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return series;
}

std::uint64_t default_partitions(std::uint64_t d) {
    qubits_for_dimension(d);
    switch (d) {
        case 16: return 375;
        case 32: return 1500;
        case 64: return 6000;
        default: break;
    }
    const std::uint64_t p = 2 * (d - 1) * (d - 1) + 1;
    return p % 2 ? p + 1 : p;
}

}  // namespace qprime
