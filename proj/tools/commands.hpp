#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qprime::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kDisagreement = 1,  // classification, verification or audit mismatch
    kConfigError = 2,   // bad flags, bad dimension, unreadable input
    kResourceError = 3  // backend memory budget exceeded
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "QPRIME_OUTPUT_DIR";

struct RunConfig {
    std::uint64_t d = 16;
    double omega = 0.1;
    std::uint64_t partitions = 0;  // 0: default table for d
    std::uint64_t shots = 100000;  // 0: exact purity
    std::uint64_t seed = 0;
    std::string backend = "fast-sampled";
    unsigned threads = 0;  // 0: all cores
    std::string format = "csv";
    std::string out_dir = ".";
    bool large = false;

    std::optional<double> t;  // angles, synth, audit
    bool verify = false;      // angles
    bool optimized = false;   // synth, audit
    bool state_only = false;  // synth, audit
    bool measure = true;      // synth
    bool regime3 = false;     // spectrum, run-all
    std::string series_path;    // spectrum
    std::string spectrum_path;  // classify
    std::optional<double> tau;  // classify, run-all

    std::uint64_t resolved_partitions() const;
};

int cmd_angles(const RunConfig& config);
int cmd_synth(const RunConfig& config);
int cmd_simulate(const RunConfig& config);
int cmd_spectrum(const RunConfig& config);
int cmd_classify(const RunConfig& config);
int cmd_audit(const RunConfig& config);
int cmd_run_all(const RunConfig& config);

/// Parses argv, dispatches, and maps exceptions to exit codes.
int run(int argc, char** argv);

}  // namespace qprime::cli
