#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qprime::io {

std::string_view tool_version() noexcept;

struct FileRecord {
    std::string path;
    std::string sha256;
    std::uint64_t bytes = 0;
};

/// Provenance written next to every CLI run. Checksums depend only on the
/// configuration and seed; timings are informational.
struct RunManifest {
    std::string command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<std::pair<std::string, double>> timings_seconds;
    std::vector<std::uint64_t> seeds;  // one per time point, sampled runs only
    std::vector<FileRecord> inputs;
    std::vector<FileRecord> outputs;
    int exit_code = 0;
};

FileRecord describe(std::string path, std::string_view content);

std::string write_manifest(const RunManifest& manifest);

}  // namespace qprime::io
