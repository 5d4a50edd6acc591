#include "qprime/manifest.hpp"

#include "json_text.hpp"
#include "qprime/io.hpp"

namespace qprime::io {

std::string_view tool_version() noexcept { return QPRIME_VERSION; }

FileRecord describe(std::string path, std::string_view content) {
    return {std::move(path), sha256_hex(content), content.size()};
}

std::string write_manifest(const RunManifest& m) {
    using json = nlohmann::ordered_json;
    auto files = [](const std::vector<FileRecord>& records) {
        json out = json::array();
        for (const auto& r : records) out.push_back({{"path", r.path}, {"sha256", r.sha256}, {"bytes", r.bytes}});
        return out;
    };
    json timings = json::object();
    for (const auto& [stage, seconds] : m.timings_seconds) timings[stage] = seconds;

    json out = json::object();
    out["tool"] = "qprime";
    out["version"] = tool_version();
    out["command"] = m.command;
    out["config"] = m.config;
    out["timings_seconds"] = std::move(timings);
    out["seeds"] = m.seeds;
    out["inputs"] = files(m.inputs);
    out["outputs"] = files(m.outputs);
    out["exit_code"] = m.exit_code;
    return dump_json(out);
}

}  // namespace qprime::io
