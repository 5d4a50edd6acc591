#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <new>
#include <thread>

#include "qprime/circuit.hpp"
#include "qprime/error.hpp"
#include "qprime/io.hpp"
#include "qprime/manifest.hpp"
#include "qprime/primality.hpp"
#include "qprime/spectral.hpp"
#include "qprime/sweep.hpp"
#include "qprime/walsh.hpp"

namespace qprime::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::uint64_t RunConfig::resolved_partitions() const {
    return partitions ? partitions : default_partitions(d);
}

namespace {

json echo(const RunConfig& c) {
    json j{{"d", c.d},
           {"omega", c.omega},
           {"p", c.resolved_partitions()},
           {"shots", c.shots},
           {"seed", c.seed},
           {"backend", c.backend},
           {"threads", c.threads},
           {"format", c.format},
           {"out", c.out_dir},
           {"large", c.large},
           {"verify", c.verify},
           {"optimized", c.optimized},
           {"state_only", c.state_only},
           {"measure", c.measure},
           {"regime3", c.regime3}};
    j["t"] = c.t ? json(*c.t) : json(nullptr);
    j["tau"] = c.tau ? json(*c.tau) : json(nullptr);
    j["series"] = c.series_path.empty() ? json(nullptr) : json(c.series_path);
    j["spectrum"] = c.spectrum_path.empty() ? json(nullptr) : json(c.spectrum_path);
    return j;
}

/// Output files, timings and manifest for one invocation.
class Run {
public:
    Run(std::string command, const RunConfig& config)
        : config_(config), format_(io::format_from_string(config.format)) {
        manifest_.command = std::move(command);
        manifest_.config = echo(config);
    }

    const RunConfig& config() const noexcept { return config_; }
    io::Format format() const noexcept { return format_; }

    fs::path path_for(std::string_view stem) const {
        return fs::path(config_.out_dir) / io::file_name(stem, format_);
    }

    template <class F>
    decltype(auto) timed(const std::string& stage, F&& body) {
        const auto start = std::chrono::steady_clock::now();
        struct Record {
            Run& run;
            const std::string& stage;
            std::chrono::steady_clock::time_point start;
            ~Record() {
                const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
                run.manifest_.timings_seconds.emplace_back(stage, dt.count());
            }
        } record{*this, stage, start};
        return body();
    }

    void write(std::string_view stem, const std::string& content) {
        const auto path = path_for(stem);
        io::write_text_file(path, content);
        manifest_.outputs.push_back(io::describe(path.string(), content));
        std::cout << stem << ": " << path.string() << '\n';
    }

    std::string read(const fs::path& path) {
        auto text = io::read_text_file(path);
        manifest_.inputs.push_back(io::describe(path.string(), text));
        return text;
    }

    void set_seeds(std::vector<std::uint64_t> seeds) { manifest_.seeds = std::move(seeds); }

    int finish(int exit_code) {
        manifest_.exit_code = exit_code;
        const auto path = fs::path(config_.out_dir) / ("manifest-" + manifest_.command + ".json");
        io::write_text_file(path, io::write_manifest(manifest_));
        std::cout << "manifest: " << path.string() << '\n';
        return exit_code;
    }

private:
    RunConfig config_;
    io::Format format_;
    io::RunManifest manifest_;
};

EvolutionParams params_at(const RunConfig& c, double default_t) {
    return {c.omega, c.t.value_or(default_t), c.d};
}

void require_large_flag(const RunConfig& c) {
    if (c.d < 64) return;
    const auto p = c.resolved_partitions();
    if (!c.large) {
        throw DomainError("d=" + std::to_string(c.d) + " sweeps " + std::to_string(p + 1) +
                          " time points and takes minutes; pass --large to run it");
    }
    std::cerr << "warning: large run, d=" << c.d << " with " << p + 1 << " time points\n";
}

// ---- steps shared by the single commands and run-all -----------------------

int step_angles(Run& run) {
    const auto& c = run.config();
    const auto raw = run.timed("closed_form", [&] { return closed_form_spectrum(c.d); });
    int status = kSuccess;
    if (c.verify) {
        const auto f = phase_vector(c.d);
        const auto fast = run.timed("fast_transform", [&] { return walsh_transform(f); });
        const auto direct = run.timed("direct_transform", [&] { return direct_walsh_transform(f.entries); });
        const bool ok = fast.entries == raw.entries && direct.entries == raw.entries;
        std::cout << "verify: closed form " << (ok ? "matches" : "DOES NOT match")
                  << " the fast and direct transforms (" << raw.size() << " entries)\n";
        if (!ok) status = kDisagreement;
    }
    std::optional<EvolutionParams> params;
    if (c.t) params = params_at(c, 0.0);
    run.write("angles", io::write_angles(raw, params ? &*params : nullptr, run.format()));
    return status;
}

int step_audit(Run& run) {
    const auto& c = run.config();
    const auto mode = c.state_only ? PipelineMode::StateOnly : PipelineMode::SwapTest;
    const auto synthesis = c.optimized ? SynthesisMode::Optimized : SynthesisMode::Faithful;
    const auto report = run.timed("audit", [&] {
        return audit_gates(build_pipeline(c.d, params_at(c, 1.0), mode, synthesis), c.d);
    });
    run.write("audit", io::write_audit(report, run.format()));
    const auto& p = report.predicted;
    std::cout << "audit: q=" << report.q << " predicted G1=" << p.g1 << " G2=" << p.g2 << " G3=" << p.g3
              << (report.all_match() ? ", all stages match" : ", MISMATCH")
              << (report.pruned ? " (pruned)" : "") << '\n';
    return report.all_match() || c.optimized ? kSuccess : kDisagreement;
}

io::SeriesFile step_simulate(Run& run) {
    const auto& c = run.config();
    SweepOptions opt;
    opt.d = c.d;
    opt.omega = c.omega;
    opt.partitions = c.resolved_partitions();
    opt.backend = backend_from_string(c.backend);
    opt.shots = c.shots;
    opt.seed = c.seed;
    opt.threads = c.threads;

    io::SeriesFile file;
    file.series = run.timed("simulate", [&] { return simulate_series(opt); });
    file.backend = c.backend;
    file.seed = c.seed;
    if (file.series.shots > 0) run.set_seeds(sweep_seeds(c.seed, opt.partitions));
    run.write("series", io::write_series(file, run.format()));
    return file;
}

io::SpectrumFile step_spectrum(Run& run, const io::SeriesFile& input) {
    const auto& c = run.config();
    const auto& series = input.series;
    if (series.d < 2) throw DomainError("series dimension must be at least 2");
    const std::uint64_t full = (series.d - 1) * (series.d - 1);
    const std::uint64_t nmax = c.regime3 ? full : std::min(full, 2 * (series.d - 1));
    if (series.partitions <= full + nmax) {
        std::cerr << "warning: p=" << series.partitions << " resolves modes only up to n="
                  << (series.partitions > full ? series.partitions - full - 1 : 0)
                  << "; higher modes alias\n";
    }

    io::SpectrumFile file;
    file.omega = series.omega;
    file.partitions = series.partitions;
    file.shots = series.shots;
    file.spectrum = run.timed("spectrum", [&] {
        auto s = simpson_fourier(series, nmax);
        attach_bounds(s, InitialCoefficients::uniform(series.d));
        return s;
    });
    run.write("spectrum", io::write_spectrum(file, run.format()));
    return file;
}

int step_classify(Run& run, const io::SpectrumFile& input) {
    const auto& c = run.config();
    const auto& s = input.spectrum;
    const double tau = c.tau ? *c.tau : default_tolerance(s.d, input.shots, input.partitions);
    const auto report = run.timed("classify", [&] { return classify(s, tau); });
    run.write("report", io::write_report(report, run.format()));

    std::cout << "classify: d=" << s.d << " tau=" << io::format_double(tau) << ", "
              << report.count(Verdict::Prime) << " prime, " << report.count(Verdict::Composite)
              << " composite, " << report.count(Verdict::Inconclusive) << " inconclusive\n";
    for (const auto& row : report.rows) {
        if (!row.agree) {
            std::cerr << "disagreement: n=" << row.n << " regime " << to_string(row.regime) << " verdict "
                      << to_string(row.verdict) << ", sieve says " << (row.oracle_prime ? "prime" : "composite")
                      << " (alpha=" << io::format_double(row.alpha) << ", bound=" << io::format_double(row.bound)
                      << ")\n";
        }
    }
    return report.domain_disagreements() == 0 ? kSuccess : kDisagreement;
}

fs::path input_path(const RunConfig& c, const std::string& given, std::string_view stem) {
    if (!given.empty()) return given;
    return fs::path(c.out_dir) / io::file_name(stem, io::format_from_string(c.format));
}

}  // namespace

int cmd_angles(const RunConfig& config) {
    Run run("angles", config);
    return run.finish(step_angles(run));
}

int cmd_synth(const RunConfig& config) {
    Run run("synth", config);
    const auto mode = config.state_only ? PipelineMode::StateOnly : PipelineMode::SwapTest;
    const auto synthesis = config.optimized ? SynthesisMode::Optimized : SynthesisMode::Faithful;
    const auto circuit = run.timed("synthesize", [&] {
        return build_pipeline(config.d, params_at(config, 1.0), mode, synthesis, config.measure);
    });
    run.write("circuit", io::write_circuit(circuit, run.format()));
    std::cout << "synth: width " << circuit.width() << ", " << circuit.size() << " gates\n";
    return run.finish(kSuccess);
}

int cmd_simulate(const RunConfig& config) {
    require_large_flag(config);
    Run run("simulate", config);
    step_simulate(run);
    return run.finish(kSuccess);
}

int cmd_spectrum(const RunConfig& config) {
    Run run("spectrum", config);
    const auto path = input_path(config, config.series_path, "series");
    const auto text = run.read(path);
    io::SeriesFile series;
    try {
        series = io::parse_series(text);
    } catch (const io::IoError& e) {
        throw io::IoError(path.string() + ": " + e.what());
    }
    step_spectrum(run, series);
    return run.finish(kSuccess);
}

int cmd_classify(const RunConfig& config) {
    Run run("classify", config);
    const auto path = input_path(config, config.spectrum_path, "spectrum");
    const auto text = run.read(path);
    io::SpectrumFile spectrum;
    try {
        spectrum = io::parse_spectrum(text);
    } catch (const io::IoError& e) {
        throw io::IoError(path.string() + ": " + e.what());
    }
    return run.finish(step_classify(run, spectrum));
}

int cmd_audit(const RunConfig& config) {
    Run run("audit", config);
    return run.finish(step_audit(run));
}

int cmd_run_all(const RunConfig& config) {
    require_large_flag(config);
    Run run("run-all", config);
    int status = step_angles(run);
    status = std::max(status, step_audit(run));
    const auto series = step_simulate(run);
    const auto spectrum = step_spectrum(run, series);
    status = std::max(status, step_classify(run, spectrum));
    return run.finish(status);
}

namespace {

void add_shared(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--d", c.d, "Qudit dimension (power of two)")->capture_default_str();
    cmd->add_option("--omega", c.omega, "Angular frequency")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--format", c.format, "Output format")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out_dir, std::string("Output directory (default $") + kOutputDirEnv + " or .)");
}

void add_sweep(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--p", c.partitions, "Simpson intervals; default 375/1500/6000 for d=16/32/64");
    cmd->add_option("--shots", c.shots, "Shots per time point; 0 for exact purity")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Base seed")->capture_default_str();
    cmd->add_option("--backend", c.backend, "Purity backend")
        ->capture_default_str()
        ->check(CLI::IsMember({"exact-trace", "swap-exact", "fast-sampled"}));
    cmd->add_option("--threads", c.threads, "Worker threads; 0 uses every core")->capture_default_str();
    cmd->add_flag("--large", c.large, "Allow d >= 64 sweeps");
}

void add_circuit(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--t", c.t, "Evolution time (default 1)");
    cmd->add_flag("--optimized", c.optimized, "Drop rotations with negligible angles");
    cmd->add_flag("--state-only", c.state_only, "Omit the second copy and the swap test");
}

}  // namespace

int run(int argc, char** argv) {
    RunConfig config;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) config.out_dir = env;

    CLI::App app{"Prime identification from the purity dynamics of two coupled qudits", "qprime"};
    app.set_version_flag("--version", std::string(io::tool_version()));
    app.require_subcommand(1, 1);

    auto* angles = app.add_subcommand("angles", "Write the sparse Walsh angles of the phase vector");
    add_shared(angles, config);
    angles->add_option("--t", config.t, "Also write angles scaled to this time");
    angles->add_flag("--verify", config.verify, "Cross-check against the fast and direct transforms");

    auto* synth = app.add_subcommand("synth", "Write the gate list of the evolution circuit");
    add_shared(synth, config);
    add_circuit(synth, config);
    synth->add_flag("!--no-measure", config.measure, "Leave out the final measurement");

    auto* simulate = app.add_subcommand("simulate", "Sample the purity over half a period");
    add_shared(simulate, config);
    add_sweep(simulate, config);

    auto* spectrum = app.add_subcommand("spectrum", "Extract Fourier modes from a purity series");
    add_shared(spectrum, config);
    spectrum->add_option("--series", config.series_path, "Series file (default <out>/series.<format>)");
    spectrum->add_flag("--regime3", config.regime3, "Extract modes up to (d-1)^2");

    auto* classify_cmd = app.add_subcommand("classify", "Label each n prime or composite");
    add_shared(classify_cmd, config);
    classify_cmd->add_option("--spectrum", config.spectrum_path, "Spectrum file (default <out>/spectrum.<format>)");
    classify_cmd->add_option("--tau", config.tau, "Decision tolerance (default from d, shots, p)")
        ->check(CLI::NonNegativeNumber);

    auto* audit = app.add_subcommand("audit", "Count gates per stage against the predicted totals");
    add_shared(audit, config);
    add_circuit(audit, config);

    auto* all = app.add_subcommand("run-all", "angles, audit, simulate, spectrum and classify in one go");
    add_shared(all, config);
    add_sweep(all, config);
    add_circuit(all, config);
    all->add_flag("--regime3", config.regime3, "Extract modes up to (d-1)^2");
    all->add_option("--tau", config.tau, "Decision tolerance")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kConfigError;
    }

    try {
        if (*angles) return cmd_angles(config);
        if (*synth) return cmd_synth(config);
        if (*simulate) return cmd_simulate(config);
        if (*spectrum) return cmd_spectrum(config);
        if (*classify_cmd) return cmd_classify(config);
        if (*audit) return cmd_audit(config);
        if (*all) return cmd_run_all(config);
    } catch (const ResourceError& e) {
        std::cerr << "qprime: resource error: " << e.what() << '\n';
        return kResourceError;
    } catch (const std::bad_alloc&) {
        std::cerr << "qprime: resource error: out of memory\n";
        return kResourceError;
    } catch (const DomainError& e) {
        std::cerr << "qprime: error: " << e.what() << '\n';
        return kConfigError;
    } catch (const io::IoError& e) {
        std::cerr << "qprime: error: " << e.what() << '\n';
        return kConfigError;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "qprime: error: " << e.what() << '\n';
        return kConfigError;
    }
    return kConfigError;
}

}  // namespace qprime::cli
