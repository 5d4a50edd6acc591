#include "qprime/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qprime/error.hpp"
#include "json_text.hpp"

namespace qprime::io {

using json = nlohmann::ordered_json;

std::string_view to_string(Format format) noexcept {
    return format == Format::Csv ? "csv" : "json";
}

Format format_from_string(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw DomainError("unknown format: " + std::string(name) + " (expected csv or json)");
}

std::string file_name(std::string_view stem, Format format) {
    return std::string(stem) + "." + std::string(to_string(format));
}

std::string format_double(double value) {
    std::array<char, 40> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                         std::chars_format::general, 17);
    if (ec != std::errc{}) throw DomainError("cannot format value");
    return std::string(buf.data(), end);
}

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + path.string());
}

namespace {

// ---- CSV helpers -----------------------------------------------------------

struct CsvWriter {
    std::string text;

    void meta(std::string_view key, std::string_view value) {
        text += "# ";
        text += key;
        text += '=';
        text += value;
        text += '\n';
    }
    void meta(std::string_view key, double value) { meta(key, format_double(value)); }
    void meta(std::string_view key, std::uint64_t value) { meta(key, std::to_string(value)); }

    template <class... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        ((text += first ? "" : ",", text += cells, first = false), ...);
        text += '\n';
    }
};

std::string cell(double v) { return format_double(v); }
std::string cell(std::int64_t v) { return std::to_string(v); }
std::string cell(std::uint64_t v) { return std::to_string(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(std::string_view v) { return std::string(v); }
std::string cell(bool v) { return v ? "1" : "0"; }
std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }
std::string qubit_cell(int q) { return q < 0 ? std::string() : std::to_string(q); }

struct CsvTable {
    std::map<std::string, std::string, std::less<>> meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw IoError("missing column '" + std::string(name) + "'");
    }
    const std::string& meta_value(std::string_view key) const {
        const auto it = meta.find(key);
        if (it == meta.end()) throw IoError("missing metadata '" + std::string(key) + "'");
        return it->second;
    }
};

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.emplace_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

CsvTable parse_csv(std::string_view text) {
    CsvTable t;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto key = line.substr(1, eq - 1);
            key.erase(0, key.find_first_not_of(' '));
            t.meta[key] = line.substr(eq + 1);
            continue;
        }
        auto cells = split(line);
        if (t.header.empty()) {
            t.header = std::move(cells);
        } else {
            if (cells.size() != t.header.size()) {
                throw IoError("row has " + std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(t.header.size()));
            }
            t.rows.push_back(std::move(cells));
        }
    }
    if (t.header.empty()) throw IoError("no CSV header found");
    return t;
}

double to_double(std::string_view s) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
        throw IoError("not a number: '" + std::string(s) + "'");
    }
    return v;
}

std::uint64_t to_u64(std::string_view s) {
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
        throw IoError("not an unsigned integer: '" + std::string(s) + "'");
    }
    return v;
}

bool looks_like_json(std::string_view text) {
    const auto i = text.find_first_not_of(" \t\r\n");
    return i != std::string_view::npos && text[i] == '{';
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed JSON: ") + e.what());
    }
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw IoError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw IoError(std::string("field '") + key + "' has the wrong type");
    }
}

void expect_kind(std::string_view actual, std::string_view expected) {
    if (actual != expected) {
        throw IoError("expected a " + std::string(expected) + " file, found '" + std::string(actual) + "'");
    }
}

PurityMethod method_from_string(std::string_view s) {
    for (auto m : {PurityMethod::ExactTrace, PurityMethod::SwapExact, PurityMethod::SwapSampled}) {
        if (to_string(m) == s) return m;
    }
    throw IoError("unknown purity method: " + std::string(s));
}

SpectrumSource source_from_string(std::string_view s) {
    if (s == "analytic") return SpectrumSource::Analytic;
    if (s == "simpson") return SpectrumSource::Simpson;
    throw IoError("unknown spectrum source: " + std::string(s));
}

std::string regime_cell(std::uint64_t n, std::uint64_t d) {
    const std::uint64_t top = std::max(2 * (d - 1), (d - 1) * (d - 1));
    return n >= 2 && n <= top ? std::string(to_string(regime_of(n, d))) : std::string();
}

constexpr std::array<std::string_view, 3> kStageKeys{"preparation", "evolution", "purity_test"};

}  // namespace

// ---- writers ---------------------------------------------------------------

std::string write_angles(const WalshSpectrum& raw, const EvolutionParams* params, Format format) {
    const std::uint64_t d = std::uint64_t{1} << (raw.q / 2);
    std::optional<ScaledSpectrum> scaled;
    if (params) scaled = scale_angles(raw, *params);

    if (format == Format::Csv) {
        CsvWriter w;
        w.meta("kind", "walsh_angles");
        w.meta("d", d);
        w.meta("q", static_cast<std::uint64_t>(raw.q));
        if (params) {
            w.meta("omega", params->omega);
            w.meta("t", params->t);
        }
        w.row("j", "weight", "raw", "scaled");
        for (const auto& [j, a] : raw.entries) {
            w.row(cell(j), cell(hamming_weight(j)), cell(a),
                  scaled ? cell(scaled->entries.at(j)) : std::string());
        }
        return w.text;
    }
    json out{{"kind", "walsh_angles"}, {"d", d}, {"q", raw.q}};
    if (params) {
        out["omega"] = params->omega;
        out["t"] = params->t;
    }
    json entries = json::array();
    for (const auto& [j, a] : raw.entries) {
        json e{{"j", j}, {"weight", hamming_weight(j)}, {"raw", a}};
        if (scaled) e["scaled"] = scaled->entries.at(j);
        entries.push_back(std::move(e));
    }
    out["entries"] = std::move(entries);
    return dump_json(out);
}

std::string write_circuit(const Circuit& circuit, Format format) {
    if (format == Format::Csv) {
        CsvWriter w;
        w.meta("kind", "circuit");
        w.meta("width", static_cast<std::uint64_t>(circuit.width()));
        w.meta("gates", static_cast<std::uint64_t>(circuit.size()));
        w.row("index", "kind", "stage", "target", "control", "target2", "angle");
        std::uint64_t i = 0;
        for (const auto& g : circuit.gates()) {
            w.row(cell(i++), cell(to_string(g.kind)), cell(to_string(g.stage)), cell(g.target),
                  qubit_cell(g.control), qubit_cell(g.target2),
                  g.kind == GateKind::RotationZ ? cell(g.angle) : std::string());
        }
        return w.text;
    }
    json gates = json::array();
    for (const auto& g : circuit.gates()) {
        json e{{"kind", to_string(g.kind)}, {"stage", to_string(g.stage)}, {"target", g.target}};
        if (g.control >= 0) e["control"] = g.control;
        if (g.target2 >= 0) e["target2"] = g.target2;
        if (g.kind == GateKind::RotationZ) e["angle"] = g.angle;
        gates.push_back(std::move(e));
    }
    return dump_json(json{{"kind", "circuit"}, {"width", circuit.width()}, {"gates", std::move(gates)}});
}

std::string write_series(const SeriesFile& file, Format format) {
    const auto& s = file.series;
    if (format == Format::Csv) {
        CsvWriter w;
        w.meta("kind", "purity_series");
        w.meta("d", s.d);
        w.meta("omega", s.omega);
        w.meta("partitions", s.partitions);
        w.meta("shots", s.shots);
        w.meta("backend", file.backend);
        w.meta("seed", file.seed);
        w.row("i", "t", "gamma", "method");
        for (std::size_t i = 0; i < s.size(); ++i) {
            w.row(cell(static_cast<std::uint64_t>(i)), cell(s.times[i]), cell(s.gamma[i]),
                  cell(to_string(s.methods[i])));
        }
        return w.text;
    }
    json points = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        points.push_back({{"i", i}, {"t", s.times[i]}, {"gamma", s.gamma[i]}, {"method", to_string(s.methods[i])}});
    }
    return dump_json(json{{"kind", "purity_series"},
                          {"d", s.d},
                          {"omega", s.omega},
                          {"partitions", s.partitions},
                          {"shots", s.shots},
                          {"backend", file.backend},
                          {"seed", file.seed},
                          {"points", std::move(points)}});
}

std::string write_spectrum(const SpectrumFile& file, Format format) {
    const auto& s = file.spectrum;
    if (format == Format::Csv) {
        CsvWriter w;
        w.meta("kind", "fourier_spectrum");
        w.meta("d", s.d);
        w.meta("source", to_string(s.source));
        w.meta("omega", file.omega);
        w.meta("partitions", file.partitions);
        w.meta("shots", file.shots);
        if (s.mean) w.meta("mean", *s.mean);
        w.row("n", "alpha", "bound", "regime");
        for (std::uint64_t n = 1; n <= s.nmax(); ++n) {
            w.row(cell(n), cell(s.at(n)), cell(s.bound_at(n)), regime_cell(n, s.d));
        }
        return w.text;
    }
    json modes = json::array();
    for (std::uint64_t n = 1; n <= s.nmax(); ++n) {
        json e{{"n", n}, {"alpha", s.at(n)}};
        e["bound"] = s.bound_at(n) ? json(*s.bound_at(n)) : json(nullptr);
        const auto regime = regime_cell(n, s.d);
        e["regime"] = regime.empty() ? json(nullptr) : json(regime);
        modes.push_back(std::move(e));
    }
    json out{{"kind", "fourier_spectrum"},
             {"d", s.d},
             {"source", to_string(s.source)},
             {"omega", file.omega},
             {"partitions", file.partitions},
             {"shots", file.shots}};
    out["mean"] = s.mean ? json(*s.mean) : json(nullptr);
    out["modes"] = std::move(modes);
    return dump_json(out);
}

std::string write_report(const ClassificationReport& report, Format format) {
    if (format == Format::Csv) {
        CsvWriter w;
        w.meta("kind", "classification_report");
        w.meta("d", report.d);
        w.meta("tolerance", report.tolerance);
        w.meta("domain_disagreements", static_cast<std::uint64_t>(report.domain_disagreements()));
        w.row("n", "regime", "alpha", "bound", "verdict", "oracle", "agree");
        for (const auto& r : report.rows) {
            w.row(cell(r.n), cell(to_string(r.regime)), cell(r.alpha),
                  r.regime == Regime::III ? std::string() : cell(r.bound), cell(to_string(r.verdict)),
                  cell(std::string_view(r.oracle_prime ? "prime" : "composite")), cell(r.agree));
        }
        return w.text;
    }
    json rows = json::array();
    for (const auto& r : report.rows) {
        json e{{"n", r.n}, {"regime", to_string(r.regime)}, {"alpha", r.alpha}};
        e["bound"] = r.regime == Regime::III ? json(nullptr) : json(r.bound);
        e["verdict"] = to_string(r.verdict);
        e["oracle"] = r.oracle_prime ? "prime" : "composite";
        e["agree"] = r.agree;
        rows.push_back(std::move(e));
    }
    return dump_json(json{{"kind", "classification_report"},
                          {"d", report.d},
                          {"tolerance", report.tolerance},
                          {"domain_disagreements", report.domain_disagreements()},
                          {"rows", std::move(rows)}});
}

std::string write_audit(const GateCountReport& report, Format format) {
    const std::int64_t copies = report.copies;
    const std::array<std::int64_t, 3> expected{copies * report.predicted.g1, copies * report.predicted.g2,
                                               report.predicted.g3};
    const auto stage_count = report.has_purity_stage ? 3U : 2U;
    if (format == Format::Csv) {
        CsvWriter w;
        w.meta("kind", "gate_audit");
        w.meta("q", static_cast<std::uint64_t>(report.q));
        w.meta("copies", static_cast<std::uint64_t>(report.copies));
        w.meta("cswap_weight", static_cast<std::uint64_t>(kControlledSwapWeight));
        w.meta("pruned", report.pruned ? "1" : "0");
        w.row("stage", "hadamard", "rz", "cnot", "cswap", "measure", "elementary", "predicted", "match");
        for (std::size_t i = 0; i < stage_count; ++i) {
            const auto& st = report.stages[i];
            w.row(cell(kStageKeys[i]), cell(st.count(GateKind::Hadamard)), cell(st.count(GateKind::RotationZ)),
                  cell(st.count(GateKind::ControlledNot)), cell(st.count(GateKind::ControlledSwap)),
                  cell(st.count(GateKind::MeasureZ)), cell(st.elementary), cell(expected[i]),
                  cell(report.matches[i]));
        }
        return w.text;
    }
    json stages = json::array();
    for (std::size_t i = 0; i < stage_count; ++i) {
        const auto& st = report.stages[i];
        stages.push_back({{"stage", kStageKeys[i]},
                          {"hadamard", st.count(GateKind::Hadamard)},
                          {"rz", st.count(GateKind::RotationZ)},
                          {"cnot", st.count(GateKind::ControlledNot)},
                          {"cswap", st.count(GateKind::ControlledSwap)},
                          {"measure", st.count(GateKind::MeasureZ)},
                          {"elementary", st.elementary},
                          {"predicted", expected[i]},
                          {"match", report.matches[i]}});
    }
    return dump_json(json{{"kind", "gate_audit"},
                          {"q", report.q},
                          {"copies", report.copies},
                          {"cswap_weight", kControlledSwapWeight},
                          {"pruned", report.pruned},
                          {"all_match", report.all_match()},
                          {"stages", std::move(stages)}});
}

// ---- readers ---------------------------------------------------------------

SeriesFile parse_series(std::string_view text) {
    SeriesFile file;
    auto& s = file.series;
    if (looks_like_json(text)) {
        const json j = parse_json(text);
        expect_kind(field<std::string>(j, "kind"), "purity_series");
        s.d = field<std::uint64_t>(j, "d");
        s.omega = field<double>(j, "omega");
        s.partitions = field<std::uint64_t>(j, "partitions");
        s.shots = field<std::uint64_t>(j, "shots");
        file.backend = field<std::string>(j, "backend");
        file.seed = field<std::uint64_t>(j, "seed");
        for (const auto& p : field<json>(j, "points")) {
            s.times.push_back(field<double>(p, "t"));
            s.gamma.push_back(field<double>(p, "gamma"));
            s.methods.push_back(method_from_string(field<std::string>(p, "method")));
        }
    } else {
        const auto t = parse_csv(text);
        expect_kind(t.meta_value("kind"), "purity_series");
        s.d = to_u64(t.meta_value("d"));
        s.omega = to_double(t.meta_value("omega"));
        s.partitions = to_u64(t.meta_value("partitions"));
        s.shots = to_u64(t.meta_value("shots"));
        file.backend = t.meta_value("backend");
        file.seed = to_u64(t.meta_value("seed"));
        const auto ct = t.column("t"), cg = t.column("gamma"), cm = t.column("method");
        for (const auto& r : t.rows) {
            s.times.push_back(to_double(r[ct]));
            s.gamma.push_back(to_double(r[cg]));
            s.methods.push_back(method_from_string(r[cm]));
        }
    }
    if (s.times.size() != s.partitions + 1) {
        throw IoError("series holds " + std::to_string(s.times.size()) + " points, expected p + 1 = " +
                      std::to_string(s.partitions + 1));
    }
    return file;
}

SpectrumFile parse_spectrum(std::string_view text) {
    SpectrumFile file;
    auto& s = file.spectrum;
    auto add_mode = [&s](std::uint64_t n, double alpha, std::optional<double> bound) {
        if (n != s.alpha.size() + 1) throw IoError("modes must run 1, 2, 3, ... without gaps");
        s.alpha.push_back(alpha);
        s.bound.push_back(bound);
    };
    if (looks_like_json(text)) {
        const json j = parse_json(text);
        expect_kind(field<std::string>(j, "kind"), "fourier_spectrum");
        s.d = field<std::uint64_t>(j, "d");
        s.source = source_from_string(field<std::string>(j, "source"));
        file.omega = field<double>(j, "omega");
        file.partitions = field<std::uint64_t>(j, "partitions");
        file.shots = field<std::uint64_t>(j, "shots");
        if (j.contains("mean") && !j["mean"].is_null()) s.mean = field<double>(j, "mean");
        for (const auto& m : field<json>(j, "modes")) {
            std::optional<double> bound;
            if (m.contains("bound") && !m["bound"].is_null()) bound = field<double>(m, "bound");
            add_mode(field<std::uint64_t>(m, "n"), field<double>(m, "alpha"), bound);
        }
    } else {
        const auto t = parse_csv(text);
        expect_kind(t.meta_value("kind"), "fourier_spectrum");
        s.d = to_u64(t.meta_value("d"));
        s.source = source_from_string(t.meta_value("source"));
        file.omega = to_double(t.meta_value("omega"));
        file.partitions = to_u64(t.meta_value("partitions"));
        file.shots = to_u64(t.meta_value("shots"));
        if (t.meta.count("mean")) s.mean = to_double(t.meta_value("mean"));
        const auto cn = t.column("n"), ca = t.column("alpha"), cb = t.column("bound");
        for (const auto& r : t.rows) {
            std::optional<double> bound;
            if (!r[cb].empty()) bound = to_double(r[cb]);
            add_mode(to_u64(r[cn]), to_double(r[ca]), bound);
        }
    }
    if (s.d < 2) throw IoError("spectrum dimension must be at least 2");
    return file;
}

SeriesFile read_series(const std::filesystem::path& path) {
    const auto text = read_text_file(path);
    try {
        return parse_series(text);
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

SpectrumFile read_spectrum(const std::filesystem::path& path) {
    const auto text = read_text_file(path);
    try {
        return parse_spectrum(text);
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

}  // namespace qprime::io
