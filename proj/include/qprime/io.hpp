#pragma once

// On-disk formats for angles, circuits, purity series, spectra, reports and
// audits, plus checksums. Column and field names are listed in docs/FORMATS.md.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qprime/circuit.hpp"
#include "qprime/primality.hpp"
#include "qprime/spectral.hpp"
#include "qprime/walsh.hpp"

namespace qprime::io {

/// Unreadable, missing or malformed input file.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

enum class Format : std::uint8_t { Csv, Json };

std::string_view to_string(Format format) noexcept;
Format format_from_string(std::string_view name);
/// "series" + Csv -> "series.csv".
std::string file_name(std::string_view stem, Format format);

/// 17 significant digits; round-trips every finite double.
std::string format_double(double value);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

std::string read_text_file(const std::filesystem::path& path);
/// Creates parent directories as needed.
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Series plus the sampling settings needed to rebuild the tolerance.
struct SeriesFile {
    PuritySeries series;
    std::string backend;
    std::uint64_t seed = 0;
};

/// Spectrum plus the provenance of the series it came from.
struct SpectrumFile {
    FourierSpectrum spectrum;
    double omega = 0.0;
    std::uint64_t partitions = 0;
    std::uint64_t shots = 0;
};

/// Raw angles, with scaled angles alongside when `params` is given.
std::string write_angles(const WalshSpectrum& raw, const EvolutionParams* params, Format format);
std::string write_circuit(const Circuit& circuit, Format format);
std::string write_series(const SeriesFile& file, Format format);
std::string write_spectrum(const SpectrumFile& file, Format format);
std::string write_report(const ClassificationReport& report, Format format);
std::string write_audit(const GateCountReport& report, Format format);

/// Format is detected from the first non-blank character ('{' means JSON).
SeriesFile parse_series(std::string_view text);
SpectrumFile parse_spectrum(std::string_view text);

SeriesFile read_series(const std::filesystem::path& path);
SpectrumFile read_spectrum(const std::filesystem::path& path);

}  // namespace qprime::io
