#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mwdep/montecarlo.hpp"
#include "mwdep/testing.hpp"
#include "mwdep/varest.hpp"

namespace mwdep {

/// Column-file parse failure carrying the 1-based line number.
class ColumnFileError : public std::runtime_error {
public:
    ColumnFileError(std::size_t line, const std::string& message);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// One numeric value per line; one optional non-numeric header line at the
/// top; blank lines ignored. Failures report the offending line number.
[[nodiscard]] std::vector<double> read_column_values(std::istream& in);
[[nodiscard]] std::vector<double> read_column_file(const std::string& path);

/// 17-significant-digit column output, byte-stable across runs.
void write_column_values(std::ostream& out, std::span<const double> values);
void write_column_file(const std::string& path, std::span<const double> values);

[[nodiscard]] std::string format_double17(double v);

/// FNV-1a 64-bit digest of raw bytes, for the report's inputs field.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);
[[nodiscard]] std::string digest_hex(std::string_view bytes);

// JSON shapes for the report payloads.
nlohmann::json to_json(const TestReport& report);
[[nodiscard]] TestReport test_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AutocovarianceProfile& profile);
[[nodiscard]] AutocovarianceProfile profile_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MonteCarloReport& report);
[[nodiscard]] MonteCarloReport mc_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TailDiagnostic& diag);

/// Scenario configuration exchanged with the CLI as JSON.
nlohmann::json to_json(const Scenario& scenario);
[[nodiscard]] Scenario scenario_from_json(const nlohmann::json& j);

/// Envelope written by every CLI command: schema version, an echo of the
/// semantically relevant flags (thread counts and output paths excluded, they
/// cannot affect the payload), a digest of the inputs, and the RNG identity
/// when randomness was involved.
struct ReportDocument {
    std::string schema_version = "1.0";
    std::string command;
    std::string inputs_digest;
    std::string payload_type;
    nlohmann::json payload;
    std::optional<std::string> rng_algorithm;
    std::optional<std::uint64_t> master_seed;

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string dump() const;
    static ReportDocument parse(const std::string& text);
};

/// covplot CSV: "lag,gamma_x[,gamma_y],band". With two profiles the band
/// column carries the wider of the two reference bands.
void write_covplot_csv(std::ostream& out, const AutocovarianceProfile& gx,
                       const AutocovarianceProfile* gy);

} // namespace mwdep
