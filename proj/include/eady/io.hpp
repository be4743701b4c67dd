#pragma once

// Deterministic CSV export. Every file starts with one `# {json}` line holding
// the resolved parameters, mode, tolerances and artifact version, followed by
// a header row and data rows. Floats are written with 17 significant digits
// so identical runs produce byte-identical files.

#include <filesystem>
#include <istream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "eady/spectral.hpp"

namespace eady::io {

inline constexpr const char* kArtifactName = "eady";
inline constexpr const char* kArtifactVersion = "1.0.0";

/// Shortest-width "%.17g"-equivalent formatting (locale independent).
std::string format_double(double v);

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Throws ParameterError if the row width differs from the header.
    void add_row(std::vector<Cell> row);
};

/// {"artifact", "version", "params", "mode", "eta"}.
nlohmann::json base_metadata(const WaveMode& mode);
nlohmann::json base_metadata(const EadyParams& params);

std::string to_csv(const nlohmann::json& metadata, const Table& table);

/// {"metadata", "columns", "rows"} with non-finite doubles as null.
std::string to_json_text(const nlohmann::json& metadata, const Table& table);

/// Writes through a temporary file in the same directory and renames it into
/// place, so a failed run never leaves a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

struct CsvDocument {
    nlohmann::json metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Index of a column; throws ParameterError if absent.
    std::size_t column(const std::string& name) const;
};

/// Parses the format written by to_csv. Throws ParameterError on a missing
/// metadata line, malformed JSON or ragged rows.
CsvDocument read_csv(std::istream& in);

}  // namespace eady::io
