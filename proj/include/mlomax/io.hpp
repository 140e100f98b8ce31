#pragma once

// CSV and JSON helpers shared by the CLI and tests.

#include <string>
#include <vector>

#include "mlomax/mcmc.hpp"
#include "mlomax/numerics.hpp"

namespace mlomax {

struct CsvTable {
    std::vector<std::string> header;
    Matrix values;

    /// Throws std::out_of_range for an unknown column.
    Eigen::Index column(const std::string& name) const;
};

/// Reads a numeric CSV with a header row. Throws std::invalid_argument with
/// the offending line number on malformed input.
CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

/// Writes with full round-trip precision.
void write_csv(const std::string& path, const std::vector<std::string>& header, const Matrix& values);
std::string format_csv(const std::vector<std::string>& header, const Matrix& values);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Summary JSON: {"parameters": [{name, mean, median, variance, lower, upper, ess}]}.
/// Depends only on the draws, so re-summarizing a written draws CSV reproduces it.
std::string summary_to_json(const std::vector<CoordinateSummary>& summary);
std::vector<CoordinateSummary> summary_from_json(const std::string& text);

} // namespace mlomax
