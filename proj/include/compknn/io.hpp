#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compknn/dataset.hpp"

namespace compknn {

/// Splits RFC 4180-style CSV text into records. Quoted fields may contain
/// commas, doubled quotes and line breaks; CRLF and LF endings are accepted.
/// Blank lines are skipped.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

struct IngestOptions {
  /// Class column; the last column when unset.
  std::optional<std::string> label_column;
  /// Columns to leave out of the compositions, matched case-insensitively.
  /// Names that are not present are ignored.
  std::vector<std::string> exclude{"RI"};
};

struct IngestedData {
  LabeledDataset data;
  std::vector<std::string> part_names;
  std::string label_column;
  std::vector<std::string> excluded_columns;  // those actually present
  std::size_t closed_rows = 0;                // rows rescaled on ingestion
};

/// Reads a labelled compositional table. Every non-label, non-excluded column
/// must be numeric and non-negative. Classes are catalogued in order of first
/// appearance. Errors name the file line and the column.
IngestedData ingest_csv(const std::filesystem::path& path,
                        const IngestOptions& options = {});
IngestedData ingest_csv_text(std::string_view text, const IngestOptions& options = {});

/// Writes a table that ingest_csv reads back to the same dataset.
void write_dataset_csv(std::ostream& out, const LabeledDataset& data,
                       const std::vector<std::string>& part_names,
                       const std::string& label_column);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view value);

/// Parses a grid: "start:end:step" (both ends inclusive within 1e-12),
/// "start:end" (step 1), a comma-separated list or a single value.
std::vector<double> parse_real_grid(std::string_view text);
std::vector<std::size_t> parse_count_grid(std::string_view text);

/// Comma-separated reals, e.g. "0.2,0.3,0.5".
std::vector<double> parse_real_list(std::string_view text);

}  // namespace compknn
