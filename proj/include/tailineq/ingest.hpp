#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tailineq/tailfit.hpp"

namespace tailineq {

// Column by header name or 0-based index.
struct ColumnSelector {
  std::optional<std::string> name;
  std::optional<std::size_t> index;

  static ColumnSelector parse(const std::string& text);
};

struct CleaningSummary {
  std::size_t rows = 0;                 // data rows read (header excluded)
  std::size_t kept = 0;
  std::size_t dropped_nonpositive = 0;
  std::size_t parse_errors = 0;         // empty / non-numeric / non-finite fields
  std::vector<std::size_t> parse_error_lines;  // first few, 1-based
};

struct IngestResult {
  Sample sample;
  CleaningSummary cleaning;
};

inline constexpr std::size_t kMinObservations = 20;

// Reads newline-delimited decimals, or delimited text with a header row
// (detected when the first non-blank line is not numeric). Fields that do not
// parse as finite numbers are counted and skipped; a row without the selected
// column is a fatal IngestError naming the line. Non-positive values are
// dropped. Throws IngestError when fewer than 20 values survive.
IngestResult ingest(const std::string& path, const ColumnSelector& column = {});
IngestResult ingest_text(const std::string& text, const ColumnSelector& column = {},
                         const std::string& source = "<memory>");

}  // namespace tailineq
