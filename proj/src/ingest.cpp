#include "tailineq/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace tailineq {
namespace {

constexpr std::size_t kMaxRecordedErrorLines = 10;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\"'");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\"'");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view field) {
  field = trim(field);
  if (field.empty()) return std::nullopt;
  if (field.front() == '+') field.remove_prefix(1);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

char detect_delimiter(std::string_view line) {
  for (char d : {',', '\t', ';'}) {
    if (line.find(d) != std::string_view::npos) return d;
  }
  return '\0';
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  if (delim == '\0') {
    out.push_back(line);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

ColumnSelector ColumnSelector::parse(const std::string& text) {
  ColumnSelector sel;
  if (text.empty()) return sel;
  std::size_t idx = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), idx);
  if (ec == std::errc{} && ptr == text.data() + text.size()) {
    sel.index = idx;
  } else {
    sel.name = text;
  }
  return sel;
}

IngestResult ingest_text(const std::string& text, const ColumnSelector& column,
                         const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  CleaningSummary summary;
  std::vector<double> kept;
  bool first = true;
  char delim = '\0';
  std::size_t col = column.index.value_or(0);

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim(view).empty()) continue;

    if (first) {
      first = false;
      delim = detect_delimiter(view);
      const auto fields = split(view, delim);
      const bool header = column.name.has_value() ||
                          (col < fields.size() && !parse_number(fields[col]));
      if (header) {
        if (column.name) {
          bool found = false;
          for (std::size_t i = 0; i < fields.size(); ++i) {
            if (trim(fields[i]) == *column.name) {
              col = i;
              found = true;
              break;
            }
          }
          if (!found) {
            throw IngestError(source + ": no column named '" + *column.name + "'");
          }
        }
        if (col >= fields.size()) {
          throw IngestError(source + ": header has no column " + std::to_string(col));
        }
        continue;
      }
    }

    const auto fields = split(view, delim);
    if (col >= fields.size()) {
      throw IngestError(source + ":" + std::to_string(line_no) + ": row has no column " +
                        std::to_string(col));
    }
    ++summary.rows;
    const auto value = parse_number(fields[col]);
    if (!value) {
      ++summary.parse_errors;
      if (summary.parse_error_lines.size() < kMaxRecordedErrorLines) {
        summary.parse_error_lines.push_back(line_no);
      }
    } else if (*value <= 0) {
      ++summary.dropped_nonpositive;
    } else {
      kept.push_back(*value);
    }
  }

  summary.kept = kept.size();
  if (kept.size() < kMinObservations) {
    std::ostringstream os;
    os << source << ": too few observations (" << kept.size()
       << " positive values, need " << kMinObservations << ")";
    throw IngestError(os.str());
  }
  return {Sample(kept, source), summary};
}

IngestResult ingest(const std::string& path, const ColumnSelector& column) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IngestError(path + ": file not found or unreadable");
  std::ostringstream buf;
  buf << is.rdbuf();
  return ingest_text(buf.str(), column, path);
}

}  // namespace tailineq
