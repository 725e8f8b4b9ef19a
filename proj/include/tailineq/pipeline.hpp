#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tailineq/ingest.hpp"
#include "tailineq/measures.hpp"
#include "tailineq/repr.hpp"
#include "tailineq/tailfit.hpp"

namespace tailineq {

enum class TailMode { Gpd, Pareto, Ppd, All, Auto };
enum class OutputFormat { Table, Json };

TailMode parse_tail_mode(const std::string& s);
std::string to_string(TailMode m);
OutputFormat parse_output_format(const std::string& s);
Measure parse_measure(const std::string& s);
// Comma-separated subset of gini,ge0,a1,qsr; "all" selects every measure.
std::vector<Measure> parse_measures(const std::string& list);

struct RunConfig {
  std::string input_path;
  ColumnSelector column;
  double alpha = 0.10;
  TailMode tail = TailMode::Auto;
  std::vector<Measure> measures = {Measure::Gini, Measure::GE0, Measure::A1,
                                   Measure::QSR};
  OutputFormat output = OutputFormat::Table;
  std::uint64_t seed = 0;
  bool scale_mad = false;

  // Throws ConfigError unless 0 < alpha < 0.5 and measures is non-empty.
  void validate() const;
};

struct CellError {
  std::string kind;
  std::string message;
};

// One (measure, method) entry: a value or a typed error.
struct Cell {
  Measure measure;
  Method method;
  std::optional<double> value;
  std::optional<CellError> error;
  std::vector<std::string> diagnostics;
};

struct MethodFit {
  std::optional<TailFit> fit;
  std::optional<CellError> error;
};

struct InequalityReport {
  std::string source;
  double alpha = 0;
  TailMode tail = TailMode::Auto;
  std::vector<Measure> measures;
  bool scale_mad = false;

  CleaningSummary cleaning;
  DescriptiveStats descriptive;
  std::optional<SelectionReport> selection;
  std::optional<CellError> selection_error;

  std::vector<Method> methods;             // column order
  std::map<Method, MethodFit> fits;        // SP methods only
  std::vector<Cell> cells;                 // measure-major, then method order

  bool has_failures() const;
  const Cell* find(Measure m, Method method) const;
};

// Exit status for a completed run: 0 when every cell has a value, 2 otherwise.
int exit_code(const InequalityReport& report);

// Reads cfg.input_path and runs the estimation pipeline. Fit and measure
// failures land in the affected cells; config and ingestion errors throw.
InequalityReport run_pipeline(const RunConfig& cfg);
InequalityReport run_pipeline(const Sample& sample, const CleaningSummary& cleaning,
                              const RunConfig& cfg);

}  // namespace tailineq
