#include "tailineq/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "tailineq/spcdf.hpp"

namespace tailineq {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

CellError to_cell_error(const Error& e) { return {e.kind(), e.what()}; }

std::optional<TailFamily> family_for(TailMode m) {
  switch (m) {
    case TailMode::Gpd: return TailFamily::Gpd;
    case TailMode::Pareto: return TailFamily::Pareto;
    case TailMode::Ppd: return TailFamily::Ppd;
    default: return std::nullopt;
  }
}

MethodFit fit_or_error(const Sample& s, TailFamily family, double alpha) {
  try {
    return {fit_tail(s, family, alpha), std::nullopt};
  } catch (const Error& e) {
    return {std::nullopt, to_cell_error(e)};
  }
}

}  // namespace

TailMode parse_tail_mode(const std::string& s) {
  const std::string v = lower(s);
  if (v == "gpd") return TailMode::Gpd;
  if (v == "pa" || v == "pareto") return TailMode::Pareto;
  if (v == "ppd") return TailMode::Ppd;
  if (v == "all") return TailMode::All;
  if (v == "auto") return TailMode::Auto;
  throw ConfigError("unknown tail mode '" + s + "' (expected gpd|pa|ppd|all|auto)");
}

std::string to_string(TailMode m) {
  switch (m) {
    case TailMode::Gpd: return "gpd";
    case TailMode::Pareto: return "pa";
    case TailMode::Ppd: return "ppd";
    case TailMode::All: return "all";
    case TailMode::Auto: return "auto";
  }
  return "?";
}

OutputFormat parse_output_format(const std::string& s) {
  const std::string v = lower(s);
  if (v == "table") return OutputFormat::Table;
  if (v == "json") return OutputFormat::Json;
  throw ConfigError("unknown output format '" + s + "' (expected table|json)");
}

Measure parse_measure(const std::string& s) {
  const std::string v = lower(s);
  if (v == "gini") return Measure::Gini;
  if (v == "ge0") return Measure::GE0;
  if (v == "a1") return Measure::A1;
  if (v == "qsr") return Measure::QSR;
  throw ConfigError("unknown measure '" + s + "' (expected gini|ge0|a1|qsr)");
}

std::vector<Measure> parse_measures(const std::string& list) {
  if (lower(list) == "all") {
    return {Measure::Gini, Measure::GE0, Measure::A1, Measure::QSR};
  }
  std::vector<Measure> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Measure m = parse_measure(item);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (out.empty()) throw ConfigError("no measures selected");
  return out;
}

void RunConfig::validate() const {
  if (!(alpha > 0 && alpha < 0.5)) {
    std::ostringstream os;
    os << "alpha must lie in (0, 0.5), got " << alpha;
    throw ConfigError(os.str());
  }
  if (measures.empty()) throw ConfigError("no measures selected");
}

bool InequalityReport::has_failures() const {
  if (selection_error) return true;
  return std::any_of(cells.begin(), cells.end(),
                     [](const Cell& c) { return c.error.has_value(); });
}

const Cell* InequalityReport::find(Measure m, Method method) const {
  for (const Cell& c : cells) {
    if (c.measure == m && c.method == method) return &c;
  }
  return nullptr;
}

int exit_code(const InequalityReport& report) {
  return report.has_failures() ? 2 : 0;
}

InequalityReport run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  IngestResult data = ingest(cfg.input_path, cfg.column);
  return run_pipeline(data.sample, data.cleaning, cfg);
}

InequalityReport run_pipeline(const Sample& sample, const CleaningSummary& cleaning,
                              const RunConfig& cfg) {
  cfg.validate();

  InequalityReport report;
  report.source = sample.source();
  report.alpha = cfg.alpha;
  report.tail = cfg.tail;
  report.measures = cfg.measures;
  report.scale_mad = cfg.scale_mad;
  report.cleaning = cleaning;
  report.descriptive = descriptive_stats(sample, cfg.scale_mad);
  report.methods.push_back(Method::NP);

  // Tail fits, keyed by SP method.
  if (cfg.tail == TailMode::All || cfg.tail == TailMode::Auto) {
    try {
      report.selection = select_tail_model(sample, cfg.alpha);
    } catch (const Error& e) {
      report.selection_error = to_cell_error(e);
    }
  }

  auto add_from_selection = [&](TailFamily family) {
    const Method m = sp_method(family);
    report.methods.push_back(m);
    MethodFit mf;
    if (report.selection) {
      if (auto it = report.selection->fits.find(family); it != report.selection->fits.end()) {
        mf.fit = it->second;
      } else {
        mf.error = CellError{"fit", report.selection->failures.at(family)};
      }
    } else {
      mf.error = report.selection_error;
    }
    report.fits[m] = mf;
  };

  if (cfg.tail == TailMode::All) {
    for (TailFamily f : {TailFamily::Gpd, TailFamily::Pareto, TailFamily::Ppd}) {
      add_from_selection(f);
    }
  } else if (cfg.tail == TailMode::Auto) {
    if (report.selection) add_from_selection(report.selection->chosen);
  } else {
    const TailFamily f = *family_for(cfg.tail);
    const Method m = sp_method(f);
    report.methods.push_back(m);
    report.fits[m] = fit_or_error(sample, f, cfg.alpha);
  }

  // Semi-parametric distributions per SP column.
  std::map<Method, SemiParamCdf> dists;
  for (auto& [method, mf] : report.fits) {
    if (!mf.fit) continue;
    try {
      dists.emplace(method, build_sp_cdf(sample, mf.fit));
    } catch (const Error& e) {
      mf.error = to_cell_error(e);
      mf.fit.reset();
    }
  }

  for (Measure measure : cfg.measures) {
    for (Method method : report.methods) {
      Cell cell{measure, method, std::nullopt, std::nullopt, {}};
      try {
        MeasureValue mv;
        if (method == Method::NP) {
          mv = estimate(measure, sample);
        } else if (auto it = dists.find(method); it != dists.end()) {
          mv = estimate(measure, it->second);
        } else {
          cell.error = report.fits.at(method).error;
        }
        if (!cell.error) {
          cell.value = mv.value;
          cell.diagnostics = mv.diagnostics;
        }
      } catch (const Error& e) {
        cell.error = to_cell_error(e);
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

}  // namespace tailineq
