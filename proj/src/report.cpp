#include "tailineq/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <sstream>

namespace tailineq {
namespace {

using nlohmann::json;

constexpr const char* kSchema = "tailineq.report/1";

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_significant(v);
}

json error_json(const CellError& e) {
  return {{"kind", e.kind}, {"message", e.message}};
}

json params_json(const TailParams& p) {
  return std::visit(
      [](const auto& q) -> json {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Gpd>) {
          return {{"sigma", number(q.sigma)}, {"gamma", number(q.gamma)}};
        } else if constexpr (std::is_same_v<T, Pareto>) {
          return {{"gamma", number(q.gamma)}};
        } else {
          return {{"gamma", number(q.gamma)}, {"c", number(q.c)}, {"tau", number(q.tau)}};
        }
      },
      p);
}

json fit_json(const TailFit& f) {
  return {{"family", to_string(f.family())},
          {"params", params_json(f.params)},
          {"u", number(f.u)},
          {"k", f.k},
          {"n", f.n},
          {"alpha", number(f.alpha())},
          {"log_likelihood", number(f.log_likelihood)},
          {"dropped_ties", f.dropped_ties},
          {"warnings", f.warnings}};
}

std::string fmt(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string params_text(const TailParams& p) {
  return std::visit(
      [](const auto& q) -> std::string {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Gpd>) {
          return "sigma=" + fmt(q.sigma) + " gamma=" + fmt(q.gamma);
        } else if constexpr (std::is_same_v<T, Pareto>) {
          return "gamma=" + fmt(q.gamma);
        } else {
          return "gamma=" + fmt(q.gamma) + " c=" + fmt(q.c) + " tau=" + fmt(q.tau);
        }
      },
      p);
}

std::string table(const InequalityReport& r) {
  std::ostringstream os;
  os << "source: " << r.source << "\n";
  os << "cleaning: rows " << r.cleaning.rows << ", kept " << r.cleaning.kept
     << ", dropped non-positive " << r.cleaning.dropped_nonpositive
     << ", parse errors " << r.cleaning.parse_errors << "\n\n";

  os << "Descriptive statistics\n";
  os << std::left << "  " << std::setw(10) << "n" << std::setw(16) << "median"
     << std::setw(16) << (r.scale_mad ? "MAD (scaled)" : "MAD") << "max\n";
  os << "  " << std::setw(10) << r.descriptive.n << std::setw(16)
     << fmt(r.descriptive.median, 10) << std::setw(16) << fmt(r.descriptive.mad, 10)
     << fmt(r.descriptive.max, 10) << "\n\n";

  if (r.selection) {
    os << "Tail model selection (k = " << r.selection->k << ", alpha = "
       << fmt(r.alpha) << ")\n";
    for (TailFamily f : {TailFamily::Gpd, TailFamily::Pareto, TailFamily::Ppd}) {
      os << "  " << std::setw(6) << to_string(f);
      if (auto it = r.selection->scores.find(f); it != r.selection->scores.end()) {
        os << std::setw(14) << fmt(it->second, 8);
        if (f == r.selection->chosen) os << "<- chosen";
      } else {
        os << "fit failed: " << r.selection->failures.at(f);
      }
      os << "\n";
    }
    os << "\n";
  } else if (r.selection_error) {
    os << "Tail model selection failed: " << r.selection_error->message << "\n\n";
  }

  if (!r.fits.empty()) {
    os << "Tail fits\n";
    for (const auto& [method, mf] : r.fits) {
      os << "  " << std::setw(8) << to_string(method);
      if (mf.fit) {
        os << "u=" << fmt(mf.fit->u) << " k=" << mf.fit->k << " "
           << params_text(mf.fit->params) << " loglik=" << fmt(mf.fit->log_likelihood, 10);
      } else if (mf.error) {
        os << "failed (" << mf.error->kind << ")";
      }
      os << "\n";
    }
    os << "\n";
  }

  os << "Estimates\n";
  os << "  " << std::setw(8) << "measure";
  for (Method m : r.methods) os << std::right << std::setw(14) << to_string(m);
  os << "\n";
  for (Measure measure : r.measures) {
    os << std::left << "  " << std::setw(8) << to_string(measure);
    for (Method m : r.methods) {
      const Cell* c = r.find(measure, m);
      os << std::right << std::setw(14)
         << (c && c->value ? fmt(*c->value) : std::string("error"));
    }
    os << "\n";
  }

  bool header = false;
  auto open_notes = [&] {
    if (!header) os << std::left << "\nNotes\n";
    header = true;
  };
  for (const auto& [method, mf] : r.fits) {
    if (mf.error) {
      open_notes();
      os << "  [" << to_string(method) << "] fit: " << mf.error->kind << ": "
         << mf.error->message << "\n";
    } else if (mf.fit) {
      for (const auto& w : mf.fit->warnings) {
        open_notes();
        os << "  [" << to_string(method) << "] fit: warning: " << w << "\n";
      }
    }
  }
  for (const Cell& c : r.cells) {
    if (!c.error && c.diagnostics.empty()) continue;
    open_notes();
    if (c.error) {
      os << "  [" << to_string(c.method) << "] " << to_string(c.measure) << ": "
         << c.error->kind << ": " << c.error->message << "\n";
    }
    for (const auto& d : c.diagnostics) {
      os << "  [" << to_string(c.method) << "] " << to_string(c.measure)
         << ": warning: " << d << "\n";
    }
  }
  return os.str();
}

}  // namespace

double round_significant(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

nlohmann::json to_json(const InequalityReport& r) {
  json doc;
  doc["schema"] = kSchema;
  doc["source"] = r.source;
  doc["status"] = r.has_failures() ? "partial" : "ok";

  json measures = json::array();
  for (Measure m : r.measures) measures.push_back(to_string(m));
  doc["config"] = {{"alpha", number(r.alpha)},
                   {"tail", to_string(r.tail)},
                   {"measures", measures},
                   {"mad_scaled", r.scale_mad}};

  doc["cleaning"] = {{"rows", r.cleaning.rows},
                     {"kept", r.cleaning.kept},
                     {"dropped_nonpositive", r.cleaning.dropped_nonpositive},
                     {"parse_errors", r.cleaning.parse_errors},
                     {"parse_error_lines", r.cleaning.parse_error_lines}};

  doc["descriptive"] = {{"n", r.descriptive.n},
                        {"median", number(r.descriptive.median)},
                        {"mad", number(r.descriptive.mad)},
                        {"max", number(r.descriptive.max)}};

  if (r.selection) {
    json scores = json::object();
    for (const auto& [f, s] : r.selection->scores) scores[to_string(f)] = number(s);
    json failures = json::object();
    for (const auto& [f, why] : r.selection->failures) failures[to_string(f)] = why;
    doc["selection"] = {{"k", r.selection->k},
                        {"chosen", to_string(r.selection->chosen)},
                        {"scores", scores},
                        {"failures", failures}};
  } else if (r.selection_error) {
    doc["selection"] = {{"error", error_json(*r.selection_error)}};
  } else {
    doc["selection"] = nullptr;
  }

  json fits = json::object();
  for (const auto& [method, mf] : r.fits) {
    if (mf.fit) fits[to_string(method)] = fit_json(*mf.fit);
    else if (mf.error) fits[to_string(method)] = {{"error", error_json(*mf.error)}};
  }
  doc["fits"] = fits;

  json methods = json::array();
  for (Method m : r.methods) methods.push_back(to_string(m));
  doc["methods"] = methods;

  json estimates = json::object();
  for (const Cell& c : r.cells) {
    json cell;
    if (c.value) cell["value"] = number(*c.value);
    if (c.error) cell["error"] = error_json(*c.error);
    cell["diagnostics"] = c.diagnostics;
    estimates[to_string(c.measure)][to_string(c.method)] = cell;
  }
  doc["estimates"] = estimates;
  return doc;
}

std::string emit(const InequalityReport& report, OutputFormat format) {
  if (format == OutputFormat::Json) return to_json(report).dump(2) + "\n";
  return table(report);
}

}  // namespace tailineq
