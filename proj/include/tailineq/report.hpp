#pragma once

#include <string>

#include <json.hpp>

#include "tailineq/pipeline.hpp"

namespace tailineq {

// Rounds to 10 significant digits, the precision every JSON number carries.
double round_significant(double v, int digits = 10);

// Stable JSON document: object keys sorted, numbers rounded to 10
// significant digits. Schema documented in docs/report-schema.md.
nlohmann::json to_json(const InequalityReport& report);

std::string emit(const InequalityReport& report, OutputFormat format);

}  // namespace tailineq
