#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nlpoisson/config.hpp"

namespace nlpoisson {

/// Tabular result of one run, rendered to CSV or JSON.
struct Report {
    RunConfig config;
    bool passed = false;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    /// Trailing `label,value` rows of the CSV table.
    std::vector<std::pair<std::string, double>> footer;
    /// Scalar results shown in the summary and the JSON "summary" object.
    std::vector<std::pair<std::string, double>> summary;
    std::vector<std::string> warnings;
};

/// `# key = value` lines for the resolved config, a header row, data rows,
/// then footer rows. Doubles use their shortest round-trip form.
std::string render_csv(const Report& report);

/// {"schema_version": 1, "config": {...}, "passed", "summary", "columns", "rows", "footer", "warnings"}.
std::string render_json(const Report& report);

std::string render(const Report& report);

}  // namespace nlpoisson
