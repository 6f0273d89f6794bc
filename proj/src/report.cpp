#include "nlpoisson/report.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nlpoisson {

namespace {

std::string cell(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return format_double(v);
}

nlohmann::ordered_json number(double v) {
    if (std::isfinite(v)) return v;
    return cell(v);
}

}  // namespace

std::string render_csv(const Report& report) {
    std::ostringstream out;
    for (const auto& [key, value] : config_items(report.config)) out << "# " << key << " = " << value << '\n';
    for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << report.columns[i];
    out << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell(row[i]);
        out << '\n';
    }
    for (const auto& [label, value] : report.footer) out << label << ',' << cell(value) << '\n';
    return out.str();
}

std::string render_json(const Report& report) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [key, value] : config_items(report.config)) {
        if (key == "cutoffs" || key == "times" || key == "scales") {
            if (!config.contains(key)) config[key] = nlohmann::ordered_json::array();
            config[key].push_back(value);
        } else {
            config[key] = value;
        }
    }
    doc["config"] = config;
    doc["passed"] = report.passed;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.summary) summary[key] = number(value);
    doc["summary"] = summary;
    doc["columns"] = report.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (double v : row) r.push_back(number(v));
        rows.push_back(r);
    }
    doc["rows"] = rows;
    nlohmann::ordered_json footer = nlohmann::ordered_json::object();
    for (const auto& [label, value] : report.footer) footer[label] = number(value);
    doc["footer"] = footer;
    doc["warnings"] = report.warnings;
    return doc.dump(2) + "\n";
}

std::string render(const Report& report) {
    return report.config.format == OutputFormat::csv ? render_csv(report) : render_json(report);
}

}  // namespace nlpoisson
