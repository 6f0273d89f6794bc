#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nlpoisson {

/// Raised for malformed or invalid configuration; `key()` names the culprit.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

enum class Command { verify, pointwise, divergence, bounds, commutation };
enum class DataKind { gaussian, rational_decay, file };
enum class OutputFormat { csv, json };
enum class Pipeline { closed_form, sampled };

std::string_view to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view text) noexcept;

struct DataSpec {
    DataKind kind = DataKind::gaussian;
    double width = 1.0;  ///< a in exp(-a |x|^2 / 2)
    std::string path;

    std::string describe() const;
};

struct RunConfig {
    Command command = Command::verify;
    int n = 1;
    std::optional<double> p;
    DataSpec data;
    std::size_t grid_points = 512;
    double half_width = 20.0;
    bool self_dual = false;
    double xi_max = 4.0;
    std::size_t xi_points = 65;
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    std::vector<double> cutoffs{10.0, 100.0, 1000.0, 10000.0};
    std::vector<double> times;
    std::vector<double> scales{0.5, 1.0, 2.0};
    Pipeline pipeline = Pipeline::closed_form;
    double residual_tolerance = 0.0;
    std::string bound_side = "lhs";
    std::string output;
    OutputFormat format = OutputFormat::csv;
};

struct ConfigEntry {
    std::string key;
    std::string value;
    std::size_t line = 0;  ///< 0 for entries that did not come from a file
};

/// Splits `key = value` lines. Blank lines and lines starting with '#' are skipped.
std::vector<ConfigEntry> parse_entries(std::string_view text);

/// Replaces every entry for `key` with one entry per value.
void override_entries(std::vector<ConfigEntry>& entries, const std::string& key,
                      const std::vector<std::string>& values);

/// Applies entries over the defaults and validates the result. Scalar keys take
/// their last value; list keys collect every value (commas also separate).
RunConfig resolve_config(const std::vector<ConfigEntry>& entries);

RunConfig parse_config(std::string_view text);

/// Fully resolved configuration as ordered key/value pairs, one per list element.
std::vector<std::pair<std::string, std::string>> config_items(const RunConfig& config);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

}  // namespace nlpoisson
