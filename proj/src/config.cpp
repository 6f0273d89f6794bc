#include "nlpoisson/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "nlpoisson/params.hpp"

namespace nlpoisson {

namespace {

const std::set<std::string>& scalar_keys() {
    static const std::set<std::string> keys{
        "command", "n", "p", "data", "grid_points", "half_width", "xi_max", "xi_points", "abs_tol",
        "rel_tol", "pipeline", "residual_tolerance", "bound_side", "output", "format"};
    return keys;
}

const std::set<std::string>& list_keys() {
    static const std::set<std::string> keys{"cutoffs", "times", "scales"};
    return keys;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double to_number(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ConfigError(key, "expected a number, got '" + text + "'");
    }
    if (!std::isfinite(value)) throw ConfigError(key, "value must be finite");
    return value;
}

long long to_integer(const std::string& key, const std::string& text) {
    long long value = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ConfigError(key, "expected an integer, got '" + text + "'");
    }
    return value;
}

DataSpec parse_data(const std::string& text) {
    DataSpec d;
    if (text == "rational_decay") {
        d.kind = DataKind::rational_decay;
    } else if (text.rfind("gaussian:", 0) == 0) {
        d.kind = DataKind::gaussian;
        d.width = to_number("data", text.substr(9));
        if (!(d.width > 0.0)) throw ConfigError("data", "Gaussian width must be positive");
    } else if (text.rfind("file:", 0) == 0) {
        d.kind = DataKind::file;
        d.path = text.substr(5);
        if (d.path.empty()) throw ConfigError("data", "file path is empty");
    } else {
        throw ConfigError("data", "expected gaussian:<a>, rational_decay or file:<path>, got '" + text + "'");
    }
    return d;
}

std::vector<double> positive_list(const std::string& key, const std::vector<std::string>& values) {
    std::vector<double> out;
    for (const auto& v : values) {
        const double x = to_number(key, v);
        if (!(x > 0.0)) throw ConfigError(key, "values must be positive");
        out.push_back(x);
    }
    if (out.empty()) throw ConfigError(key, "list is empty");
    return out;
}

std::vector<double> default_times(Command c) {
    if (c == Command::commutation) return {0.125, 0.5, 1.0, 2.0, 8.0};
    return {0.1, 0.5, 1.0, 2.0, 10.0};
}

}  // namespace

std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::verify: return "verify";
        case Command::pointwise: return "pointwise";
        case Command::divergence: return "divergence";
        case Command::bounds: return "bounds";
        case Command::commutation: return "commutation";
    }
    return "verify";
}

std::optional<Command> parse_command(std::string_view text) noexcept {
    for (Command c : {Command::verify, Command::pointwise, Command::divergence, Command::bounds,
                      Command::commutation}) {
        if (to_string(c) == text) return c;
    }
    return std::nullopt;
}

std::string DataSpec::describe() const {
    switch (kind) {
        case DataKind::gaussian: return "gaussian:" + format_double(width);
        case DataKind::rational_decay: return "rational_decay";
        case DataKind::file: return "file:" + path;
    }
    return {};
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

std::vector<ConfigEntry> parse_entries(std::string_view text) {
    std::vector<ConfigEntry> entries;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t stop = std::min(text.find('\n', start), text.size());
        ++line_no;
        const std::string line = trim(text.substr(start, stop - start));
        start = stop + 1;
        if (line.empty() || line.front() == '#') {
            if (stop == text.size()) break;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            const std::string key = trim(line);
            throw ConfigError(key, "line " + std::to_string(line_no) + " is not of the form key = value");
        }
        ConfigEntry e{trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)), line_no};
        if (e.key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + " has an empty key");
        entries.push_back(std::move(e));
        if (stop == text.size()) break;
    }
    return entries;
}

void override_entries(std::vector<ConfigEntry>& entries, const std::string& key,
                      const std::vector<std::string>& values) {
    std::erase_if(entries, [&](const ConfigEntry& e) { return e.key == key; });
    for (const auto& v : values) entries.push_back({key, v, 0});
}

RunConfig resolve_config(const std::vector<ConfigEntry>& entries) {
    std::map<std::string, std::string> scalars;
    std::map<std::string, std::vector<std::string>> lists;
    for (const auto& e : entries) {
        if (scalar_keys().count(e.key)) {
            scalars[e.key] = e.value;
        } else if (list_keys().count(e.key)) {
            std::size_t pos = 0;
            while (pos <= e.value.size()) {
                const std::size_t comma = std::min(e.value.find(',', pos), e.value.size());
                const std::string item = trim(std::string_view(e.value).substr(pos, comma - pos));
                if (!item.empty()) lists[e.key].push_back(item);
                pos = comma + 1;
            }
        } else {
            throw ConfigError(e.key, "unknown key");
        }
    }
    auto has = [&](const char* k) { return scalars.count(k) > 0; };

    RunConfig c;
    if (!has("command")) throw ConfigError("command", "missing required key");
    const auto command = parse_command(scalars["command"]);
    if (!command) throw ConfigError("command", "unknown command '" + scalars["command"] + "'");
    c.command = *command;

    if (has("n")) {
        const long long n = to_integer("n", scalars["n"]);
        if (n < 1 || n > 3) throw ConfigError("n", "dimension must be 1, 2 or 3");
        c.n = static_cast<int>(n);
    }

    const bool needs_p = c.command == Command::verify || c.command == Command::pointwise ||
                         c.command == Command::bounds;
    if (has("p")) {
        const double p = to_number("p", scalars["p"]);
        if (!(p > 1.0)) throw ConfigError("p", "power must exceed 1");
        c.p = p;
    } else if (needs_p) {
        throw ConfigError("p", "missing required key");
    }
    if (needs_p) {
        const RegimeTag regime = classify_regime(c.n, *c.p);
        if (regime == RegimeTag::long_range) {
            throw ConfigError("p", "p <= 1 + 2/n is the long-range regime, where neither integral converges");
        }
        if (regime == RegimeTag::out_of_range) {
            throw ConfigError("p", "p is above the energy-critical power for this n");
        }
    }

    if (has("data")) {
        c.data = parse_data(scalars["data"]);
    } else if (c.command == Command::verify || c.command == Command::pointwise || c.command == Command::bounds) {
        throw ConfigError("data", "missing required key");
    }
    if (c.command == Command::divergence && c.data.kind != DataKind::gaussian) {
        throw ConfigError("data", "divergence scan needs gaussian:<a> data");
    }

    if (has("grid_points")) {
        const long long N = to_integer("grid_points", scalars["grid_points"]);
        if (N < 8 || (N & (N - 1)) != 0) throw ConfigError("grid_points", "must be a power of two >= 8");
        c.grid_points = static_cast<std::size_t>(N);
    }
    if (has("half_width")) {
        if (scalars["half_width"] == "self_dual") {
            c.self_dual = true;
        } else {
            c.half_width = to_number("half_width", scalars["half_width"]);
            if (!(c.half_width > 0.0)) throw ConfigError("half_width", "must be positive");
        }
    }
    if (c.self_dual) c.half_width = std::sqrt(std::acos(-1.0) * static_cast<double>(c.grid_points) / 2.0);

    if (has("xi_max")) {
        c.xi_max = to_number("xi_max", scalars["xi_max"]);
        if (!(c.xi_max > 0.0)) throw ConfigError("xi_max", "must be positive");
    }
    if (has("xi_points")) {
        const long long m = to_integer("xi_points", scalars["xi_points"]);
        if (m < 2 || m > 100000) throw ConfigError("xi_points", "must be between 2 and 100000");
        c.xi_points = static_cast<std::size_t>(m);
    }
    if (has("abs_tol")) {
        c.abs_tol = to_number("abs_tol", scalars["abs_tol"]);
        if (!(c.abs_tol > 0.0)) throw ConfigError("abs_tol", "must be positive");
    }
    if (has("rel_tol")) {
        c.rel_tol = to_number("rel_tol", scalars["rel_tol"]);
        if (!(c.rel_tol > 0.0)) throw ConfigError("rel_tol", "must be positive");
    }

    if (lists.count("cutoffs")) {
        c.cutoffs = positive_list("cutoffs", lists["cutoffs"]);
    }
    for (std::size_t i = 0; i < c.cutoffs.size(); ++i) {
        if (!(c.cutoffs[i] > 1.0)) throw ConfigError("cutoffs", "every cutoff must exceed 1");
        if (i > 0 && !(c.cutoffs[i] > c.cutoffs[i - 1])) throw ConfigError("cutoffs", "must be strictly increasing");
    }
    if (c.command == Command::divergence && c.cutoffs.back() / c.cutoffs.front() < 1000.0 * (1.0 - 1e-12)) {
        throw ConfigError("cutoffs", "must span at least three decades");
    }
    c.times = lists.count("times") ? positive_list("times", lists["times"]) : default_times(c.command);
    if (lists.count("scales")) c.scales = positive_list("scales", lists["scales"]);

    if (has("pipeline")) {
        const std::string& v = scalars["pipeline"];
        if (v == "closed_form") c.pipeline = Pipeline::closed_form;
        else if (v == "sampled") c.pipeline = Pipeline::sampled;
        else throw ConfigError("pipeline", "expected closed_form or sampled, got '" + v + "'");
        if (c.pipeline == Pipeline::closed_form && c.data.kind != DataKind::gaussian) {
            throw ConfigError("pipeline", "closed_form needs gaussian data");
        }
    } else {
        c.pipeline = c.data.kind == DataKind::gaussian ? Pipeline::closed_form : Pipeline::sampled;
    }

    if (has("residual_tolerance")) {
        c.residual_tolerance = to_number("residual_tolerance", scalars["residual_tolerance"]);
        if (c.residual_tolerance < 0.0) throw ConfigError("residual_tolerance", "must be nonnegative");
    } else {
        switch (c.command) {
            case Command::verify: c.residual_tolerance = c.pipeline == Pipeline::closed_form ? 1e-6 : 1e-4; break;
            case Command::pointwise: c.residual_tolerance = 1e-8; break;
            case Command::commutation: c.residual_tolerance = 1e-10; break;
            case Command::bounds: c.residual_tolerance = 1e-6; break;
            case Command::divergence: c.residual_tolerance = 0.02; break;
        }
    }

    if (has("bound_side")) {
        c.bound_side = scalars["bound_side"];
        if (c.bound_side != "lhs" && c.bound_side != "rhs") throw ConfigError("bound_side", "expected lhs or rhs");
    }
    if (has("format")) {
        const std::string& v = scalars["format"];
        if (v == "csv") c.format = OutputFormat::csv;
        else if (v == "json") c.format = OutputFormat::json;
        else throw ConfigError("format", "expected csv or json, got '" + v + "'");
    }
    if (has("output")) {
        c.output = scalars["output"];
        if (c.output.empty()) throw ConfigError("output", "path is empty");
    } else {
        c.output = "nlpoisson_" + std::string(to_string(c.command)) + (c.format == OutputFormat::csv ? ".csv" : ".json");
    }
    return c;
}

RunConfig parse_config(std::string_view text) { return resolve_config(parse_entries(text)); }

std::vector<std::pair<std::string, std::string>> config_items(const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> items;
    items.emplace_back("command", std::string(to_string(c.command)));
    items.emplace_back("n", std::to_string(c.n));
    if (c.p) items.emplace_back("p", format_double(*c.p));
    items.emplace_back("data", c.data.describe());
    items.emplace_back("grid_points", std::to_string(c.grid_points));
    items.emplace_back("half_width", format_double(c.half_width));
    items.emplace_back("xi_max", format_double(c.xi_max));
    items.emplace_back("xi_points", std::to_string(c.xi_points));
    items.emplace_back("abs_tol", format_double(c.abs_tol));
    items.emplace_back("rel_tol", format_double(c.rel_tol));
    for (double v : c.cutoffs) items.emplace_back("cutoffs", format_double(v));
    for (double v : c.times) items.emplace_back("times", format_double(v));
    for (double v : c.scales) items.emplace_back("scales", format_double(v));
    items.emplace_back("pipeline", c.pipeline == Pipeline::closed_form ? "closed_form" : "sampled");
    items.emplace_back("residual_tolerance", format_double(c.residual_tolerance));
    items.emplace_back("bound_side", c.bound_side);
    items.emplace_back("output", c.output);
    items.emplace_back("format", c.format == OutputFormat::csv ? "csv" : "json");
    return items;
}

}  // namespace nlpoisson
