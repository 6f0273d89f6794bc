#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlpoisson/config.hpp"
#include "nlpoisson/run.hpp"

namespace {

struct Flags {
    std::string config;
    std::string output;
    std::string format;
    std::string n;
    std::string p;
    std::string data;
    std::string grid;
    std::string xi;
    std::string tol;
    std::string cutoffs;
    std::vector<std::string> set;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
}

// "a:b" into two keys
void pair_flag(std::vector<nlpoisson::ConfigEntry>& entries, const std::string& flag, const std::string& value,
               const std::string& first, const std::string& second) {
    const auto colon = value.find(':');
    if (colon == std::string::npos) {
        throw nlpoisson::ConfigError(first, "--" + flag + " expects <" + first + ">:<" + second + ">");
    }
    nlpoisson::override_entries(entries, first, {value.substr(0, colon)});
    nlpoisson::override_entries(entries, second, {value.substr(colon + 1)});
}

int run_command(const std::string& command, const Flags& f) {
    std::vector<nlpoisson::ConfigEntry> entries;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) {
            std::cerr << "error: cannot open config file '" << f.config << "'\n";
            return 2;
        }
        std::stringstream text;
        text << in.rdbuf();
        entries = nlpoisson::parse_entries(text.str());
    }
    nlpoisson::override_entries(entries, "command", {command});
    auto scalar = [&](const std::string& key, const std::string& value) {
        if (!value.empty()) nlpoisson::override_entries(entries, key, {value});
    };
    scalar("output", f.output);
    scalar("format", f.format);
    scalar("n", f.n);
    scalar("p", f.p);
    scalar("data", f.data);
    if (!f.grid.empty()) pair_flag(entries, "grid", f.grid, "grid_points", "half_width");
    if (!f.xi.empty()) pair_flag(entries, "xi", f.xi, "xi_max", "xi_points");
    if (!f.tol.empty()) pair_flag(entries, "tol", f.tol, "abs_tol", "rel_tol");
    if (!f.cutoffs.empty()) nlpoisson::override_entries(entries, "cutoffs", split(f.cutoffs, ','));

    std::map<std::string, std::vector<std::string>> sets;
    for (const auto& kv : f.set) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw nlpoisson::ConfigError(kv, "--set expects key=value");
        sets[kv.substr(0, eq)].push_back(kv.substr(eq + 1));
    }
    for (const auto& [key, values] : sets) nlpoisson::override_entries(entries, key, values);

    const nlpoisson::RunConfig config = nlpoisson::resolve_config(entries);
    return nlpoisson::run(config, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks of a time-inversion identity for the nonlinear Schrodinger equation"};
    app.require_subcommand(1);
    Flags flags;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"verify", "compare both sides of the integrated identity on a xi grid"},
        {"pointwise", "check the pointwise identity at a list of times"},
        {"divergence", "partial integrals at the long-range power and just above it"},
        {"bounds", "ratio of ||F||_2 to the data-space norm combination"},
        {"commutation", "Fourier/dilation commutation residuals"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "key = value configuration file");
        sub->add_option("--output", flags.output, "report path");
        sub->add_option("--format", flags.format, "csv or json");
        sub->add_option("--n", flags.n, "space dimension");
        sub->add_option("--p", flags.p, "nonlinearity power");
        sub->add_option("--data", flags.data, "gaussian:<a>, rational_decay or file:<path>");
        sub->add_option("--grid", flags.grid, "<N>:<L>, L may be self_dual");
        sub->add_option("--xi", flags.xi, "<max>:<points>");
        sub->add_option("--tol", flags.tol, "<abs>:<rel> quadrature tolerances");
        sub->add_option("--cutoffs", flags.cutoffs, "comma-separated cutoffs T");
        sub->add_option("--set", flags.set, "any other config key, as key=value (repeatable)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return run_command(app.get_subcommands().front()->get_name(), flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
