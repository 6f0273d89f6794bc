#include "nlpoisson/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "nlpoisson/operators.hpp"

namespace nlpoisson {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SpatialGrid config_grid(const RunConfig& c) { return make_grid(c.n, c.grid_points, c.half_width); }

Field read_field_file(const std::string& path, const SpatialGrid& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open data file '" + path + "'");
    Field f = Field::zeros(grid);
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        std::istringstream fields(line);
        double re = 0.0;
        double im = 0.0;
        if (!(fields >> re)) throw std::runtime_error("malformed line in data file '" + path + "'");
        if (!(fields >> im)) im = 0.0;
        if (count >= f.samples.size()) throw std::runtime_error("data file has more than N^n samples");
        f.samples[count++] = Complex{re, im};
    }
    if (count != f.samples.size()) {
        throw std::runtime_error("data file has " + std::to_string(count) + " samples, expected " +
                                 std::to_string(f.samples.size()));
    }
    require_finite(f, "data file");
    return f;
}

Field sampled_data(const RunConfig& c) {
    const SpatialGrid grid = config_grid(c);
    switch (c.data.kind) {
        case DataKind::gaussian: return sample(unit_gaussian(c.data.width, c.n), grid);
        case DataKind::rational_decay:
            return sample([](std::span<const double> x) {
                double r2 = 0.0;
                for (double v : x) r2 += v * v;
                return Complex{1.0 / ((1.0 + r2) * (1.0 + r2))};
            }, grid);
        case DataKind::file: return read_field_file(c.data.path, grid);
    }
    throw std::logic_error("unhandled data kind");
}

QuadratureSpec quadrature_spec(const RunConfig& c) {
    QuadratureSpec spec;
    spec.abs_tol = c.abs_tol;
    spec.rel_tol = c.rel_tol;
    return spec;
}

void check_resolution(const Field& f, double threshold, Report& report) {
    const ResolutionReport r = resolution_check(f);
    if (!r.resolved(threshold)) {
        report.passed = false;
        report.warnings.push_back("grid under-resolves the initial data: edge ratio " + format_double(r.edge_ratio) +
                                  ", spectral ratio " + format_double(r.spectral_ratio) + " exceed " +
                                  format_double(threshold));
    }
}

Report run_verify(const RunConfig& c) {
    Report report;
    report.config = c;
    const SimParams params = make_params(c.n, *c.p);
    const XiSet xi = XiSet::uniform(c.n, c.xi_max, c.xi_points);
    const VerificationReport v = verify_identity(load_data(c), params, xi, quadrature_spec(c), c.residual_tolerance);

    if (c.n == 1) {
        report.columns = {"xi"};
    } else {
        for (int d = 1; d <= c.n; ++d) report.columns.push_back("xi" + std::to_string(d));
    }
    for (const char* col : {"lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_res", "rel_res"}) report.columns.push_back(col);
    for (std::size_t k = 0; k < xi.size(); ++k) {
        std::vector<double> row(xi.point(k).begin(), xi.point(k).end());
        row.insert(row.end(), {v.lhs_values[k].real(), v.lhs_values[k].imag(), v.rhs_values[k].real(),
                               v.rhs_values[k].imag(), v.abs_residual[k], v.rel_residual[k]});
        report.rows.push_back(std::move(row));
    }
    report.summary = {{"max_rel_residual", v.max_rel_residual},
                      {"combined_error_estimate", v.combined_error_estimate},
                      {"threshold", v.threshold},
                      {"l2_lhs", v.l2_lhs},
                      {"l2_rhs", v.l2_rhs}};
    report.warnings = v.quadrature_warnings;
    report.passed = v.passed;
    check_resolution(sampled_data(c), c.residual_tolerance, report);
    return report;
}

Report run_pointwise(const RunConfig& c) {
    Report report;
    report.config = c;
    report.passed = true;
    const SimParams params = make_params(c.n, *c.p);
    const Field data = sampled_data(c);
    const XiSet xi = XiSet::uniform(c.n, c.xi_max, c.xi_points);
    report.columns = {"t", "residual", "scale", "closed_form_residual"};
    double worst = 0.0;
    for (double t : c.times) {
        const PointwiseReport r = pointwise_check(data, params, t);
        double closed = kNaN;
        if (c.data.kind == DataKind::gaussian) {
            closed = pointwise_check(unit_gaussian(c.data.width, c.n), params, t, xi).residual;
            if (!(closed <= c.residual_tolerance)) report.passed = false;
        }
        if (!(r.residual <= c.residual_tolerance)) report.passed = false;
        worst = std::max(worst, r.residual);
        for (const auto& w : r.warnings) report.warnings.push_back("t = " + format_double(t) + ": " + w);
        report.rows.push_back({t, r.residual, r.scale, closed});
    }
    report.summary = {{"max_residual", worst}};
    return report;
}

Report run_divergence(const RunConfig& c) {
    Report report;
    report.config = c;
    const DivergenceReport d = divergence_scan(c.data.width, c.n, c.cutoffs, quadrature_spec(c));
    report.columns = {"T", "partial_magnitude"};
    for (std::size_t i = 0; i < d.cutoffs.size(); ++i) report.rows.push_back({d.cutoffs[i], d.partial_magnitudes[i]});
    report.footer = {{"fit_slope", d.fitted_slope}};
    report.summary = {{"p", d.p},
                      {"fit_slope", d.fitted_slope},
                      {"fit_intercept", d.fitted_intercept},
                      {"fit_residual", d.fit_residual},
                      {"relative_fit_residual", d.relative_fit_residual},
                      {"companion_p", d.companion_p}};
    for (std::size_t i = 0; i < d.companion_magnitudes.size(); ++i) {
        report.summary.emplace_back("companion_partial_" + std::to_string(i), d.companion_magnitudes[i]);
    }
    for (std::size_t i = 0; i < d.companion_decay_per_decade.size(); ++i) {
        report.summary.emplace_back("companion_decay_per_decade_" + std::to_string(i), d.companion_decay_per_decade[i]);
    }
    bool shrinking = !d.companion_increments.empty();
    for (std::size_t i = 0; i < d.companion_increments.size(); ++i) {
        if (!(d.companion_increments[i] > 0.0)) shrinking = false;
        if (i > 0 && !(d.companion_increments[i] < d.companion_increments[i - 1])) shrinking = false;
    }
    const bool log_growth = d.fitted_slope > 0.0 && d.relative_fit_residual < c.residual_tolerance;
    if (!log_growth) report.warnings.push_back("partial integrals at p = 1 + 2/n do not fit c ln T + d");
    if (!shrinking) report.warnings.push_back("companion increments are not decreasing");
    report.passed = log_growth && shrinking;
    return report;
}

Report run_bounds(const RunConfig& c) {
    Report report;
    report.config = c;
    const SimParams params = make_params(c.n, *c.p);
    std::vector<InitialData> bases;
    std::vector<double> widths;
    if (c.data.kind == DataKind::gaussian) {
        for (double f : {0.25, 1.0, 4.0}) {
            bases.emplace_back(unit_gaussian(f * c.data.width, c.n));
            widths.push_back(f * c.data.width);
        }
    } else {
        bases.emplace_back(sampled_data(c));
        widths.push_back(kNaN);
    }
    BoundOptions options;
    options.side = c.bound_side == "rhs" ? BoundSide::rhs : BoundSide::lhs;
    options.xi_points_per_axis = c.xi_points;
    options.quadrature = quadrature_spec(c);
    const BoundReport b = bound_check(bases, c.scales, params, options, c.data.describe());
    report.columns = {"base_width", "scale", "f_norm", "data_combination", "ratio"};
    for (const BoundMember& m : b.members) {
        report.rows.push_back({widths[m.base], m.scale, m.f_norm, m.data_combination, m.ratio});
    }
    report.summary = {{"max_ratio", b.max_ratio}, {"min_ratio", b.min_ratio}, {"homogeneity_spread", b.homogeneity_spread}};
    report.passed = b.passed && b.homogeneity_spread <= c.residual_tolerance;
    return report;
}

Report run_commutation(const RunConfig& c) {
    Report report;
    report.config = c;
    report.passed = true;
    const Field data = sampled_data(c);
    report.columns = {"t", "fourier_dilation", "dilation_inverse", "inverse_fourier_dilation", "sampled_fourier_dilation"};
    double worst = 0.0;
    for (double t : c.times) {
        const CommutationReport r = check_commutation(t, data, c.residual_tolerance);
        report.rows.push_back({t, r.fourier_dilation, r.dilation_inverse, r.inverse_fourier_dilation,
                               r.sampled_fourier_dilation});
        worst = std::max(worst, r.max_closed_form());
        if (!r.passed()) report.passed = false;
        for (const auto& w : r.warnings) report.warnings.push_back("t = " + format_double(t) + ": " + w);
    }
    report.summary = {{"max_closed_form_residual", worst}};
    return report;
}

}  // namespace

InitialData load_data(const RunConfig& config) {
    if (config.pipeline == Pipeline::closed_form && config.data.kind == DataKind::gaussian) {
        return unit_gaussian(config.data.width, config.n);
    }
    return sampled_data(config);
}

Report execute(const RunConfig& config) {
    switch (config.command) {
        case Command::verify: return run_verify(config);
        case Command::pointwise: return run_pointwise(config);
        case Command::divergence: return run_divergence(config);
        case Command::bounds: return run_bounds(config);
        case Command::commutation: return run_commutation(config);
    }
    throw std::logic_error("unhandled command");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    try {
        const Report report = execute(config);
        const std::string text = render(report);
        std::ofstream file(config.output, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file '" + config.output + "'");
        file << text;
        file.close();
        if (!file) throw std::runtime_error("failed writing output file '" + config.output + "'");

        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out << to_string(config.command) << ": " << (report.passed ? "PASS" : "FAIL") << '\n';
        for (const auto& [key, value] : report.summary) out << "  " << key << " = " << format_double(value) << '\n';
        for (const auto& w : report.warnings) out << "  warning: " << w << '\n';
        out << "  report: " << config.output << '\n';
        out << "  wall time: " << format_double(std::round(seconds * 1000.0) / 1000.0) << " s\n";
        return report.passed ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace nlpoisson
