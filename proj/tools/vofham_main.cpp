// vofham: HAM series solutions of variable-order fractional diffusion
// problems with residual-optimized convergence-control parameter.
//
// Subcommands:
//   table           benchmark table of (terms, e_min, hbar_star) rows
//   curves          residual curve and solution curve/surface data
//   series          print/dump the generated series terms
//   validate-oracle power-law checks of the quadrature oracle

#include "vofham/oracle.hpp"
#include "vofham/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

struct CommonArgs {
    std::string problem = "1";
    std::string config_path;
    std::string out_dir;
    std::string grid_convention;
    bool paper_literal_deltas = false;
    std::vector<std::string> formats;
};

vofham::RunConfig build_config(const CommonArgs& args) {
    using vofham::RunConfig;
    RunConfig config;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) throw std::invalid_argument("cannot read config file " + args.config_path);
        nlohmann::ordered_json j;
        in >> j;
        config = RunConfig::from_json(j);
    } else if (args.problem == "2" || args.problem == "problem2") {
        config = RunConfig::problem2_defaults();
    } else if (args.problem == "1" || args.problem == "problem1") {
        config = RunConfig::problem1_defaults();
    } else if (args.problem == "custom") {
        config = RunConfig::problem1_defaults();
        config.problem = vofham::BenchmarkProblem::Custom;
    } else {
        throw std::invalid_argument("unknown problem '" + args.problem +
                                    "' (expected 1, 2 or custom)");
    }
    if (!args.out_dir.empty()) config.output_dir = args.out_dir;
    if (!args.grid_convention.empty()) {
        if (args.grid_convention == "paper") {
            config.grid.convention = vofham::GridConvention::PaperLiteral;
        } else if (args.grid_convention == "full") {
            config.grid.convention = vofham::GridConvention::FullGrid;
        } else {
            throw std::invalid_argument("grid convention must be 'paper' or 'full'");
        }
    }
    if (args.paper_literal_deltas) config.grid.literal_deltas = true;
    if (!args.formats.empty()) {
        config.format_json = false;
        config.format_csv = false;
        for (const auto& f : args.formats) {
            if (f == "json") {
                config.format_json = true;
            } else if (f == "csv") {
                config.format_csv = true;
            } else {
                throw std::invalid_argument("unknown format '" + f + "'");
            }
        }
    }
    config.validate();
    return config;
}

int cmd_table(const CommonArgs& args, std::vector<int> terms, bool terms_given) {
    const vofham::RunConfig config = build_config(args);
    if (!terms_given) {
        terms = config.problem == vofham::BenchmarkProblem::Problem2
                    ? std::vector<int>{2, 3, 4}
                    : std::vector<int>{3, 4, 5};
    }
    const vofham::TableReport report = vofham::run_table(config, terms);
    for (const auto& row : report.rows) {
        std::printf("terms=%d  e_min=%s  hbar_star=%s\n", row.terms,
                    vofham::format_double(row.e_min).c_str(),
                    vofham::format_double(row.hbar_star).c_str());
    }
    for (const auto& note : report.notes) std::printf("note: %s\n", note.c_str());
    for (const auto& path : vofham::write_table_files(report)) {
        std::printf("wrote %s\n", path.c_str());
    }
    return kExitOk;
}

int cmd_curves(const CommonArgs& args, int points, double hbar, bool hbar_set, int terms) {
    vofham::RunConfig config = build_config(args);
    if (hbar_set) config.hbar = hbar;
    if (terms > 0) config.terms = terms;
    const vofham::CurveSet curves = vofham::compute_curves(config, points);
    std::printf("hbar=%s terms=%d residual_points=%zu\n",
                vofham::format_double(curves.hbar_used).c_str(), curves.terms,
                curves.residual_curve.size());
    for (const auto& note : curves.notes) std::printf("note: %s\n", note.c_str());
    for (const auto& path : vofham::write_curve_files(config, curves)) {
        std::printf("wrote %s\n", path.c_str());
    }
    return kExitOk;
}

int cmd_series(const CommonArgs& args, int order, bool print) {
    const vofham::RunConfig config = build_config(args);
    const vofham::SeriesDump dump = vofham::dump_series(config, order);
    if (print) {
        for (const auto& line : dump.lines) std::printf("%s\n", line.c_str());
    }
    for (const auto& note : dump.notes) std::printf("note: %s\n", note.c_str());
    for (const auto& path : vofham::write_series_file(config, dump)) {
        std::printf("wrote %s\n", path.c_str());
    }
    return kExitOk;
}

int cmd_validate_oracle(int nodes) {
    const double alphas[] = {0.3, 0.5, 0.8};
    const double betas[] = {1.0, 2.0};
    std::printf("%-6s %-6s %-8s %-14s %-10s %-14s %-10s\n", "alpha", "beta", "nodes",
                "deriv_relerr", "d_order", "integ_relerr", "i_order");
    bool all_ok = true;
    for (double a : alphas) {
        for (double b : betas) {
            const auto rep = vofham::check_power_law(a, b, 1.0, nodes);
            std::printf("%-6g %-6g %-8d %-14.4e %-10.3g %-14.4e %-10.3g\n", a, b,
                        nodes, rep.derivative_rel_error, rep.derivative_order,
                        rep.integral_rel_error, rep.integral_order);
            all_ok = all_ok && rep.derivative_rel_error < 1e-3 &&
                     rep.integral_rel_error < 1e-3;
        }
    }
    std::printf("%s\n", all_ok ? "all power-law checks within 1e-3" :
                                 "power-law checks exceeded 1e-3");
    return all_ok ? kExitOk : kExitNumericalError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HAM series solver for variable-order fractional diffusion benchmarks"};
    app.require_subcommand(1);

    CommonArgs args;
    std::vector<int> terms;
    int points = 50;
    int order = 4;
    int curve_terms = 0;
    double hbar = 0.0;
    bool print_series = false;
    int oracle_nodes = 4096;

    auto add_common = [&args](CLI::App* cmd) {
        cmd->add_option("--problem", args.problem, "benchmark problem: 1, 2 or custom");
        cmd->add_option("--config", args.config_path, "JSON run configuration file");
        cmd->add_option("--out", args.out_dir, "output directory");
    };

    CLI::App* table = app.add_subcommand("table", "reproduce the benchmark tables");
    add_common(table);
    CLI::Option* terms_opt =
        table->add_option("--terms", terms, "term counts, e.g. 3,4,5")->delimiter(',');
    table->add_option("--grid-convention", args.grid_convention, "paper | full");
    table->add_flag("--paper-literal-deltas", args.paper_literal_deltas,
                    "use the transposed step sizes dx=T/mx, dt=L/mt");
    table->add_option("--formats", args.formats, "output formats: json,csv")->delimiter(',');

    CLI::App* curves = app.add_subcommand("curves", "emit residual/solution curve data");
    add_common(curves);
    CLI::Option* hbar_opt =
        curves->add_option("--hbar", hbar, "fixed hbar (default: optimized)");
    curves->add_option("--points", points, "samples per curve axis");
    curves->add_option("--terms", curve_terms, "partial-sum term count");

    CLI::App* series = app.add_subcommand("series", "generate and dump the series terms");
    add_common(series);
    series->add_option("--order", order, "highest series index M");
    series->add_flag("--print", print_series, "print the terms to stdout");

    CLI::App* oracle = app.add_subcommand("validate-oracle",
                                          "power-law checks of the quadrature oracle");
    oracle->add_option("--nodes", oracle_nodes, "quadrature nodes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (table->parsed()) {
            return cmd_table(args, terms, terms_opt->count() > 0);
        }
        if (curves->parsed()) {
            return cmd_curves(args, points, hbar, hbar_opt->count() > 0, curve_terms);
        }
        if (series->parsed()) return cmd_series(args, order, print_series);
        if (oracle->parsed()) return cmd_validate_oracle(oracle_nodes);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumericalError;
    }
    return kExitConfigError;
}
