#pragma once

#include "vofham/residual.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace vofham {

enum class BenchmarkProblem { Problem1, Problem2, Custom };

struct AlphaSpec {
    AlphaKind kind = AlphaKind::AffineXT;
    double a = 0.8;
    double b = 0.2;
};

struct GridSpec {
    int mx = 34;
    int mt = 34;
    GridConvention convention = GridConvention::PaperLiteral;
    /// Transpose the step sizes (dx = T/mx, dt = L/mt); spatial nodes may
    /// then leave [0, L] and are evaluated by formula extension.
    bool literal_deltas = false;
};

/// Fully-resolved run description; serializable, round-trippable.
struct RunConfig {
    BenchmarkProblem problem = BenchmarkProblem::Problem1;
    double K = 0.01;
    double L = 1.0;
    double T = 10.0;
    AlphaSpec alpha;
    int terms = 5;
    GridSpec grid;
    std::optional<double> hbar;
    std::string output_dir = "out";
    bool format_json = true;
    bool format_csv = true;

    static RunConfig problem1_defaults();
    static RunConfig problem2_defaults();

    AlphaField make_field() const;
    ProblemSpec make_problem() const;
    ResidualConfig make_residual_config() const;

    nlohmann::ordered_json to_json() const;
    static RunConfig from_json(const nlohmann::ordered_json& j);
    void validate() const;  // throws std::invalid_argument on bad fields
};

struct ReportRow {
    int terms = 0;
    double e_min = 0.0;
    double hbar_star = 0.0;
};

struct TableReport {
    RunConfig config;
    std::vector<ReportRow> rows;
    /// Alternative term counting ("N corrections" = u_0..u_N); emitted for
    /// problem 1 where the reference table's counting is ambiguous.
    std::vector<ReportRow> rows_corrections;
    std::vector<std::string> notes;

    nlohmann::ordered_json to_json() const;
    std::string to_csv() const;
};

/// Generate the series once, then for each requested term count assemble
/// E(h), minimize it over [-2, 0] and emit one report row. Deviations from
/// the embedded reference benchmark values are recorded as notes.
TableReport run_table(const RunConfig& config, const std::vector<int>& term_counts);

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
};
struct SurfacePoint {
    double x = 0.0;
    double t = 0.0;
    double u = 0.0;
};

struct CurveSet {
    std::vector<CurvePoint> residual_curve;  // (hbar, E)
    std::vector<CurvePoint> solution_curve;  // (t, u(L/2, t)); problem-1 style
    std::vector<SurfacePoint> surface;       // (x, t, u); problem-2 style
    double hbar_used = 0.0;
    int terms = 0;
    std::vector<std::string> notes;
};

/// Residual curve over the scan window plus the solution curve/surface of the
/// partial sum at hbar (config override or freshly optimized).
CurveSet compute_curves(const RunConfig& config, int points);

struct SeriesDump {
    std::vector<std::string> lines;  // one line per (m, printed term)
    std::vector<std::string> notes;
};

SeriesDump dump_series(const RunConfig& config, int order);

/// Reference benchmark rows this tool reproduces; empty optional when the
/// term count has no published value.
std::optional<ReportRow> reference_row(BenchmarkProblem problem, int terms);

/// Fixed 10-significant-digit formatting used in all emitted files.
std::string format_double(double v);
/// Round to the 10-significant-digit grid before JSON serialization.
double round_sig10(double v);

/// Write report/curve/series artifacts under config.output_dir (created if
/// missing; VOFHAM_OUT overrides when set). Returns the written paths.
std::vector<std::string> write_table_files(const TableReport& report);
std::vector<std::string> write_curve_files(const RunConfig& config, const CurveSet& curves);
std::vector<std::string> write_series_file(const RunConfig& config, const SeriesDump& dump);

/// output_dir after the VOFHAM_OUT override.
std::string resolve_output_dir(const RunConfig& config);

}  // namespace vofham
