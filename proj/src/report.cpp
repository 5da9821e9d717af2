#include "vofham/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace vofham {

namespace {

std::string problem_name(BenchmarkProblem p) {
    switch (p) {
        case BenchmarkProblem::Problem1: return "problem1";
        case BenchmarkProblem::Problem2: return "problem2";
        case BenchmarkProblem::Custom: return "custom";
    }
    return "custom";
}

BenchmarkProblem problem_from_name(const std::string& s) {
    if (s == "problem1" || s == "1") return BenchmarkProblem::Problem1;
    if (s == "problem2" || s == "2") return BenchmarkProblem::Problem2;
    if (s == "custom") return BenchmarkProblem::Custom;
    throw std::invalid_argument("unknown problem '" + s + "'");
}

std::string kind_name(AlphaKind k) {
    switch (k) {
        case AlphaKind::Constant: return "constant";
        case AlphaKind::AffineXT: return "affine";
        case AlphaKind::ProductXT: return "product";
    }
    return "affine";
}

AlphaKind kind_from_name(const std::string& s) {
    if (s == "constant") return AlphaKind::Constant;
    if (s == "affine") return AlphaKind::AffineXT;
    if (s == "product") return AlphaKind::ProductXT;
    throw std::invalid_argument("unknown alpha kind '" + s + "'");
}

std::string convention_name(GridConvention c) {
    return c == GridConvention::PaperLiteral ? "paper" : "full";
}

GridConvention convention_from_name(const std::string& s) {
    if (s == "paper" || s == "paper-literal") return GridConvention::PaperLiteral;
    if (s == "full" || s == "full-grid") return GridConvention::FullGrid;
    throw std::invalid_argument("unknown grid convention '" + s + "'");
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << body;
}

std::string csv_curve(const std::vector<CurvePoint>& pts, const char* header) {
    std::string s = header;
    s += "\n";
    for (const auto& p : pts) {
        s += format_double(p.x) + "," + format_double(p.y) + "\n";
    }
    return s;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

double round_sig10(double v) {
    return std::strtod(format_double(v).c_str(), nullptr);
}

// ---------------------------------------------------------------------------
// RunConfig

RunConfig RunConfig::problem1_defaults() {
    RunConfig c;
    c.problem = BenchmarkProblem::Problem1;
    c.K = 0.01;
    c.L = 1.0;
    c.T = 10.0;
    c.alpha = AlphaSpec{AlphaKind::AffineXT, 0.8, 0.2};
    c.terms = 5;
    c.grid = GridSpec{34, 34, GridConvention::PaperLiteral, false};
    return c;
}

RunConfig RunConfig::problem2_defaults() {
    RunConfig c;
    c.problem = BenchmarkProblem::Problem2;
    c.K = 0.0;
    c.L = 1.0;
    c.T = 1.0;
    c.alpha = AlphaSpec{AlphaKind::ProductXT, 0.0, 0.0};
    c.terms = 4;
    c.grid = GridSpec{10, 10, GridConvention::PaperLiteral, false};
    return c;
}

void RunConfig::validate() const {
    if (!(L > 0.0) || !(T > 0.0)) throw std::invalid_argument("L and T must be > 0");
    if (terms < 1) throw std::invalid_argument("terms must be >= 1");
    if (grid.mx < 1 || grid.mt < 1) throw std::invalid_argument("grid sizes must be >= 1");
    if (!format_json && !format_csv) {
        throw std::invalid_argument("at least one of json/csv formats is required");
    }
    if (hbar && !std::isfinite(*hbar)) throw std::invalid_argument("hbar must be finite");
    const RangeReport range = make_field().validate_range();
    if (!range.valid) {
        throw std::invalid_argument(
            "alpha field leaves (0,1) on the domain interior; adjust a/b/L/T");
    }
}

AlphaField RunConfig::make_field() const {
    switch (alpha.kind) {
        case AlphaKind::Constant: return AlphaField::constant(alpha.a, L, T);
        case AlphaKind::AffineXT: return AlphaField::affine_xt(alpha.a, alpha.b, L, T);
        case AlphaKind::ProductXT: return AlphaField::product_xt(L, T);
    }
    return AlphaField::affine_xt(alpha.a, alpha.b, L, T);
}

ProblemSpec RunConfig::make_problem() const {
    switch (problem) {
        case BenchmarkProblem::Problem2: {
            ProblemSpec p = ProblemSpec::nonlinear_reaction_diffusion();
            if (L != 1.0 || T != 1.0 || alpha.kind != AlphaKind::ProductXT) {
                ProblemSpec q{make_field()};
                q.grad_squared = q.u_times_uxx = q.linear = q.quadratic = 1.0;
                q.L = L;
                q.T = T;
                Term u0;
                u0.hbar = HbarPoly::constant(1.0);
                u0.spatial.poly = {0.0, 1.0};
                u0.spatial.L = L;
                q.initial_guess = Expression::from_term(std::move(u0));
                return q;
            }
            return p;
        }
        case BenchmarkProblem::Problem1:
        case BenchmarkProblem::Custom:
            return ProblemSpec::linear_diffusion(K, L, T, make_field());
    }
    return ProblemSpec::linear_diffusion(K, L, T, make_field());
}

ResidualConfig RunConfig::make_residual_config() const {
    ResidualConfig rc;
    rc.mx = grid.mx;
    rc.mt = grid.mt;
    rc.convention = grid.convention;
    if (grid.literal_deltas) {
        rc.x_max = T;  // transposed steps
        rc.t_max = L;
        rc.allow_out_of_domain = true;
    } else {
        rc.x_max = L;
        rc.t_max = T;
    }
    return rc;
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["problem"] = problem_name(problem);
    j["K"] = round_sig10(K);
    j["L"] = round_sig10(L);
    j["T"] = round_sig10(T);
    nlohmann::ordered_json a;
    a["kind"] = kind_name(alpha.kind);
    if (alpha.kind != AlphaKind::ProductXT) {
        a["a"] = round_sig10(alpha.a);
        if (alpha.kind == AlphaKind::AffineXT) a["b"] = round_sig10(alpha.b);
    }
    j["alpha"] = a;
    j["terms"] = terms;
    j["grid"] = {{"mx", grid.mx},
                 {"mt", grid.mt},
                 {"convention", convention_name(grid.convention)},
                 {"literal_deltas", grid.literal_deltas}};
    if (hbar) {
        j["hbar"] = round_sig10(*hbar);
    } else {
        j["hbar"] = nullptr;
    }
    j["output_dir"] = output_dir;
    nlohmann::ordered_json fmts = nlohmann::ordered_json::array();
    if (format_json) fmts.push_back("json");
    if (format_csv) fmts.push_back("csv");
    j["formats"] = fmts;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::ordered_json& j) {
    const std::string name = j.value("problem", std::string("problem1"));
    RunConfig c = problem_from_name(name) == BenchmarkProblem::Problem2
                      ? problem2_defaults()
                      : problem1_defaults();
    c.problem = problem_from_name(name);
    if (j.contains("K")) c.K = j.at("K").get<double>();
    if (j.contains("L")) c.L = j.at("L").get<double>();
    if (j.contains("T")) c.T = j.at("T").get<double>();
    if (j.contains("alpha")) {
        const auto& a = j.at("alpha");
        c.alpha.kind = kind_from_name(a.value("kind", kind_name(c.alpha.kind)));
        c.alpha.a = a.value("a", c.alpha.a);
        c.alpha.b = a.value("b", c.alpha.b);
    }
    if (j.contains("terms")) c.terms = j.at("terms").get<int>();
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        c.grid.mx = g.value("mx", c.grid.mx);
        c.grid.mt = g.value("mt", c.grid.mt);
        c.grid.convention =
            convention_from_name(g.value("convention", convention_name(c.grid.convention)));
        c.grid.literal_deltas = g.value("literal_deltas", c.grid.literal_deltas);
    }
    if (j.contains("hbar") && !j.at("hbar").is_null()) {
        c.hbar = j.at("hbar").get<double>();
    }
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("formats")) {
        c.format_json = false;
        c.format_csv = false;
        for (const auto& f : j.at("formats")) {
            if (f.get<std::string>() == "json") c.format_json = true;
            if (f.get<std::string>() == "csv") c.format_csv = true;
        }
    }
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------
// Reference benchmark values

std::optional<ReportRow> reference_row(BenchmarkProblem problem, int terms) {
    if (problem == BenchmarkProblem::Problem1) {
        switch (terms) {
            case 3: return ReportRow{3, 2.13959e-9, -0.995985};
            case 4: return ReportRow{4, 9.33408e-13, -0.975296};
            case 5: return ReportRow{5, 2.1842e-16, -0.975296};
            default: return std::nullopt;
        }
    }
    if (problem == BenchmarkProblem::Problem2) {
        switch (terms) {
            case 2: return ReportRow{2, 0.289179, -0.257313};
            case 3: return ReportRow{3, 0.027088, -0.176075};
            case 4: return ReportRow{4, 0.00560894, -0.134256};
            default: return std::nullopt;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Table

namespace {

ReportRow make_row(const SeriesSolution& series, int n_terms,
                   const ResidualConfig& rc, const AlphaField& field) {
    const ResidualPoly rp = averaged_residual(series, n_terms, rc, field);
    const OptimResult opt = optimize_hbar(rp);
    return ReportRow{n_terms, opt.e_min, opt.hbar_star};
}

void append_reference_notes(const RunConfig& config, const std::vector<ReportRow>& rows,
                            std::vector<std::string>* notes) {
    const double e_factor =
        config.problem == BenchmarkProblem::Problem1 ? 10.0 : 3.0;
    for (const auto& row : rows) {
        const auto ref = reference_row(config.problem, row.terms);
        if (!ref) continue;
        if (std::abs(row.hbar_star - ref->hbar_star) > 0.02) {
            notes->push_back("terms=" + std::to_string(row.terms) + ": hbar_star " +
                             format_double(row.hbar_star) +
                             " deviates from reference " +
                             format_double(ref->hbar_star) + " by more than 0.02");
        }
        const double ratio = row.e_min / ref->e_min;
        if (!(ratio > 1.0 / e_factor && ratio < e_factor)) {
            notes->push_back("terms=" + std::to_string(row.terms) + ": e_min " +
                             format_double(row.e_min) + " outside factor " +
                             format_double(e_factor) + " of reference " +
                             format_double(ref->e_min));
        }
    }
}

}  // namespace

TableReport run_table(const RunConfig& config, const std::vector<int>& term_counts) {
    config.validate();
    TableReport report;
    report.config = config;
    if (term_counts.empty()) return report;

    int max_terms = 1;
    for (int n : term_counts) {
        if (n < 1) throw std::invalid_argument("term counts must be >= 1");
        max_terms = std::max(max_terms, n);
    }
    const bool dual_counting = config.problem == BenchmarkProblem::Problem1;
    const ProblemSpec problem = config.make_problem();
    const AlphaField field = config.make_field();
    const ResidualConfig rc = config.make_residual_config();
    // Order max_terms covers phi_N for N <= max_terms + 1 (dual counting).
    const SeriesSolution series = generate_series(problem, max_terms);

    for (int n : term_counts) {
        report.rows.push_back(make_row(series, n, rc, field));
        if (dual_counting) {
            report.rows_corrections.push_back(make_row(series, n + 1, rc, field));
        }
    }
    append_reference_notes(config, report.rows, &report.notes);
    if (dual_counting) {
        report.notes.push_back(
            "rows count terms of phi_N = u_0+...+u_{N-1}; rows_corrections count "
            "N corrections u_0..u_N for the ambiguous reference counting");
    }
    if (config.grid.literal_deltas) {
        report.notes.push_back(
            "literal_deltas: steps transposed (dx=T/mx, dt=L/mt); nodes outside "
            "[0,L] evaluated by formula extension");
    }
    return report;
}

nlohmann::ordered_json TableReport::to_json() const {
    nlohmann::ordered_json j;
    j["problem"] = problem_name(config.problem);
    auto rows_json = [](const std::vector<ReportRow>& rs) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rs) {
            arr.push_back({{"terms", r.terms},
                           {"e_min", round_sig10(r.e_min)},
                           {"hbar_star", round_sig10(r.hbar_star)}});
        }
        return arr;
    };
    j["rows"] = rows_json(rows);
    if (!rows_corrections.empty()) j["rows_corrections"] = rows_json(rows_corrections);
    j["grid_convention"] = convention_name(config.grid.convention);
    j["notes"] = notes;
    return j;
}

std::string TableReport::to_csv() const {
    std::string s = "terms,e_min,hbar_star\n";
    for (const auto& r : rows) {
        s += std::to_string(r.terms) + "," + format_double(r.e_min) + "," +
             format_double(r.hbar_star) + "\n";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Curves

CurveSet compute_curves(const RunConfig& config, int points) {
    config.validate();
    if (points < 2) throw std::invalid_argument("curves: need at least 2 points");
    CurveSet out;
    out.terms = config.terms;
    const ProblemSpec problem = config.make_problem();
    const AlphaField field = config.make_field();
    const SeriesSolution series = generate_series(problem, std::max(1, config.terms - 1));
    const ResidualPoly rp =
        averaged_residual(series, config.terms, config.make_residual_config(), field);

    double h = 0.0;
    if (config.hbar) {
        h = *config.hbar;
        out.notes.push_back("hbar supplied by configuration");
    } else {
        const OptimResult opt = optimize_hbar(rp);
        h = opt.hbar_star;
        out.notes.push_back("hbar optimized over [" + format_double(opt.window_lo) +
                            ", " + format_double(opt.window_hi) + "]");
    }
    out.hbar_used = h;

    const double lo = -2.0, hi = 0.0;
    out.residual_curve.reserve(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * i / (points - 1);
        out.residual_curve.push_back({x, rp.poly(x)});
    }

    const Expression phi = partial_sum(series, config.terms);
    if (config.problem == BenchmarkProblem::Problem2) {
        for (int i = 0; i < points; ++i) {
            for (int j = 0; j < points; ++j) {
                const double x = config.L * i / (points - 1);
                const double t = config.T * j / (points - 1);
                out.surface.push_back({x, t, evaluate(phi, field, x, t)(h)});
            }
        }
    } else {
        const double x_mid = config.L / 2.0;
        for (int i = 0; i < points; ++i) {
            const double t = config.T * i / (points - 1);
            out.solution_curve.push_back({t, evaluate(phi, field, x_mid, t)(h)});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Series dump

SeriesDump dump_series(const RunConfig& config, int order) {
    config.validate();
    if (order < 1) throw std::invalid_argument("series: order must be >= 1");
    SeriesDump dump;
    const SeriesSolution series = generate_series(config.make_problem(), order);
    for (int m = 0; m <= order; ++m) {
        const auto groups = term_strings(series.terms[static_cast<size_t>(m)]);
        if (groups.empty()) {
            dump.lines.push_back("u_" + std::to_string(m) + ": 0");
            continue;
        }
        for (const auto& piece : groups) {
            dump.lines.push_back("u_" + std::to_string(m) + ": " + piece);
        }
    }
    if (config.problem == BenchmarkProblem::Problem1 && order >= 4) {
        dump.notes.push_back(
            "u_4: the t^4a addend carries h^4, as the recursion produces; the "
            "reference series listing prints h^3 for this addend");
    }
    return dump;
}

// ---------------------------------------------------------------------------
// File emission

std::string resolve_output_dir(const RunConfig& config) {
    if (const char* env = std::getenv("VOFHAM_OUT"); env && *env) return env;
    return config.output_dir;
}

namespace {

std::filesystem::path prepare_dir(const RunConfig& config) {
    const std::filesystem::path dir = resolve_output_dir(config);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

std::vector<std::string> write_table_files(const TableReport& report) {
    const auto dir = prepare_dir(report.config);
    std::vector<std::string> written;
    if (report.config.format_json) {
        const auto path = (dir / "report.json").string();
        write_text_file(path, report.to_json().dump(2) + "\n");
        written.push_back(path);
    }
    if (report.config.format_csv) {
        const auto path = (dir / "report.csv").string();
        write_text_file(path, report.to_csv());
        written.push_back(path);
    }
    const auto cfg_path = (dir / "config.json").string();
    write_text_file(cfg_path, report.config.to_json().dump(2) + "\n");
    written.push_back(cfg_path);
    return written;
}

std::vector<std::string> write_curve_files(const RunConfig& config, const CurveSet& curves) {
    const auto dir = prepare_dir(config);
    std::vector<std::string> written;
    {
        const auto path = (dir / "residual_curve.csv").string();
        write_text_file(path, csv_curve(curves.residual_curve, "hbar,E"));
        written.push_back(path);
    }
    if (!curves.solution_curve.empty()) {
        const auto path = (dir / "solution_curve.csv").string();
        write_text_file(path, csv_curve(curves.solution_curve, "t,u"));
        written.push_back(path);
    }
    if (!curves.surface.empty()) {
        std::string body = "x,t,u\n";
        for (const auto& p : curves.surface) {
            body += format_double(p.x) + "," + format_double(p.t) + "," +
                    format_double(p.u) + "\n";
        }
        const auto path = (dir / "surface.csv").string();
        write_text_file(path, body);
        written.push_back(path);
    }
    const auto cfg_path = (dir / "config.json").string();
    write_text_file(cfg_path, config.to_json().dump(2) + "\n");
    written.push_back(cfg_path);
    return written;
}

std::vector<std::string> write_series_file(const RunConfig& config, const SeriesDump& dump) {
    const auto dir = prepare_dir(config);
    std::string body;
    for (const auto& line : dump.lines) body += line + "\n";
    for (const auto& note : dump.notes) body += "note: " + note + "\n";
    const auto path = (dir / "series.txt").string();
    write_text_file(path, body);
    return {path};
}

}  // namespace vofham
