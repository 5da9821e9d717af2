#pragma once

#include "vofham/ham.hpp"

namespace vofham {

/// Which space-time nodes the averaged residual sums over. Both share the
/// normalizer 1/((M_x+1)(M_t+1)).
enum class GridConvention {
    PaperLiteral,  // j = 1..M_x, k = 1..M_t (M_x*M_t addends)
    FullGrid,      // j = 0..M_x, k = 0..M_t (addend count matches normalizer)
};

struct ResidualConfig {
    int mx = 34;
    int mt = 34;
    double x_max = 1.0;  // spatial step is x_max / mx
    double t_max = 10.0;
    GridConvention convention = GridConvention::PaperLiteral;
    /// Evaluate by formula extension when nodes fall outside the field domain
    /// (sensitivity analysis with transposed steps).
    bool allow_out_of_domain = false;
};

/// The averaged squared residual E(h) as an exactly-known polynomial in h.
struct ResidualPoly {
    HbarPoly poly;
    ResidualConfig config;
};

struct OptimResult {
    double hbar_star = 0.0;
    double e_min = 0.0;
    double stationarity = 0.0;         // |E'(hbar_star)|
    bool curvature_nonnegative = true;  // E''(hbar_star) >= 0
    double window_lo = 0.0;
    double window_hi = 0.0;
    bool no_dependence = false;  // E is constant in h
    bool at_window_edge = false;
};

/// N[phi_N] as a symbolic Expression, with N the problem's five-coefficient
/// operator. Quadratic parts are full products of the partial sum (not
/// homotopy convolutions).
Expression residual_expression(const SeriesSolution& series, int n_terms);

/// Assemble E(h): evaluate the residual expression at every grid node to a
/// polynomial in h, square, sum, normalize by (mx+1)(mt+1).
ResidualPoly averaged_residual(const SeriesSolution& series, int n_terms,
                               const ResidualConfig& config, const AlphaField& field);

/// Tensor-product Gauss-Legendre approximation of the exact square residual
/// integral over [0,x_max]x[0,t_max] at fixed h.
double exact_residual(const SeriesSolution& series, int n_terms,
                      const AlphaField& field, double hbar, int quad_nodes);

/// Global minimizer of E over [lo, hi]: dense scan (step <= 1e-3) for
/// bracketing, then root refinement on E'.
OptimResult optimize_hbar(const ResidualPoly& rp, double lo = -2.0, double hi = 0.0);

/// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace vofham
