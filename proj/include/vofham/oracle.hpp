#pragma once

#include <functional>
#include <vector>

namespace vofham {

/// Piecewise-linear sample of a function on [0, t_end]; nodes are strictly
/// increasing with nodes[0] == 0 and at least 2 nodes.
struct SampledFunction {
    std::vector<double> nodes;
    std::vector<double> values;

    static SampledFunction sample(const std::function<double(double)>& f,
                                  double t_end, int n_nodes);
    /// Keep every stride-th node (plus the last); a coarser approximant of
    /// the same data for empirical-order estimates.
    SampledFunction subsample(int stride) const;
    double t_end() const { return nodes.back(); }
};

struct QuadratureResult {
    double value = 0.0;
    int n_nodes = 0;
    /// Empirical convergence order from grid halving; +infinity when the
    /// scheme is exact on the data, 0 when the grid is too small to estimate.
    double estimated_order = 0.0;
};

/// Caputo derivative of fixed order alpha in (0,1) at time t <= t_end by
/// product integration: piecewise-constant f' against the kernel
/// (t - tau)^(-alpha) integrated exactly per interval. Exact for
/// piecewise-linear f.
QuadratureResult caputo_quadrature(const SampledFunction& f, double alpha, double t);

/// Riemann-Liouville integral of fixed order alpha in (0,1] at time t by
/// product integration of piecewise-linear f against (t - tau)^(alpha-1).
QuadratureResult integral_quadrature(const SampledFunction& f, double alpha, double t);

struct PowerLawReport {
    double alpha = 0.0;
    double beta = 0.0;
    double t = 0.0;
    int n_nodes = 0;
    double derivative_value = 0.0;
    double derivative_exact = 0.0;
    double derivative_rel_error = 0.0;
    double derivative_order = 0.0;
    double integral_value = 0.0;
    double integral_exact = 0.0;
    double integral_rel_error = 0.0;
    double integral_order = 0.0;
};

/// Compare both quadratures on f(tau) = tau^beta against the closed forms
/// Gamma(1+beta)/Gamma(beta-alpha+1) * t^(beta-alpha) and
/// Gamma(1+beta)/Gamma(beta+alpha+1) * t^(beta+alpha).
PowerLawReport check_power_law(double alpha, double beta, double t, int n_nodes);

}  // namespace vofham
