#include "vofham/residual.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace vofham {

Expression residual_expression(const SeriesSolution& series, int n_terms) {
    const ProblemSpec& p = series.problem;
    const Expression phi = partial_sum(series, n_terms);
    Expression r = caputo_d(phi);
    if (p.diffusion != 0.0) r = add(r, scale(d_space2(phi), -p.diffusion));
    if (p.grad_squared != 0.0) {
        const Expression dphi = d_space(phi);
        r = add(r, scale(multiply(dphi, dphi), -p.grad_squared));
    }
    if (p.u_times_uxx != 0.0) {
        r = add(r, scale(multiply(phi, d_space2(phi)), -p.u_times_uxx));
    }
    if (p.linear != 0.0) r = add(r, scale(phi, -p.linear));
    if (p.quadratic != 0.0) r = add(r, scale(multiply(phi, phi), p.quadratic));
    return r;
}

ResidualPoly averaged_residual(const SeriesSolution& series, int n_terms,
                               const ResidualConfig& config, const AlphaField& field) {
    if (config.mx < 1 || config.mt < 1) {
        throw std::invalid_argument("averaged_residual: grid sizes must be >= 1");
    }
    const Expression r = residual_expression(series, n_terms);
    const double dx = config.x_max / config.mx;
    const double dt = config.t_max / config.mt;
    const int j0 = config.convention == GridConvention::PaperLiteral ? 1 : 0;
    const int k0 = j0;
    HbarPoly sum;
    for (int j = j0; j <= config.mx; ++j) {
        for (int k = k0; k <= config.mt; ++k) {
            const double x = j * dx;
            const double t = k * dt;
            const HbarPoly v = config.allow_out_of_domain
                                   ? evaluate_extended(r, field, x, t)
                                   : evaluate(r, field, x, t);
            sum += v * v;
        }
    }
    const double norm = static_cast<double>(config.mx + 1) * (config.mt + 1);
    return ResidualPoly{sum * (1.0 / norm), config};
}

double exact_residual(const SeriesSolution& series, int n_terms,
                      const AlphaField& field, double hbar, int quad_nodes) {
    if (quad_nodes < 2) {
        throw std::invalid_argument("exact_residual: need at least 2 quadrature nodes");
    }
    const Expression r = residual_expression(series, n_terms);
    const double L = series.problem.L;
    const double T = series.problem.T;
    std::vector<double> xs, wx, ts, wt;
    gauss_legendre(quad_nodes, 0.0, L, xs, wx);
    gauss_legendre(quad_nodes, 0.0, T, ts, wt);
    double acc = 0.0;
    for (int i = 0; i < quad_nodes; ++i) {
        for (int j = 0; j < quad_nodes; ++j) {
            const double v = evaluate(r, field, xs[static_cast<size_t>(i)],
                                      ts[static_cast<size_t>(j)])(hbar);
            acc += wx[static_cast<size_t>(i)] * wt[static_cast<size_t>(j)] * v * v;
        }
    }
    return acc;
}

OptimResult optimize_hbar(const ResidualPoly& rp, double lo, double hi) {
    if (!(lo < hi)) {
        throw std::invalid_argument("optimize_hbar: window must satisfy lo < hi");
    }
    OptimResult res;
    res.window_lo = lo;
    res.window_hi = hi;
    const HbarPoly& E = rp.poly;
    if (E.degree() <= 0) {
        res.no_dependence = true;
        res.hbar_star = std::numeric_limits<double>::quiet_NaN();
        res.e_min = E.is_zero() ? 0.0 : E.coeff(0);
        return res;
    }
    const HbarPoly dE = E.derivative();
    const HbarPoly d2E = dE.derivative();

    // Dense scan for bracketing.
    const int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) / 1e-3)));
    double best_h = lo;
    double best_e = E(lo);
    int best_i = 0;
    for (int i = 1; i <= steps; ++i) {
        const double h = lo + (hi - lo) * i / steps;
        const double e = E(h);
        if (e < best_e) {
            best_e = e;
            best_h = h;
            best_i = i;
        }
    }

    double h_star = best_h;
    if (best_i == 0 || best_i == steps) {
        res.at_window_edge = true;
    } else {
        double a = lo + (hi - lo) * (best_i - 1) / steps;
        double b = lo + (hi - lo) * (best_i + 1) / steps;
        if (dE(a) < 0.0 && dE(b) > 0.0) {
            for (int it = 0; it < 200 && b - a > 1e-16 * std::max(1.0, std::abs(a)); ++it) {
                const double mid = 0.5 * (a + b);
                (dE(mid) < 0.0 ? a : b) = mid;
            }
            h_star = 0.5 * (a + b);
        }
        // Newton polish on E'.
        for (int it = 0; it < 50; ++it) {
            const double g = dE(h_star);
            const double c = d2E(h_star);
            if (g == 0.0 || c == 0.0) break;
            const double step = g / c;
            const double next = h_star - step;
            if (next < lo || next > hi || !std::isfinite(next)) break;
            h_star = next;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(h_star))) break;
        }
        if (E(h_star) > best_e) h_star = best_h;  // keep the scan minimum
    }

    res.hbar_star = h_star;
    res.e_min = E(h_star);
    res.stationarity = std::abs(dE(h_star));
    res.curvature_nonnegative = d2E(h_star) >= 0.0;
    return res;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    nodes.assign(static_cast<size_t>(n), 0.0);
    weights.assign(static_cast<size_t>(n), 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration on P_n from the Chebyshev initial guess.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p0 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        const double x_lo = 0.5 * (b - a) * (-z) + 0.5 * (b + a);
        const double x_hi = 0.5 * (b - a) * z + 0.5 * (b + a);
        const double w = (b - a) / ((1.0 - z * z) * pp * pp);
        nodes[static_cast<size_t>(i)] = x_lo;
        nodes[static_cast<size_t>(n - 1 - i)] = x_hi;
        weights[static_cast<size_t>(i)] = w;
        weights[static_cast<size_t>(n - 1 - i)] = w;
    }
}

}  // namespace vofham
