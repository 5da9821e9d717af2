#include "vofham/ham.hpp"

#include <stdexcept>
#include <string>

namespace vofham {

ProblemSpec ProblemSpec::linear_diffusion(double K, double L, double T,
                                          const AlphaField& field) {
    ProblemSpec p{field};
    p.diffusion = K;
    p.L = L;
    p.T = T;
    Term u0;
    u0.hbar = HbarPoly::constant(1.0);
    u0.spatial.poly = {1.0};
    u0.spatial.sin_mode = 1;
    u0.spatial.L = L;
    p.initial_guess = Expression::from_term(std::move(u0));
    return p;
}

ProblemSpec ProblemSpec::nonlinear_reaction_diffusion() {
    ProblemSpec p{AlphaField::product_xt(1.0, 1.0)};
    p.grad_squared = 1.0;
    p.u_times_uxx = 1.0;
    p.linear = 1.0;
    p.quadratic = 1.0;
    p.L = 1.0;
    p.T = 1.0;
    Term u0;
    u0.hbar = HbarPoly::constant(1.0);
    u0.spatial.poly = {0.0, 1.0};  // x
    u0.spatial.sin_mode = 0;
    u0.spatial.L = 1.0;
    p.initial_guess = Expression::from_term(std::move(u0));
    return p;
}

Expression deformation_rhs(const SeriesSolution& series, int m) {
    if (m < 1 || m > static_cast<int>(series.terms.size())) {
        throw std::invalid_argument("deformation_rhs: need u_0..u_{m-1}, got m=" +
                                    std::to_string(m));
    }
    const ProblemSpec& p = series.problem;
    const auto& u = series.terms;
    Expression r = caputo_d(u[static_cast<size_t>(m - 1)]);
    if (p.diffusion != 0.0) {
        r = add(r, scale(d_space2(u[static_cast<size_t>(m - 1)]), -p.diffusion));
    }
    if (p.grad_squared != 0.0) {
        for (int i = 0; i <= m - 1; ++i) {
            const int j = m - 1 - i;
            r = add(r, scale(multiply(d_space(u[static_cast<size_t>(i)]),
                                      d_space(u[static_cast<size_t>(j)])),
                             -p.grad_squared));
        }
    }
    if (p.u_times_uxx != 0.0) {
        for (int i = 0; i <= m - 1; ++i) {
            const int j = m - 1 - i;
            r = add(r, scale(multiply(u[static_cast<size_t>(i)],
                                      d_space2(u[static_cast<size_t>(j)])),
                             -p.u_times_uxx));
        }
    }
    if (p.linear != 0.0) {
        r = add(r, scale(u[static_cast<size_t>(m - 1)], -p.linear));
    }
    if (p.quadratic != 0.0) {
        for (int i = 0; i <= m - 1; ++i) {
            const int j = m - 1 - i;
            r = add(r, scale(multiply(u[static_cast<size_t>(i)],
                                      u[static_cast<size_t>(j)]),
                             p.quadratic));
        }
    }
    return r;
}

Expression next_term(const SeriesSolution& series, int m) {
    Expression correction = scale(riemann_j(deformation_rhs(series, m)), HbarPoly::hbar());
    if (m <= 1) return correction;
    return add(series.terms[static_cast<size_t>(m - 1)], correction);
}

SeriesSolution generate_series(const ProblemSpec& problem, int order) {
    if (order < 1) throw std::invalid_argument("generate_series: order must be >= 1");
    SeriesSolution s{problem, {problem.initial_guess}};
    for (int m = 1; m <= order; ++m) {
        s.terms.push_back(next_term(s, m));
    }
    return s;
}

Expression partial_sum(const SeriesSolution& series, int n_terms) {
    if (n_terms < 1 || n_terms > static_cast<int>(series.terms.size())) {
        throw std::out_of_range("partial_sum: need 1 <= N <= order+1, got N=" +
                                std::to_string(n_terms));
    }
    Expression sum;
    for (int n = 0; n < n_terms; ++n) {
        sum = add(sum, series.terms[static_cast<size_t>(n)]);
    }
    return sum;
}

}  // namespace vofham
