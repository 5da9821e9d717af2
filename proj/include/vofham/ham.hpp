#pragma once

#include "vofham/alpha_field.hpp"
#include "vofham/term_algebra.hpp"

#include <vector>

namespace vofham {

/// A variable-order diffusion problem of the five-coefficient family
///
///   N[u] = D^alpha u - diffusion*u_xx - grad_squared*(u_x)^2
///          - u_times_uxx*u*u_xx - linear*u + quadratic*u^2
///
/// on [0,L] x [0,T] with homogeneous Dirichlet boundary values and
/// initial condition u(x,0) = initial_guess.
struct ProblemSpec {
    AlphaField field;
    double diffusion = 0.0;
    double grad_squared = 0.0;
    double u_times_uxx = 0.0;
    double linear = 0.0;
    double quadratic = 0.0;
    Expression initial_guess;
    double L = 1.0;
    double T = 1.0;

    /// u_t^alpha = K u_xx with u(x,0) = sin(pi x / L).
    static ProblemSpec linear_diffusion(double K, double L, double T,
                                        const AlphaField& field);

    /// u_t^alpha = (u_x)^2 + u u_xx + u - u^2 on [0,1]^2 with u(x,0) = x and
    /// alpha = x*t.
    static ProblemSpec nonlinear_reaction_diffusion();
};

/// The generated series u_0 .. u_M. All integration constants are zero under
/// the adopted initial-condition convention.
struct SeriesSolution {
    ProblemSpec problem;
    std::vector<Expression> terms;

    int order() const { return static_cast<int>(terms.size()) - 1; }
};

/// Right-hand side R_m of the m-th order deformation equation, built from
/// u_0..u_{m-1} with Cauchy-product convolutions over the homotopy index for
/// the quadratic parts.
Expression deformation_rhs(const SeriesSolution& series, int m);

/// u_m = chi_m * u_{m-1} + h * J^alpha R_m  (chi_1 = 0, chi_m = 1 for m > 1;
/// the integration constant is zero).
Expression next_term(const SeriesSolution& series, int m);

/// Generate u_0 .. u_M by iterating next_term.
SeriesSolution generate_series(const ProblemSpec& problem, int order);

/// Partial sum phi_N = u_0 + ... + u_{N-1}; requires 1 <= N <= order + 1.
Expression partial_sum(const SeriesSolution& series, int n_terms);

}  // namespace vofham
