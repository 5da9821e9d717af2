#pragma once

namespace vofham {

/// Euler gamma function for positive real arguments.
///
/// Lanczos approximation with fixed coefficients; relative error below
/// 1e-12 on (0.5, 12], the range every series coefficient Gamma(1 + k*alpha)
/// falls into. Arguments that are nonpositive, non-finite, or would overflow
/// a double (x > 171.624) throw std::domain_error.
double gamma(double x);

/// Natural logarithm of gamma(x), x > 0. Used to evaluate long products of
/// gamma ratios as sums before a single exponentiation.
double log_gamma(double x);

}  // namespace vofham
