#pragma once

#include "vofham/alpha_field.hpp"
#include "vofham/errors.hpp"
#include "vofham/hbar_poly.hpp"

#include <compare>
#include <string>
#include <vector>

namespace vofham {

/// Formal product prod Gamma(1 + n_i*alpha) / prod Gamma(1 + d_j*alpha)
/// attached to a series term. Multisets are kept sorted and common factors
/// of numerator and denominator are cancelled.
class GammaSignature {
public:
    GammaSignature() = default;
    GammaSignature(std::vector<int> num, std::vector<int> den);

    /// Multiply by Gamma(1 + n*alpha). n == 0 contributes Gamma(1) = 1 and is
    /// dropped; negative n is rejected.
    GammaSignature& push_num(int n);
    GammaSignature& push_den(int d);
    GammaSignature& operator*=(const GammaSignature& rhs);

    /// Numeric value at a fixed alpha, via log-gamma sums.
    double value(double alpha) const;

    const std::vector<int>& num() const { return num_; }
    const std::vector<int>& den() const { return den_; }
    bool empty() const { return num_.empty() && den_.empty(); }

    friend bool operator==(const GammaSignature&, const GammaSignature&) = default;
    friend auto operator<=>(const GammaSignature&, const GammaSignature&) = default;

private:
    void cancel();
    std::vector<int> num_;
    std::vector<int> den_;
};

/// P(x) * sin(pi x / L)^s with s in {0, 1}. `poly` is dense in x, index =
/// power, trailing zeros stripped on canonicalization.
struct SpatialFactor {
    std::vector<double> poly{1.0};
    int sin_mode = 0;
    double L = 1.0;
};

/// One series atom: hbar-polynomial x spatial factor x gamma signature
/// x t^{k*alpha(x,t)}. Terms whose hbar or spatial polynomial is zero are
/// the zero term and disappear from expressions.
struct Term {
    HbarPoly hbar;
    SpatialFactor spatial;
    GammaSignature gsig;
    int time_power = 0;  // k

    /// Degree of the spatial polynomial of a canonical (monomial) term.
    int x_power() const { return static_cast<int>(spatial.poly.size()) - 1; }
};

/// A canonical sum of Terms.
///
/// Canonical form: every spatial polynomial is a monic monomial x^p (scalar
/// content folded into the hbar polynomial), no two terms share the key
/// (k, gsig, sin_mode, p), zero terms are dropped, and terms are ordered by
/// that key. Expressions are immutable values.
class Expression {
public:
    Expression() = default;

    static Expression from_term(Term t);
    static Expression from_terms(std::vector<Term> ts);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    /// Spatial length shared by all terms; meaningful only when non-empty.
    double length() const;

private:
    friend Expression canonicalize(std::vector<Term> raw);
    std::vector<Term> terms_;
};

/// Merge, sort and strip a raw term list into canonical form.
Expression canonicalize(std::vector<Term> raw);

/// Pointwise sum. Operands must share the spatial length L.
Expression add(const Expression& a, const Expression& b);

/// Multiply every term's hbar polynomial by p.
Expression scale(const Expression& e, const HbarPoly& p);
Expression scale(const Expression& e, double s);

/// Distributed product. Throws UnsupportedBasisError when any term pair
/// would produce sin_mode >= 2.
Expression multiply(const Expression& a, const Expression& b);

/// d/dx under the frozen-exponent convention (alpha's x-dependence is not
/// differentiated). Defined only for sin-free expressions.
Expression d_space(const Expression& e);

/// d2/dx2, frozen-exponent convention. sin terms must carry a constant
/// polynomial and pick up a factor -(pi/L)^2.
Expression d_space2(const Expression& e);

/// Variable-order Caputo derivative in time on the power basis:
/// t^{k*alpha} -> Gamma(1+k*alpha)/Gamma(1+(k-1)*alpha) * t^{(k-1)*alpha};
/// time-constant terms (k = 0) are annihilated.
Expression caputo_d(const Expression& e);

/// Variable-order Riemann-Liouville integral in time on the power basis:
/// t^{k*alpha} -> Gamma(1+k*alpha)/Gamma(1+(k+1)*alpha) * t^{(k+1)*alpha}.
Expression riemann_j(const Expression& e);

/// Collapse the expression at a point to a polynomial in hbar.
///
/// The time factor at t = 0 follows the limit convention: 1 when k = 0;
/// for k >= 1 it is 0 when alpha(x,0) > 0 and 1 when alpha(x,0) = 0.
HbarPoly evaluate(const Expression& e, const AlphaField& field, double x, double t);

/// As `evaluate` but without the field's domain check (sensitivity grids).
HbarPoly evaluate_extended(const Expression& e, const AlphaField& field, double x,
                           double t);

/// Debug pretty-printer. Adjacent monomials sharing (k, gsig, sin) are
/// regrouped into `hbar-factor * (integer polynomial) * ...` where possible,
/// e.g. "h(h+1) * (x^2 - x - 1) * t^a/G(1+a)".
std::string to_string(const Expression& e);

/// The printed term groups of `to_string`, one string per group.
std::vector<std::string> term_strings(const Expression& e);
std::string to_string(const HbarPoly& p);
std::string to_string(const GammaSignature& g, int time_power);

}  // namespace vofham
