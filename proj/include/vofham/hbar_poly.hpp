#pragma once

#include <vector>

namespace vofham {

/// Dense polynomial in the convergence-control parameter h; index = power.
///
/// Canonical form: coefficients that are negligible relative to the largest
/// one are zeroed (tolerance 1e-14) and trailing zeros are stripped, so the
/// zero polynomial is the empty coefficient list.
class HbarPoly {
public:
    HbarPoly() = default;
    explicit HbarPoly(std::vector<double> coeffs);

    static HbarPoly constant(double c) { return HbarPoly({c}); }
    static HbarPoly hbar() { return HbarPoly({0.0, 1.0}); }
    static HbarPoly monomial(double c, int power);

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the polynomial; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Lowest power carrying a nonzero coefficient; -1 for the zero polynomial.
    int min_power() const;
    double coeff(int power) const;
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Horner evaluation at h.
    double operator()(double h) const;
    HbarPoly derivative() const;

    HbarPoly& operator+=(const HbarPoly& rhs);
    HbarPoly& operator*=(const HbarPoly& rhs);
    HbarPoly& operator*=(double s);

    friend HbarPoly operator+(HbarPoly a, const HbarPoly& b) { a += b; return a; }
    friend HbarPoly operator*(HbarPoly a, const HbarPoly& b) { a *= b; return a; }
    friend HbarPoly operator*(HbarPoly a, double s) { a *= s; return a; }
    friend HbarPoly operator*(double s, HbarPoly a) { a *= s; return a; }
    friend bool operator==(const HbarPoly& a, const HbarPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }

    /// Coefficient-wise comparison at relative tolerance (scale = largest
    /// coefficient magnitude of either operand).
    bool almost_equal(const HbarPoly& other, double rel_tol) const;

private:
    void normalize();
    std::vector<double> coeffs_;
};

inline double evaluate_at_hbar(const HbarPoly& p, double h) { return p(h); }

}  // namespace vofham
