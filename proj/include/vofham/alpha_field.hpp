#pragma once

#include <string>
#include <vector>

namespace vofham {

enum class AlphaKind {
    Constant,   // alpha(x,t) = a
    AffineXT,   // alpha(x,t) = a + b*x*t/(L*T)
    ProductXT,  // alpha(x,t) = x*t
};

/// A point or region of the closed domain boundary where alpha touches
/// one of the degenerate values 0 or 1.
struct BoundaryFlag {
    double alpha = 0.0;
    std::string region;
};

struct RangeReport {
    bool valid = false;  // 0 < alpha < 1 everywhere on the open interior
    std::vector<BoundaryFlag> flags;
};

/// The variable fractional order alpha(x,t) over [0,L] x [0,T].
///
/// Closed set of three shapes; immutable after construction.
class AlphaField {
public:
    static AlphaField constant(double a, double L, double T);
    static AlphaField affine_xt(double a, double b, double L, double T);
    static AlphaField product_xt(double L, double T);

    /// Evaluate alpha at (x, t); throws std::domain_error outside [0,L]x[0,T].
    double operator()(double x, double t) const;

    /// Evaluate by formula extension without the domain check. Used only for
    /// sensitivity grids that deliberately step outside the domain.
    double eval_extended(double x, double t) const;

    /// Checks 0 < alpha < 1 on the open interior and flags closed-boundary
    /// points where alpha attains 0 or 1.
    RangeReport validate_range() const;

    AlphaKind kind() const { return kind_; }
    double offset() const { return a_; }
    double slope() const { return b_; }
    double length() const { return L_; }
    double horizon() const { return T_; }

private:
    AlphaField(AlphaKind kind, double a, double b, double L, double T);

    AlphaKind kind_;
    double a_;
    double b_;
    double L_;
    double T_;
};

inline double eval_alpha(const AlphaField& field, double x, double t) {
    return field(x, t);
}

}  // namespace vofham
