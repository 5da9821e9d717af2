#include "vofham/alpha_field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vofham {

namespace {

void require_extent(double L, double T) {
    if (!(L > 0.0) || !(T > 0.0) || !std::isfinite(L) || !std::isfinite(T)) {
        throw std::domain_error("AlphaField: domain extents must satisfy L > 0, T > 0");
    }
}

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

}  // namespace

AlphaField::AlphaField(AlphaKind kind, double a, double b, double L, double T)
    : kind_(kind), a_(a), b_(b), L_(L), T_(T) {}

AlphaField AlphaField::constant(double a, double L, double T) {
    require_extent(L, T);
    return AlphaField(AlphaKind::Constant, a, 0.0, L, T);
}

AlphaField AlphaField::affine_xt(double a, double b, double L, double T) {
    require_extent(L, T);
    return AlphaField(AlphaKind::AffineXT, a, b, L, T);
}

AlphaField AlphaField::product_xt(double L, double T) {
    require_extent(L, T);
    return AlphaField(AlphaKind::ProductXT, 0.0, 0.0, L, T);
}

double AlphaField::eval_extended(double x, double t) const {
    switch (kind_) {
        case AlphaKind::Constant: return a_;
        case AlphaKind::AffineXT: return a_ + b_ * x * t / (L_ * T_);
        case AlphaKind::ProductXT: return x * t;
    }
    return a_;  // unreachable
}

double AlphaField::operator()(double x, double t) const {
    const double ex = 1e-9 * std::max(1.0, L_);
    const double et = 1e-9 * std::max(1.0, T_);
    if (!(x >= -ex && x <= L_ + ex && t >= -et && t <= T_ + et)) {
        throw std::domain_error("AlphaField: point (" + std::to_string(x) + ", " +
                                std::to_string(t) + ") outside [0," +
                                std::to_string(L_) + "]x[0," + std::to_string(T_) + "]");
    }
    return eval_extended(x, t);
}

RangeReport AlphaField::validate_range() const {
    RangeReport report;
    switch (kind_) {
        case AlphaKind::Constant: {
            report.valid = a_ > 0.0 && a_ < 1.0;
            if (near(a_, 0.0)) report.flags.push_back({0.0, "entire domain"});
            if (near(a_, 1.0)) report.flags.push_back({1.0, "entire domain"});
            break;
        }
        case AlphaKind::AffineXT: {
            // x*t/(L*T) spans (0,1) on the open interior, {0} on the x=0/t=0
            // axes and {1} at the corner (L,T).
            const double lo = std::min(a_, a_ + b_);
            const double hi = std::max(a_, a_ + b_);
            report.valid = lo >= 0.0 && hi <= 1.0 && hi - lo < 1.0;
            if (b_ == 0.0) report.valid = a_ > 0.0 && a_ < 1.0;
            if (near(a_, 0.0)) report.flags.push_back({0.0, "axes x=0 and t=0"});
            if (near(a_, 1.0)) report.flags.push_back({1.0, "axes x=0 and t=0"});
            if (!near(b_, 0.0)) {
                if (near(a_ + b_, 0.0)) report.flags.push_back({0.0, "corner (L,T)"});
                if (near(a_ + b_, 1.0)) report.flags.push_back({1.0, "corner (L,T)"});
            }
            break;
        }
        case AlphaKind::ProductXT: {
            // Interior range is the open interval (0, L*T).
            report.valid = L_ * T_ <= 1.0 + 1e-12;
            report.flags.push_back({0.0, "axes x=0 and t=0"});
            if (near(L_ * T_, 1.0)) report.flags.push_back({1.0, "corner (L,T)"});
            break;
        }
    }
    return report;
}

}  // namespace vofham
