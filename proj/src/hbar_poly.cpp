#include "vofham/hbar_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vofham {

namespace {
constexpr double kDropTol = 1e-14;
}

HbarPoly::HbarPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

HbarPoly HbarPoly::monomial(double c, int power) {
    if (power < 0) throw std::invalid_argument("HbarPoly::monomial: negative power");
    std::vector<double> v(static_cast<size_t>(power) + 1, 0.0);
    v.back() = c;
    return HbarPoly(std::move(v));
}

void HbarPoly::normalize() {
    double scale = 0.0;
    for (double c : coeffs_) scale = std::max(scale, std::abs(c));
    if (scale > 0.0) {
        for (double& c : coeffs_) {
            if (std::abs(c) < kDropTol * scale) c = 0.0;
        }
    }
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

int HbarPoly::min_power() const {
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0.0) return static_cast<int>(i);
    }
    return -1;
}

double HbarPoly::coeff(int power) const {
    if (power < 0 || power >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<size_t>(power)];
}

double HbarPoly::operator()(double h) const {
    double v = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * h + *it;
    return v;
}

HbarPoly HbarPoly::derivative() const {
    if (coeffs_.size() <= 1) return HbarPoly();
    std::vector<double> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) {
        d[i - 1] = static_cast<double>(i) * coeffs_[i];
    }
    return HbarPoly(std::move(d));
}

HbarPoly& HbarPoly::operator+=(const HbarPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
    for (size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    normalize();
    return *this;
}

HbarPoly& HbarPoly::operator*=(const HbarPoly& rhs) {
    if (coeffs_.empty() || rhs.coeffs_.empty()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<double> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    coeffs_ = std::move(out);
    normalize();
    return *this;
}

HbarPoly& HbarPoly::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    normalize();
    return *this;
}

bool HbarPoly::almost_equal(const HbarPoly& other, double rel_tol) const {
    double scale = 0.0;
    for (double c : coeffs_) scale = std::max(scale, std::abs(c));
    for (double c : other.coeffs_) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return true;
    const size_t n = std::max(coeffs_.size(), other.coeffs_.size());
    for (size_t i = 0; i < n; ++i) {
        const double a = i < coeffs_.size() ? coeffs_[i] : 0.0;
        const double b = i < other.coeffs_.size() ? other.coeffs_[i] : 0.0;
        if (std::abs(a - b) > rel_tol * scale) return false;
    }
    return true;
}

}  // namespace vofham
