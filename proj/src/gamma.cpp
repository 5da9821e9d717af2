#include "vofham/gamma.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vofham {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kMaxGammaArg = 171.624;  // gamma overflows double beyond this

double lanczos_series(double x) {
    double s = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        s += kLanczos[i] / (x - 1.0 + i);
    }
    return s;
}

void require_positive_finite(double x, const char* fn) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw std::domain_error(std::string(fn) +
                                ": argument must be a positive finite real, got " +
                                std::to_string(x));
    }
}

}  // namespace

double gamma(double x) {
    require_positive_finite(x, "gamma");
    if (x > kMaxGammaArg) {
        throw std::domain_error("gamma: argument " + std::to_string(x) +
                                " overflows double precision");
    }
    if (x < 0.5) {
        // Reflection; sin(pi*x) > 0 on (0, 0.5).
        return std::numbers::pi /
               (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
    }
    const double t = x + kLanczosG - 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x - 0.5) *
           std::exp(-t) * lanczos_series(x);
}

double log_gamma(double x) {
    require_positive_finite(x, "log_gamma");
    if (x < 0.5) {
        return std::log(std::numbers::pi) -
               std::log(std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    }
    const double t = x + kLanczosG - 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x - 0.5) * std::log(t) -
           t + std::log(lanczos_series(x));
}

}  // namespace vofham
