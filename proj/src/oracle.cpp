#include "vofham/oracle.hpp"

#include "vofham/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vofham {

namespace {

void check_sample(const SampledFunction& f) {
    if (f.nodes.size() < 2 || f.nodes.size() != f.values.size()) {
        throw std::invalid_argument("SampledFunction: need >= 2 matching nodes/values");
    }
    if (f.nodes.front() != 0.0) {
        throw std::invalid_argument("SampledFunction: nodes must start at 0");
    }
    for (size_t i = 1; i < f.nodes.size(); ++i) {
        if (!(f.nodes[i] > f.nodes[i - 1])) {
            throw std::invalid_argument("SampledFunction: nodes must be strictly increasing");
        }
    }
}

void check_eval_point(const SampledFunction& f, double t) {
    if (!(t > 0.0) || t > f.t_end() * (1.0 + 1e-12)) {
        throw std::domain_error("quadrature: t must lie in (0, t_end]");
    }
}

// Derivative core: 1/Gamma(1-alpha) * sum_i s_i * [(t-a)^(1-alpha)-(t-b)^(1-alpha)]/(1-alpha)
double caputo_value(const SampledFunction& f, double alpha, double t) {
    const double c = 1.0 / (gamma(1.0 - alpha) * (1.0 - alpha));
    double acc = 0.0;
    for (size_t i = 0; i + 1 < f.nodes.size(); ++i) {
        const double a = f.nodes[i];
        if (a >= t) break;
        const double b = std::min(f.nodes[i + 1], t);
        const double slope = (f.values[i + 1] - f.values[i]) / (f.nodes[i + 1] - f.nodes[i]);
        const double ka = std::pow(t - a, 1.0 - alpha);
        const double kb = t - b > 0.0 ? std::pow(t - b, 1.0 - alpha) : 0.0;
        acc += slope * (ka - kb);
    }
    return c * acc;
}

// Integral core: per interval [a,b], with A = t-a, B = t-b and slope s:
// f_a*(A^alpha - B^alpha)/alpha + s*(A*(A^alpha - B^alpha)/alpha
//                                    - (A^(alpha+1) - B^(alpha+1))/(alpha+1))
double integral_value(const SampledFunction& f, double alpha, double t) {
    const double c = 1.0 / gamma(alpha);
    double acc = 0.0;
    for (size_t i = 0; i + 1 < f.nodes.size(); ++i) {
        const double a = f.nodes[i];
        if (a >= t) break;
        const double b = std::min(f.nodes[i + 1], t);
        const double slope = (f.values[i + 1] - f.values[i]) / (f.nodes[i + 1] - f.nodes[i]);
        const double A = t - a;
        const double B = t - b > 0.0 ? t - b : 0.0;
        const double pa = std::pow(A, alpha);
        const double pb = B > 0.0 ? std::pow(B, alpha) : 0.0;
        const double m0 = (pa - pb) / alpha;
        const double m1 = A * m0 - (pa * A - pb * B) / (alpha + 1.0);
        acc += f.values[i] * m0 + slope * m1;
    }
    return c * acc;
}

// Richardson triplet on subsampled grids; +inf when successive refinements
// already agree to rounding.
double empirical_order(const SampledFunction& f, double alpha, double t,
                       double (*core)(const SampledFunction&, double, double)) {
    const size_t n = f.nodes.size();
    if (n < 9) return 0.0;
    const double v1 = core(f, alpha, t);
    const double v2 = core(f.subsample(2), alpha, t);
    const double v4 = core(f.subsample(4), alpha, t);
    const double d12 = std::abs(v2 - v1);
    const double d24 = std::abs(v4 - v2);
    const double scale = std::max({std::abs(v1), std::abs(v2), std::abs(v4), 1e-300});
    if (d12 <= 1e-13 * scale && d24 <= 1e-13 * scale) {
        return std::numeric_limits<double>::infinity();
    }
    if (d12 == 0.0) return std::numeric_limits<double>::infinity();
    return std::log2(d24 / d12);
}

void check_alpha(double alpha, double lo, double hi) {
    if (!(alpha > lo) || !(alpha <= hi)) {
        throw std::domain_error("quadrature: alpha out of range (" +
                                std::to_string(alpha) + ")");
    }
}

}  // namespace

SampledFunction SampledFunction::sample(const std::function<double(double)>& f,
                                        double t_end, int n_nodes) {
    if (n_nodes < 2) throw std::invalid_argument("sample: need >= 2 nodes");
    if (!(t_end > 0.0)) throw std::invalid_argument("sample: t_end must be > 0");
    SampledFunction s;
    s.nodes.resize(static_cast<size_t>(n_nodes));
    s.values.resize(static_cast<size_t>(n_nodes));
    for (int i = 0; i < n_nodes; ++i) {
        const double t = t_end * i / (n_nodes - 1);
        s.nodes[static_cast<size_t>(i)] = t;
        s.values[static_cast<size_t>(i)] = f(t);
    }
    return s;
}

SampledFunction SampledFunction::subsample(int stride) const {
    SampledFunction s;
    for (size_t i = 0; i < nodes.size(); i += static_cast<size_t>(stride)) {
        s.nodes.push_back(nodes[i]);
        s.values.push_back(values[i]);
    }
    if (s.nodes.back() != nodes.back()) {
        s.nodes.push_back(nodes.back());
        s.values.push_back(values.back());
    }
    return s;
}

QuadratureResult caputo_quadrature(const SampledFunction& f, double alpha, double t) {
    check_sample(f);
    check_alpha(alpha, 0.0, 1.0 - 1e-15);  // alpha in (0,1)
    check_eval_point(f, t);
    QuadratureResult r;
    r.value = caputo_value(f, alpha, t);
    r.n_nodes = static_cast<int>(f.nodes.size());
    r.estimated_order = empirical_order(f, alpha, t, &caputo_value);
    return r;
}

QuadratureResult integral_quadrature(const SampledFunction& f, double alpha, double t) {
    check_sample(f);
    check_alpha(alpha, 0.0, 1.0);  // alpha in (0,1]
    check_eval_point(f, t);
    QuadratureResult r;
    r.value = integral_value(f, alpha, t);
    r.n_nodes = static_cast<int>(f.nodes.size());
    r.estimated_order = empirical_order(f, alpha, t, &integral_value);
    return r;
}

PowerLawReport check_power_law(double alpha, double beta, double t, int n_nodes) {
    if (beta < 0.0) throw std::domain_error("check_power_law: beta must be >= 0");
    PowerLawReport rep;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.t = t;
    rep.n_nodes = n_nodes;
    auto power = [beta](double tau) { return beta == 0.0 ? 1.0 : std::pow(tau, beta); };
    const SampledFunction f = SampledFunction::sample(power, t, n_nodes);

    const QuadratureResult d = caputo_quadrature(f, alpha, t);
    rep.derivative_value = d.value;
    rep.derivative_exact =
        beta == 0.0 ? 0.0
                    : gamma(1.0 + beta) / gamma(beta - alpha + 1.0) *
                          std::pow(t, beta - alpha);
    rep.derivative_order = d.estimated_order;

    const QuadratureResult j = integral_quadrature(f, alpha, t);
    rep.integral_value = j.value;
    rep.integral_exact =
        gamma(1.0 + beta) / gamma(beta + alpha + 1.0) * std::pow(t, beta + alpha);
    rep.integral_order = j.estimated_order;

    auto rel = [](double v, double e) {
        return std::abs(v - e) / (std::abs(e) > 0.0 ? std::abs(e) : 1.0);
    };
    rep.derivative_rel_error = rel(rep.derivative_value, rep.derivative_exact);
    rep.integral_rel_error = rel(rep.integral_value, rep.integral_exact);
    return rep;
}

}  // namespace vofham
