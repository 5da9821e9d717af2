#include "vofham/term_algebra.hpp"

#include "vofham/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace vofham {

// ---------------------------------------------------------------------------
// GammaSignature

GammaSignature::GammaSignature(std::vector<int> num, std::vector<int> den)
    : num_(std::move(num)), den_(std::move(den)) {
    for (int n : num_) {
        if (n < 0) throw std::invalid_argument("GammaSignature: negative multiplier");
    }
    for (int d : den_) {
        if (d < 0) throw std::invalid_argument("GammaSignature: negative multiplier");
    }
    std::erase(num_, 0);
    std::erase(den_, 0);
    cancel();
}

GammaSignature& GammaSignature::push_num(int n) {
    if (n < 0) throw std::invalid_argument("GammaSignature: negative multiplier");
    if (n == 0) return *this;  // Gamma(1) = 1
    num_.push_back(n);
    cancel();
    return *this;
}

GammaSignature& GammaSignature::push_den(int d) {
    if (d < 0) throw std::invalid_argument("GammaSignature: negative multiplier");
    if (d == 0) return *this;
    den_.push_back(d);
    cancel();
    return *this;
}

GammaSignature& GammaSignature::operator*=(const GammaSignature& rhs) {
    num_.insert(num_.end(), rhs.num_.begin(), rhs.num_.end());
    den_.insert(den_.end(), rhs.den_.begin(), rhs.den_.end());
    cancel();
    return *this;
}

void GammaSignature::cancel() {
    std::sort(num_.begin(), num_.end());
    std::sort(den_.begin(), den_.end());
    std::vector<int> n_out, d_out;
    std::set_difference(num_.begin(), num_.end(), den_.begin(), den_.end(),
                        std::back_inserter(n_out));
    std::set_difference(den_.begin(), den_.end(), num_.begin(), num_.end(),
                        std::back_inserter(d_out));
    num_ = std::move(n_out);
    den_ = std::move(d_out);
}

double GammaSignature::value(double alpha) const {
    double lg = 0.0;
    for (int n : num_) lg += log_gamma(1.0 + n * alpha);
    for (int d : den_) lg -= log_gamma(1.0 + d * alpha);
    return std::exp(lg);
}

// ---------------------------------------------------------------------------
// Canonicalization

namespace {

struct TermKey {
    int k;
    GammaSignature gsig;
    int sin_mode;
    int x_power;
    auto operator<=>(const TermKey&) const = default;
};

Term monomial_term(HbarPoly hbar, const TermKey& key, double L) {
    Term t;
    t.hbar = std::move(hbar);
    t.spatial.poly.assign(static_cast<size_t>(key.x_power) + 1, 0.0);
    t.spatial.poly.back() = 1.0;
    t.spatial.sin_mode = key.sin_mode;
    t.spatial.L = L;
    t.gsig = key.gsig;
    t.time_power = key.k;
    return t;
}

void check_same_length(double a, double b) {
    if (a != b) {
        throw StructuralError("expressions built over different spatial lengths (" +
                              std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

double time_factor(double t, int k, double alpha) {
    if (k == 0) return 1.0;
    if (t <= 0.0) return alpha == 0.0 ? 1.0 : 0.0;
    return std::pow(t, k * alpha);
}

// sin(pi * r) with exact zeros at integer r (range reduction before the
// libm call), so boundary nodes x = 0 and x = L evaluate to exactly 0.
double sin_pi(double r) {
    double m = std::fmod(r, 2.0);
    if (m < 0.0) m += 2.0;
    double sign = 1.0;
    if (m >= 1.0) {
        sign = -1.0;
        m -= 1.0;
    }
    if (m > 0.5) m = 1.0 - m;
    return sign * std::sin(std::numbers::pi * m);
}

HbarPoly evaluate_with_alpha(const Expression& e, double x, double t, double alpha) {
    HbarPoly out;
    for (const Term& term : e.terms()) {
        const int p = term.x_power();
        double w = p > 0 ? std::pow(x, p) : 1.0;
        if (term.spatial.sin_mode == 1) {
            w *= sin_pi(x / term.spatial.L);
        }
        w *= term.gsig.value(alpha);
        w *= time_factor(t, term.time_power, alpha);
        out += term.hbar * w;
    }
    return out;
}

}  // namespace

Expression canonicalize(std::vector<Term> raw) {
    std::map<TermKey, HbarPoly> merged;
    double L = 0.0;
    bool have_length = false;
    for (Term& t : raw) {
        if (t.spatial.sin_mode != 0 && t.spatial.sin_mode != 1) {
            throw UnsupportedBasisError("sin_mode must be 0 or 1");
        }
        if (t.time_power < 0) {
            throw std::invalid_argument("negative time power");
        }
        if (!have_length) {
            L = t.spatial.L;
            have_length = true;
        } else {
            check_same_length(t.spatial.L, L);
        }
        if (t.hbar.is_zero()) continue;
        double scale = 0.0;
        for (double c : t.spatial.poly) scale = std::max(scale, std::abs(c));
        if (scale == 0.0) continue;
        for (size_t p = 0; p < t.spatial.poly.size(); ++p) {
            const double c = t.spatial.poly[p];
            if (std::abs(c) < 1e-14 * scale) continue;
            TermKey key{t.time_power, t.gsig, t.spatial.sin_mode, static_cast<int>(p)};
            merged[key] += t.hbar * c;
        }
    }
    Expression result;
    result.terms_.reserve(merged.size());
    for (auto& [key, hbar] : merged) {
        if (hbar.is_zero()) continue;
        result.terms_.push_back(monomial_term(std::move(hbar), key, L));
    }
    return result;
}

Expression Expression::from_term(Term t) {
    std::vector<Term> v;
    v.push_back(std::move(t));
    return canonicalize(std::move(v));
}

Expression Expression::from_terms(std::vector<Term> ts) {
    return canonicalize(std::move(ts));
}

double Expression::length() const {
    return terms_.empty() ? 1.0 : terms_.front().spatial.L;
}

// ---------------------------------------------------------------------------
// Operations

Expression add(const Expression& a, const Expression& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    check_same_length(a.length(), b.length());
    std::vector<Term> all(a.terms());
    all.insert(all.end(), b.terms().begin(), b.terms().end());
    return canonicalize(std::move(all));
}

Expression scale(const Expression& e, const HbarPoly& p) {
    std::vector<Term> out(e.terms());
    for (Term& t : out) t.hbar *= p;
    return canonicalize(std::move(out));
}

Expression scale(const Expression& e, double s) {
    return scale(e, HbarPoly::constant(s));
}

Expression multiply(const Expression& a, const Expression& b) {
    if (a.empty() || b.empty()) return Expression();
    check_same_length(a.length(), b.length());
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const Term& ta : a.terms()) {
        for (const Term& tb : b.terms()) {
            if (ta.spatial.sin_mode + tb.spatial.sin_mode >= 2) {
                throw UnsupportedBasisError(
                    "sin*sin product leaves the supported basis");
            }
            Term t;
            t.hbar = ta.hbar * tb.hbar;
            const int p = ta.x_power() + tb.x_power();
            t.spatial.poly.assign(static_cast<size_t>(p) + 1, 0.0);
            t.spatial.poly.back() = 1.0;
            t.spatial.sin_mode = ta.spatial.sin_mode + tb.spatial.sin_mode;
            t.spatial.L = ta.spatial.L;
            t.gsig = ta.gsig;
            t.gsig *= tb.gsig;
            t.time_power = ta.time_power + tb.time_power;
            out.push_back(std::move(t));
        }
    }
    return canonicalize(std::move(out));
}

Expression d_space(const Expression& e) {
    std::vector<Term> out;
    for (const Term& t : e.terms()) {
        if (t.spatial.sin_mode != 0) {
            throw UnsupportedBasisError(
                "d/dx of a sin-carrying term leaves the supported basis");
        }
        const int p = t.x_power();
        if (p == 0) continue;
        Term d = t;
        d.hbar = t.hbar * static_cast<double>(p);
        d.spatial.poly.assign(static_cast<size_t>(p), 0.0);
        d.spatial.poly.back() = 1.0;
        out.push_back(std::move(d));
    }
    return canonicalize(std::move(out));
}

Expression d_space2(const Expression& e) {
    std::vector<Term> out;
    for (const Term& t : e.terms()) {
        if (t.spatial.sin_mode == 1) {
            if (t.x_power() != 0) {
                throw UnsupportedBasisError(
                    "d2/dx2 of poly*sin with non-constant poly leaves the "
                    "supported basis");
            }
            Term d = t;
            const double w = std::numbers::pi / t.spatial.L;
            d.hbar = t.hbar * (-w * w);
            out.push_back(std::move(d));
            continue;
        }
        const int p = t.x_power();
        if (p <= 1) continue;
        Term d = t;
        d.hbar = t.hbar * static_cast<double>(p * (p - 1));
        d.spatial.poly.assign(static_cast<size_t>(p) - 1, 0.0);
        d.spatial.poly.back() = 1.0;
        out.push_back(std::move(d));
    }
    return canonicalize(std::move(out));
}

Expression caputo_d(const Expression& e) {
    std::vector<Term> out;
    for (const Term& t : e.terms()) {
        const int k = t.time_power;
        if (k == 0) continue;  // Caputo derivative of a time-constant is 0
        Term d = t;
        d.time_power = k - 1;
        d.gsig.push_num(k);
        d.gsig.push_den(k - 1);
        out.push_back(std::move(d));
    }
    return canonicalize(std::move(out));
}

Expression riemann_j(const Expression& e) {
    std::vector<Term> out;
    for (const Term& t : e.terms()) {
        const int k = t.time_power;
        Term j = t;
        j.time_power = k + 1;
        j.gsig.push_num(k);
        j.gsig.push_den(k + 1);
        out.push_back(std::move(j));
    }
    return canonicalize(std::move(out));
}

HbarPoly evaluate(const Expression& e, const AlphaField& field, double x, double t) {
    return evaluate_with_alpha(e, x, t, field(x, t));
}

HbarPoly evaluate_extended(const Expression& e, const AlphaField& field, double x,
                           double t) {
    return evaluate_with_alpha(e, x, t, field.eval_extended(x, t));
}

// ---------------------------------------------------------------------------
// Pretty printer

namespace {

std::string format_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

bool near_int(double v, double* out) {
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) {
        *out = r;
        return true;
    }
    return false;
}

std::string coeff_str(double c) {
    double r;
    if (near_int(c, &r)) return format_num(r);
    return format_num(c);
}

// "2x^3 - 3x^2 - 7x + 3" style, descending powers.
std::string poly_string(const std::vector<double>& coeffs, const std::string& var) {
    std::string s;
    for (int p = static_cast<int>(coeffs.size()) - 1; p >= 0; --p) {
        const double c = coeffs[static_cast<size_t>(p)];
        if (c == 0.0) continue;
        const double mag = std::abs(c);
        if (s.empty()) {
            s += c < 0 ? "-" : "";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        const bool unit = std::abs(mag - 1.0) < 1e-12;
        if (!unit || p == 0) s += coeff_str(mag);
        if (p >= 1) {
            s += var;
            if (p >= 2) s += "^" + std::to_string(p);
        }
    }
    return s.empty() ? "0" : s;
}

std::optional<HbarPoly> deflate_at_minus_one(const HbarPoly& q) {
    if (q.degree() < 1) return std::nullopt;
    double scale = 0.0;
    for (double c : q.coeffs()) scale = std::max(scale, std::abs(c));
    if (std::abs(q(-1.0)) > 1e-9 * scale) return std::nullopt;
    const auto& c = q.coeffs();
    std::vector<double> s(c.size() - 1, 0.0);
    double carry = c.back();
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
        s[static_cast<size_t>(i)] = carry;
        carry = c[static_cast<size_t>(i)] - carry;
    }
    return HbarPoly(std::move(s));
}

// Factored hbar string: "c h^a(h+1)^b" or "(...) h^a(h+1)^b".
std::string hbar_string(const HbarPoly& p) {
    if (p.is_zero()) return "0";
    const int a = p.min_power();
    std::vector<double> shifted(p.coeffs().begin() + a, p.coeffs().end());
    HbarPoly q(shifted);
    int b = 0;
    while (true) {
        auto d = deflate_at_minus_one(q);
        if (!d) break;
        q = std::move(*d);
        ++b;
    }
    std::string s;
    std::string factors;
    if (a == 1) factors += "h";
    if (a >= 2) factors += "h^" + std::to_string(a);
    if (b == 1) factors += "(h+1)";
    if (b >= 2) factors += "(h+1)^" + std::to_string(b);
    if (q.degree() == 0) {
        const double c = q.coeff(0);
        if (factors.empty()) return coeff_str(c);
        if (std::abs(c - 1.0) < 1e-12) return factors;
        if (std::abs(c + 1.0) < 1e-12) return "-" + factors;
        return coeff_str(c) + " " + factors;
    }
    s = "(" + poly_string(q.coeffs(), "h") + ")";
    if (!factors.empty()) s += " " + factors;
    return s;
}

std::string gamma_time_string(const GammaSignature& g, int k) {
    auto gamma_factor = [](int n, int count) {
        std::string f = "G(1+" + (n == 1 ? std::string() : std::to_string(n)) + "a)";
        if (count > 1) f += "^" + std::to_string(count);
        return f;
    };
    auto run_length = [](const std::vector<int>& v, std::string* out,
                         const auto& fmt) {
        size_t i = 0;
        while (i < v.size()) {
            size_t j = i;
            while (j < v.size() && v[j] == v[i]) ++j;
            if (!out->empty()) *out += " ";
            *out += fmt(v[i], static_cast<int>(j - i));
            i = j;
        }
    };
    std::string num;
    run_length(g.num(), &num, gamma_factor);
    if (k >= 1) {
        if (!num.empty()) num += " ";
        num += "t^" + (k == 1 ? std::string("a") : std::to_string(k) + "a");
    }
    std::string den;
    run_length(g.den(), &den, gamma_factor);
    if (den.empty()) return num;
    if (num.empty()) num = "1";
    const bool single = g.den().size() == 1;
    return num + "/" + (single ? den : "(" + den + ")");
}

std::vector<std::string> grouped_strings(const Expression& e) {
    std::vector<std::string> out;
    const auto& terms = e.terms();
    size_t i = 0;
    while (i < terms.size()) {
        size_t j = i;
        while (j < terms.size() && terms[j].time_power == terms[i].time_power &&
               terms[j].gsig == terms[i].gsig &&
               terms[j].spatial.sin_mode == terms[i].spatial.sin_mode) {
            ++j;
        }
        // Try to regroup [i, j) as C(h) * P(x).
        const HbarPoly& pivot = terms[j - 1].hbar;
        int pivot_idx = 0;
        double pivot_max = 0.0;
        for (int q = 0; q <= pivot.degree(); ++q) {
            if (std::abs(pivot.coeff(q)) > pivot_max) {
                pivot_max = std::abs(pivot.coeff(q));
                pivot_idx = q;
            }
        }
        bool proportional = true;
        std::vector<double> ratios(static_cast<size_t>(terms[j - 1].x_power()) + 1, 0.0);
        for (size_t m = i; m < j; ++m) {
            const double r =
                terms[m].hbar.coeff(pivot_idx) / pivot.coeff(pivot_idx);
            if (!terms[m].hbar.almost_equal(pivot * r, 1e-9)) {
                proportional = false;
                break;
            }
            ratios[static_cast<size_t>(terms[m].x_power())] = r;
        }
        int lambda = 0;
        std::vector<double> int_poly;
        if (proportional) {
            for (int cand = 1; cand <= 960 && lambda == 0; ++cand) {
                bool ok = true;
                std::vector<double> ip(ratios.size(), 0.0);
                for (size_t p = 0; p < ratios.size(); ++p) {
                    double r;
                    if (!near_int(cand * ratios[p], &r)) {
                        ok = false;
                        break;
                    }
                    ip[p] = r;
                }
                if (ok) {
                    lambda = cand;
                    int_poly = std::move(ip);
                }
            }
        }
        auto tail_pieces = [&](std::string* s) {
            if (terms[i].spatial.sin_mode == 1) {
                if (!s->empty()) *s += " * ";
                *s += "sin(pi x/L)";
            }
            const std::string gt = gamma_time_string(terms[i].gsig, terms[i].time_power);
            if (!gt.empty()) {
                if (!s->empty()) *s += " * ";
                *s += gt;
            }
        };
        if (proportional && lambda > 0) {
            const HbarPoly content = pivot * (1.0 / lambda);
            std::string s = hbar_string(content);
            if (s == "1") s.clear();
            const bool unit_poly = int_poly.size() == 1 && int_poly[0] == 1.0;
            if (!unit_poly) {
                if (!s.empty()) s += " * ";
                s += "(" + poly_string(int_poly, "x") + ")";
            }
            tail_pieces(&s);
            if (s.empty()) s = "1";
            out.push_back(std::move(s));
        } else {
            for (size_t m = i; m < j; ++m) {
                std::string s = hbar_string(terms[m].hbar);
                if (s == "1") s.clear();
                const int p = terms[m].x_power();
                if (p >= 1) {
                    if (!s.empty()) s += " * ";
                    s += "x";
                    if (p >= 2) s += "^" + std::to_string(p);
                }
                tail_pieces(&s);
                if (s.empty()) s = "1";
                out.push_back(std::move(s));
            }
        }
        i = j;
    }
    return out;
}

}  // namespace

std::string to_string(const Expression& e) {
    if (e.empty()) return "0";
    const auto parts = grouped_strings(e);
    std::string s;
    for (const auto& p : parts) {
        if (!s.empty()) s += " + ";
        s += p;
    }
    return s;
}

std::vector<std::string> term_strings(const Expression& e) {
    return grouped_strings(e);
}

std::string to_string(const HbarPoly& p) { return hbar_string(p); }

std::string to_string(const GammaSignature& g, int time_power) {
    const std::string s = gamma_time_string(g, time_power);
    return s.empty() ? "1" : s;
}

}  // namespace vofham
