#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "golden_builders.hpp"
#include "vofham/gamma.hpp"
#include "vofham/term_algebra.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace vofham;
using golden::expressions_match;
using golden::make_term;

namespace {

const AlphaField kAffine = AlphaField::affine_xt(0.8, 0.2, 1.0, 10.0);
const AlphaField kProduct = AlphaField::product_xt(1.0, 1.0);

// phi_k: t^{k a} / G(1 + k a), optionally times sin.
Term phi_term(double c, int k, int sin_mode) {
    return make_term(HbarPoly::constant(c), {1.0}, sin_mode, 1.0,
                     GammaSignature({}, {k}), k);
}

struct RandomExprGen {
    std::mt19937 rng;
    explicit RandomExprGen(unsigned seed) : rng(seed) {}

    HbarPoly random_hbar() {
        std::uniform_int_distribution<int> deg(0, 3);
        std::uniform_real_distribution<double> c(-2.0, 2.0);
        std::vector<double> v(static_cast<size_t>(deg(rng)) + 1);
        for (double& x : v) x = c(rng);
        return HbarPoly(v);
    }

    Expression random_expr(bool allow_sin) {
        std::uniform_int_distribution<int> nterms(1, 4);
        std::uniform_int_distribution<int> kdist(0, 4);
        std::uniform_int_distribution<int> pdist(0, 3);
        std::uniform_int_distribution<int> gdist(0, 3);
        std::uniform_int_distribution<int> coin(0, 1);
        std::uniform_real_distribution<double> c(-2.0, 2.0);
        std::vector<Term> ts;
        const int n = nterms(rng);
        for (int i = 0; i < n; ++i) {
            std::vector<double> poly(static_cast<size_t>(pdist(rng)) + 1);
            for (double& x : poly) x = c(rng);
            GammaSignature g;
            for (int q = gdist(rng); q > 0; --q) g.push_num(gdist(rng) + 1);
            for (int q = gdist(rng); q > 0; --q) g.push_den(gdist(rng) + 1);
            ts.push_back(make_term(random_hbar(), std::move(poly),
                                   allow_sin ? coin(rng) : 0, 1.0, std::move(g),
                                   kdist(rng)));
        }
        return Expression::from_terms(std::move(ts));
    }
};

}  // namespace

TEST_CASE("canonicalize merges like terms and drops zeros") {
    Expression e = Expression::from_terms({phi_term(2.0, 1, 1), phi_term(3.0, 1, 1)});
    REQUIRE(e.size() == 1);
    CHECK(e.terms()[0].hbar.coeff(0) == doctest::Approx(5.0));
    CHECK(e.terms()[0].time_power == 1);
    CHECK(e.terms()[0].spatial.sin_mode == 1);

    Expression z = Expression::from_term(
        make_term(HbarPoly::constant(0.0), {1.0, 2.0}, 0, 1.0, {}, 2));
    CHECK(z.empty());

    // idempotence: re-canonicalizing the canonical terms changes nothing
    Expression again = Expression::from_terms(
        std::vector<Term>(e.terms().begin(), e.terms().end()));
    CHECK(expressions_match(e, again, 0.0));
}

TEST_CASE("canonical form splits polynomials into monic monomials") {
    Expression e = Expression::from_term(
        make_term(HbarPoly({0, 1}), {-1, -1, 1}, 0, 1.0, GammaSignature({}, {1}), 1));
    REQUIRE(e.size() == 3);
    for (const Term& t : e.terms()) {
        CHECK(t.spatial.poly.back() == 1.0);
    }
    CHECK(e.terms()[0].hbar.coeff(1) == doctest::Approx(-1.0));  // x^0
    CHECK(e.terms()[1].hbar.coeff(1) == doctest::Approx(-1.0));  // x^1
    CHECK(e.terms()[2].hbar.coeff(1) == doctest::Approx(1.0));   // x^2
}

TEST_CASE("add: identity, cancellation, mismatched lengths") {
    RandomExprGen gen(101);
    const Expression a = gen.random_expr(true);
    CHECK(expressions_match(add(a, Expression()), a, 0.0));
    CHECK(add(a, scale(a, -1.0)).empty());

    const Expression b = Expression::from_term(
        make_term(HbarPoly::constant(1.0), {1.0}, 1, 2.0, {}, 0));
    CHECK_THROWS_AS(add(a, b), StructuralError);
}

TEST_CASE("scale by hbar polynomials") {
    const Expression u0 = Expression::from_term(phi_term(1.0, 0, 1));
    const Expression h_u0 = scale(u0, HbarPoly::hbar());
    REQUIRE(h_u0.size() == 1);
    CHECK(h_u0.terms()[0].hbar.coeff(0) == 0.0);
    CHECK(h_u0.terms()[0].hbar.coeff(1) == doctest::Approx(1.0));

    RandomExprGen gen(55);
    const Expression e = gen.random_expr(true);
    CHECK(expressions_match(scale(e, HbarPoly::constant(1.0)), e, 0.0));
}

TEST_CASE("multiply: gamma signatures union, time powers add, sin*sin rejected") {
    const Expression p1 = Expression::from_term(phi_term(1.0, 1, 0));
    const Expression prod = multiply(p1, p1);
    REQUIRE(prod.size() == 1);
    CHECK(prod.terms()[0].time_power == 2);
    CHECK(prod.terms()[0].gsig.den() == std::vector<int>{1, 1});
    CHECK(prod.terms()[0].gsig.num().empty());

    const Expression x = Expression::from_term(
        make_term(HbarPoly::constant(1.0), {0.0, 1.0}, 0, 1.0, {}, 0));
    const Expression q = Expression::from_term(
        make_term(HbarPoly::constant(1.0), {-1.0, -1.0, 1.0}, 0, 1.0, {}, 0));
    const Expression xq = multiply(x, q);
    // x*(x^2-x-1) = x^3 - x^2 - x
    const Expression expected = Expression::from_term(
        make_term(HbarPoly::constant(1.0), {0.0, -1.0, -1.0, 1.0}, 0, 1.0, {}, 0));
    CHECK(expressions_match(xq, expected, 1e-15));

    RandomExprGen gen(7);
    const Expression e = gen.random_expr(false);
    const Expression one = Expression::from_term(
        make_term(HbarPoly::constant(1.0), {1.0}, 0, 1.0, {}, 0));
    CHECK(expressions_match(multiply(e, one), e, 1e-15));

    const Expression s = Expression::from_term(phi_term(1.0, 0, 1));
    CHECK_THROWS_AS(multiply(s, s), UnsupportedBasisError);
}

TEST_CASE("d_space on polynomials, rejected on sin terms") {
    const Expression q = Expression::from_term(
        make_term(HbarPoly::constant(1.0), {-1.0, -1.0, 1.0}, 0, 1.0, {}, 0));
    const Expression dq = d_space(q);
    const Expression expected = Expression::from_term(
        make_term(HbarPoly::constant(1.0), {-1.0, 2.0}, 0, 1.0, {}, 0));
    CHECK(expressions_match(dq, expected, 1e-15));

    const Expression c = Expression::from_term(
        make_term(HbarPoly::constant(3.0), {1.0}, 0, 1.0, {}, 0));
    CHECK(d_space(c).empty());

    const Expression s = Expression::from_term(phi_term(1.0, 0, 1));
    CHECK_THROWS_AS(d_space(s), UnsupportedBasisError);
}

TEST_CASE("d_space2: sine eigenfunction and polynomials") {
    const Expression s = Expression::from_term(phi_term(1.0, 0, 1));
    const Expression d2s = d_space2(s);
    REQUIRE(d2s.size() == 1);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(d2s.terms()[0].hbar.coeff(0) == doctest::Approx(-pi2).epsilon(1e-15));
    CHECK(d2s.terms()[0].spatial.sin_mode == 1);

    const Expression x3 = Expression::from_term(
        make_term(HbarPoly::constant(1.0), {0, 0, 0, 1.0}, 0, 1.0, {}, 0));
    const Expression expected = Expression::from_term(
        make_term(HbarPoly::constant(6.0), {0, 1.0}, 0, 1.0, {}, 0));
    CHECK(expressions_match(d_space2(x3), expected, 1e-15));

    const Expression bad = Expression::from_term(
        make_term(HbarPoly::constant(1.0), {0.0, 1.0}, 1, 1.0, {}, 0));
    CHECK_THROWS_AS(d_space2(bad), UnsupportedBasisError);
}

TEST_CASE("caputo_d: power rule with signature bookkeeping") {
    // D^a phi_1 = 1
    const Expression p1 = Expression::from_term(phi_term(1.0, 1, 0));
    const Expression d1 = caputo_d(p1);
    REQUIRE(d1.size() == 1);
    CHECK(d1.terms()[0].time_power == 0);
    CHECK(d1.terms()[0].gsig.empty());
    CHECK(d1.terms()[0].hbar.coeff(0) == doctest::Approx(1.0));

    // D^a (time-constant) = 0
    const Expression c = Expression::from_term(
        make_term(HbarPoly::constant(4.0), {0.0, 1.0}, 0, 1.0, {}, 0));
    CHECK(caputo_d(c).empty());

    // D^a phi_2 = phi_1
    const Expression p2 = Expression::from_term(phi_term(1.0, 2, 0));
    CHECK(expressions_match(caputo_d(p2), p1, 1e-15));
}

TEST_CASE("riemann_j: power rule, including the composite-signature case") {
    const Expression one = Expression::from_term(
        make_term(HbarPoly::constant(1.0), {1.0}, 0, 1.0, {}, 0));
    const Expression p1 = Expression::from_term(phi_term(1.0, 1, 0));
    CHECK(expressions_match(riemann_j(one), p1, 1e-15));

    const Expression p2 = Expression::from_term(phi_term(1.0, 2, 0));
    CHECK(expressions_match(riemann_j(p1), p2, 1e-15));

    // J^a (phi_1 * phi_1): k = 3, num {2}, den {1,1,3}
    const Expression sq = multiply(p1, p1);
    const Expression j = riemann_j(sq);
    REQUIRE(j.size() == 1);
    CHECK(j.terms()[0].time_power == 3);
    CHECK(j.terms()[0].gsig.num() == std::vector<int>{2});
    CHECK(j.terms()[0].gsig.den() == std::vector<int>{1, 1, 3});
}

TEST_CASE("operator inverse pair on random expressions") {
    RandomExprGen gen(2024);
    for (int i = 0; i < 50; ++i) {
        const Expression e = gen.random_expr(true);
        std::string why;
        CHECK_MESSAGE(expressions_match(caputo_d(riemann_j(e)), e, 1e-12, &why), why);
        // J D e keeps exactly the k >= 1 part
        std::vector<Term> kept;
        for (const Term& t : e.terms()) {
            if (t.time_power >= 1) kept.push_back(t);
        }
        const Expression positive = Expression::from_terms(std::move(kept));
        CHECK(expressions_match(riemann_j(caputo_d(e)), positive, 1e-12));
    }
}

TEST_CASE("linear operators commute with add and scale") {
    RandomExprGen gen(31415);
    using Op = Expression (*)(const Expression&);
    const Op ops[] = {&caputo_d, &riemann_j};
    for (int i = 0; i < 25; ++i) {
        const Expression a = gen.random_expr(true);
        const Expression b = gen.random_expr(true);
        const HbarPoly p = gen.random_hbar();
        for (Op op : ops) {
            CHECK(expressions_match(op(add(a, b)), add(op(a), op(b)), 1e-12));
            CHECK(expressions_match(op(scale(a, p)), scale(op(a), p), 1e-12));
        }
        // spatial derivatives need sin-free input
        const Expression c = gen.random_expr(false);
        const Expression d = gen.random_expr(false);
        CHECK(expressions_match(d_space(add(c, d)), add(d_space(c), d_space(d)), 1e-12));
        CHECK(expressions_match(d_space2(scale(c, p)), scale(d_space2(c), p), 1e-12));
    }
}

TEST_CASE("evaluation homomorphism for add and multiply") {
    RandomExprGen gen(99);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    std::uniform_real_distribution<double> uh(-1.5, 0.5);
    for (int i = 0; i < 100; ++i) {
        const Expression a = gen.random_expr(false);
        const Expression b = gen.random_expr(false);
        const double x = ux(gen.rng);
        const double t = ux(gen.rng);
        const double h = uh(gen.rng);
        const double va = evaluate(a, kProduct, x, t)(h);
        const double vb = evaluate(b, kProduct, x, t)(h);
        const double vsum = evaluate(add(a, b), kProduct, x, t)(h);
        const double vprod = evaluate(multiply(a, b), kProduct, x, t)(h);
        const double scale_s = std::max({1.0, std::abs(va), std::abs(vb)});
        CHECK(std::abs(vsum - (va + vb)) < 1e-12 * scale_s);
        CHECK(std::abs(vprod - va * vb) < 1e-12 * scale_s * scale_s);
    }
}

TEST_CASE("canonicalization preserves pointwise value") {
    RandomExprGen gen(404);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    std::uniform_real_distribution<double> uh(-1.5, 0.5);
    for (int i = 0; i < 100; ++i) {
        // raw, deliberately overlapping term list: e + e merged must equal 2e
        std::vector<Term> raw;
        const Expression e1 = gen.random_expr(true);
        raw.insert(raw.end(), e1.terms().begin(), e1.terms().end());
        raw.insert(raw.end(), e1.terms().begin(), e1.terms().end());
        const Expression merged = Expression::from_terms(raw);
        const double x = ux(gen.rng), t = ux(gen.rng), h = uh(gen.rng);
        const double direct = 2.0 * evaluate(e1, kProduct, x, t)(h);
        const double canon = evaluate(merged, kProduct, x, t)(h);
        CHECK(std::abs(direct - canon) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("evaluate: frozen series values at spot points") {
    // u_1 of the sine benchmark at (0.5, 1): [0, pi^2 K / Gamma(1.81)]
    const double K = 0.01;
    const double A = std::numbers::pi * std::numbers::pi * K;
    const Expression u1 = Expression::from_term(
        make_term(HbarPoly({0.0, A}), {1.0}, 1, 1.0, GammaSignature({}, {1}), 1));
    const HbarPoly v = evaluate(u1, kAffine, 0.5, 1.0);
    CHECK(v.coeff(0) == 0.0);
    const double expected = A / vofham::gamma(1.81);
    CHECK(v.coeff(1) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(v.coeff(1) == doctest::Approx(0.10567).epsilon(1e-4));

    // u_1 of the reaction-diffusion benchmark at (0.5, 0.5):
    // [0, -1.25 * 0.5^{0.25} / Gamma(1.25)]
    const Expression u1b = Expression::from_term(
        make_term(HbarPoly({0.0, 1.0}), {-1, -1, 1}, 0, 1.0, GammaSignature({}, {1}), 1));
    const HbarPoly vb = evaluate(u1b, kProduct, 0.5, 0.5);
    const double expected_b = -1.25 * std::pow(0.5, 0.25) / vofham::gamma(1.25);
    CHECK(vb.coeff(1) == doctest::Approx(expected_b).epsilon(1e-12));
    CHECK(vb.coeff(1) == doctest::Approx(-1.15959).epsilon(1e-4));

    // product of the two frozen spot values via Horner
    CHECK(evaluate_at_hbar(HbarPoly({0.0, expected_b}), -0.134256) ==
          doctest::Approx(0.15568).epsilon(1e-4));
}

TEST_CASE("evaluate_at_hbar basics") {
    CHECK(evaluate_at_hbar(HbarPoly({0.0, 1.0, 1.0}), -1.0) == doctest::Approx(0.0));
    CHECK(evaluate_at_hbar(HbarPoly({7.5, 3.0}), 0.0) == doctest::Approx(7.5));
    CHECK(evaluate_at_hbar(HbarPoly(), 2.0) == 0.0);
}

TEST_CASE("time factor conventions at t = 0") {
    const Expression p2 = Expression::from_term(phi_term(1.0, 2, 0));
    // alpha(x, 0) > 0: t^{2a} -> 0
    CHECK(evaluate(p2, kAffine, 0.5, 0.0).is_zero());
    // alpha(x, 0) = 0 (product field): limit of t^{k x t} -> 1
    const HbarPoly v = evaluate(p2, kProduct, 0.5, 0.0);
    CHECK(v.coeff(0) == doctest::Approx(1.0));  // Gamma(1) = 1 at alpha = 0
    // k = 0 stays 1 regardless
    const Expression c = Expression::from_term(phi_term(3.0, 0, 0));
    CHECK(evaluate(c, kAffine, 0.5, 0.0).coeff(0) == doctest::Approx(3.0));
}

TEST_CASE("evaluate rejects out-of-domain points") {
    const Expression c = Expression::from_term(phi_term(3.0, 0, 0));
    CHECK_THROWS_AS(evaluate(c, kAffine, 2.0, 1.0), std::domain_error);
    CHECK_NOTHROW(evaluate_extended(c, kAffine, 2.0, 1.0));
}

TEST_CASE("pretty printer emits grouped reference notation") {
    const Expression u1 = Expression::from_term(
        make_term(HbarPoly({0.0, 1.0}), {-1, -1, 1}, 0, 1.0, GammaSignature({}, {1}), 1));
    CHECK(to_string(u1) == "h * (x^2 - x - 1) * t^a/G(1+a)");

    const Expression u3_mixed = Expression::from_term(
        make_term(HbarPoly::monomial(1.0, 3), {2, 8, -7, -2, 1}, 0, 1.0,
                  GammaSignature({2}, {1, 1, 3}), 3));
    CHECK(to_string(u3_mixed) ==
          "h^3 * (x^4 - 2x^3 - 7x^2 + 8x + 2) * G(1+2a) t^3a/(G(1+a)^2 G(1+3a))");

    const Expression u2a = Expression::from_term(
        make_term(HbarPoly({0, 1, 1}), {-1, -1, 1}, 0, 1.0, GammaSignature({}, {1}), 1));
    CHECK(to_string(u2a) == "h(h+1) * (x^2 - x - 1) * t^a/G(1+a)");

    CHECK(to_string(Expression()) == "0");
}
