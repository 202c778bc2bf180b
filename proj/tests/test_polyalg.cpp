#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "su3/poly.hpp"

#include <cmath>
#include <random>

using namespace su3;

namespace {

PolyElement random_poly(std::mt19937_64& rng, int max_degree, int n_terms) {
    std::uniform_int_distribution<int> var(1, 8);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> coeff(-4, 4);
    PolyElement f;
    for (int t = 0; t < n_terms; ++t) {
        Mono8 m{};
        int d = deg(rng);
        for (int i = 0; i < d; ++i) m[var(rng) - 1] += 1;
        f.add_term(m, GaussQuad(QuadScalar(coeff(rng), coeff(rng), 0, 0)));
    }
    return f;
}

}  // namespace

TEST_CASE("pointwise product basics") {
    std::mt19937_64 rng(7);
    PolyElement one = PolyElement::constant(GaussQuad(1));
    for (int t = 0; t < 10; ++t) {
        PolyElement f = random_poly(rng, 3, 3);
        CHECK(pointwise_mul(f, one) == f);
    }
    PolyElement x1 = PolyElement::variable(1);
    Mono8 sq{};
    sq[0] = 2;
    CHECK(pointwise_mul(x1, x1) == PolyElement::monomial(sq, GaussQuad(1)));
    CHECK(pointwise_mul(x1, x1).str() == "(1)*x1^2");
}

TEST_CASE("partial derivatives") {
    Mono8 m{};
    m[0] = 2;
    m[4] = 1;
    PolyElement f = PolyElement::monomial(m, GaussQuad(3));  // 3 x1^2 x5
    Mono8 d1{};
    d1[0] = 1;
    d1[4] = 1;
    CHECK(f.partial(1) == PolyElement::monomial(d1, GaussQuad(6)));
    CHECK(f.partial(2).is_zero());
}

TEST_CASE("KAKS bracket structure") {
    const auto& sc = structure_constants(BasisTag::GellMann);
    for (int j = 1; j <= 8; ++j) {
        for (int k = 1; k <= 8; ++k) {
            PolyElement expect;
            for (const auto& [l, coeff] : sc.bracket(k - 1, j - 1)) {
                Mono8 m{};
                m[l] = 1;
                expect.add_term(m, GaussQuad(coeff));
            }
            CHECK(kaks_bracket(PolyElement::variable(j), PolyElement::variable(k)) == expect);
        }
    }

    std::mt19937_64 rng(808);
    for (int t = 0; t < 15; ++t) {
        PolyElement f = random_poly(rng, 2, 2);
        PolyElement g = random_poly(rng, 2, 2);
        PolyElement h = random_poly(rng, 2, 2);
        CHECK(kaks_bracket(f, f).is_zero());
        CHECK((kaks_bracket(f, g) + kaks_bracket(g, f)).is_zero());
        // Jacobi.
        PolyElement jac = kaks_bracket(f, kaks_bracket(g, h)) +
                          kaks_bracket(g, kaks_bracket(h, f)) +
                          kaks_bracket(h, kaks_bracket(f, g));
        CHECK(jac.is_zero());
        // Leibniz.
        CHECK(kaks_bracket(pointwise_mul(f, g), h) ==
              pointwise_mul(f, kaks_bracket(g, h)) + pointwise_mul(kaks_bracket(f, h), g));
    }
}

TEST_CASE("tau: pinned values, parity, invariance") {
    RationalOrbit o10 = rational_orbit(1, 0);
    RationalOrbit o01 = rational_orbit(0, 1);
    RationalOrbit o11 = rational_orbit(1, 1);
    CHECK(evaluate_exact(tau_poly(), o10.xi_exact) == GaussQuad(2));
    CHECK(evaluate_exact(tau_poly(), o01.xi_exact) == GaussQuad(-2));
    CHECK(evaluate_exact(tau_poly(), o11.xi_exact) == GaussQuad(0));

    // Agreement with the Weyl-arc cubic along the whole arc, and parity.
    for (int i = 0; i <= 40; ++i) {
        double y = i / 40.0;
        WeylPoint pt = weyl_point(y);
        std::complex<double> val = evaluate(tau_poly(), pt.xi);
        CHECK(std::abs(val.imag()) < 1e-12);
        CHECK(val.real() == doctest::Approx(weyl_arc_tau(pt.x, pt.y)).epsilon(1e-10));
        std::complex<double> neg = evaluate(tau_poly(), (-pt.xi).eval());
        CHECK(neg.real() == doctest::Approx(-val.real()).epsilon(1e-10));
    }

    // Infinitesimal invariance, exact.
    for (int j = 1; j <= 8; ++j)
        CHECK(kaks_bracket(PolyElement::variable(j), tau_poly()).is_zero());

    // Strict monotonicity along the arc separates the orbits.
    double prev = evaluate(tau_poly(), weyl_point(0.0).xi).real();
    for (int i = 1; i <= 1000; ++i) {
        double cur = evaluate(tau_poly(), weyl_point(i / 1000.0).xi).real();
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("tau on rational orbits") {
    CHECK(tau_on_orbit(rational_orbit(1, 0)) == doctest::Approx(2.0));
    CHECK(tau_on_orbit(rational_orbit(0, 1)) == doctest::Approx(-2.0));
    CHECK(tau_on_orbit(rational_orbit(1, 1)) == doctest::Approx(0.0));
    CHECK(tau_on_orbit(rational_orbit(2, 1)) == doctest::Approx(20.0 / std::pow(7.0, 1.5)).epsilon(1e-12));
    for (auto [p, q] : {std::pair{2, 1}, {3, 1}, {3, 2}}) {
        CHECK(tau_on_orbit(rational_orbit(p, q)) ==
              doctest::Approx(-tau_on_orbit(rational_orbit(q, p))).epsilon(1e-12));
    }
    // Numeric route agrees with the polynomial evaluated at the numeric point.
    RationalOrbit o = rational_orbit(3, 1);
    CHECK(evaluate(tau_poly(), o.xi).real() == doctest::Approx(tau_on_orbit(o)).epsilon(1e-12));
}

TEST_CASE("check_tau vanishes on its orbit and separates the others") {
    RationalOrbit o10 = rational_orbit(1, 0);
    PolyElement ct = check_tau(o10);
    CHECK(evaluate_exact(ct, o10.xi_exact) == GaussQuad(0));
    CHECK(evaluate_exact(ct, rational_orbit(0, 1).xi_exact) == GaussQuad(-4));

    // Non-exact orbit: constant subtraction at double precision.
    RationalOrbit o21 = rational_orbit(2, 1);
    CHECK(std::abs(evaluate(check_tau(o21), o21.xi)) < 1e-12);
}

TEST_CASE("evaluation and sup-norm estimation") {
    CHECK(evaluate(PolyElement::constant(GaussQuad(1)), Eigen::Matrix3cd::Zero()).real() == 1.0);
    CHECK(evaluate(PolyElement::variable(3), gm_basis_num()[2]).real() == doctest::Approx(1.0));

    PolyElement sum_sq;
    for (int k = 1; k <= 8; ++k)
        sum_sq = sum_sq + pointwise_mul(PolyElement::variable(k), PolyElement::variable(k));

    OrbitSample sample;
    sample.orbit = rational_orbit(1, 0);
    sample.points.push_back(sample.orbit.xi);
    sample.points.push_back(rational_orbit(1, 1).xi);  // also unit norm
    PolyElement dev = sum_sq - PolyElement::constant(GaussQuad(1));
    CHECK(sup_norm_estimate(dev, sample) < 1e-14);
    CHECK(sup_norm_estimate(PolyElement(), sample) == 0.0);

    OrbitSample empty;
    CHECK_THROWS_AS(sup_norm_estimate(dev, empty), std::invalid_argument);
}
