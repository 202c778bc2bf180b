#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "su3/sl3.hpp"

#include <cmath>
#include <random>

using namespace su3;

TEST_CASE("both bases are orthonormal for tr(X^dag Y)") {
    for (int j = 0; j < 8; ++j) {
        for (int k = 0; k < 8; ++k) {
            GaussQuad expect = j == k ? GaussQuad(1) : GaussQuad(0);
            CHECK(pair_hermitian(gt_basis()[j], gt_basis()[k]) == expect);
            CHECK(pair_hermitian(gm_basis()[j], gm_basis()[k]) == expect);
            // Bilinear pairing on the anti-Hermitian basis flips the sign.
            CHECK(pair_bilinear(gm_basis()[j], gm_basis()[k]) == -expect);
        }
    }
}

TEST_CASE("basis matrices are traceless; Gell-Mann ones anti-Hermitian") {
    for (int j = 0; j < 8; ++j) {
        CHECK(gt_basis()[j].trace().is_zero());
        CHECK(gm_basis()[j].trace().is_zero());
        CHECK(gm_basis()[j].dagger() == -gm_basis()[j]);
    }
}

TEST_CASE("e7 is the explicit diagonal -sqrt2*U3") {
    Mat3q e7 = gt_basis()[6];
    Mat3q expect;
    expect.m[1][1] = GaussQuad(QuadScalar(0, Rational(-1, 2), 0, 0));  // -sqrt2/2
    expect.m[2][2] = GaussQuad(QuadScalar(0, Rational(1, 2), 0, 0));
    CHECK(e7 == expect);
}

TEST_CASE("key commutators in the ordered basis") {
    const auto& e = gt_basis();
    // [e1,e2] = e3
    CHECK(commutator(e[0], e[1]) == e[2]);
    // [e1,e4] = (1/sqrt2) e7 + sqrt(3/2) e8
    GaussQuad c7{QuadScalar(0, Rational(1, 2), 0, 0)};   // sqrt2/2
    GaussQuad c8{QuadScalar(0, 0, 0, Rational(1, 2))};   // sqrt6/2
    CHECK(commutator(e[0], e[3]) == c7 * e[6] + c8 * e[7]);
}

TEST_CASE("structure constants: antisymmetry, diagonal vanishing, Jacobi") {
    for (BasisTag tag : {BasisTag::GT, BasisTag::GellMann}) {
        const auto& sc = structure_constants(tag);
        const auto& basis = tag == BasisTag::GT ? gt_basis() : gm_basis();
        for (int j = 0; j < 8; ++j) CHECK(sc.bracket(j, j).empty());
        for (int j = 0; j < 8; ++j) {
            for (int k = 0; k < 8; ++k) {
                // Re-assemble and compare against the matrix commutator.
                Mat3q lhs = commutator(basis[j], basis[k]);
                Mat3q rhs;
                for (const auto& [l, coeff] : sc.bracket(j, k)) rhs = rhs + GaussQuad(coeff) * basis[l];
                CHECK(lhs == rhs);
                // Antisymmetry against the transposed entry.
                Mat3q neg;
                for (const auto& [l, coeff] : sc.bracket(k, j)) neg = neg + GaussQuad(coeff) * basis[l];
                CHECK(rhs == -neg);
            }
        }
        // Jacobi on all triples, exactly.
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b)
                for (int c = 0; c < 8; ++c) {
                    Mat3q sum = commutator(basis[a], commutator(basis[b], basis[c])) +
                                commutator(basis[b], commutator(basis[c], basis[a])) +
                                commutator(basis[c], commutator(basis[a], basis[b]));
                    CHECK(sum.is_zero());
                }
    }
}

TEST_CASE("the two tables agree under the exact change of basis") {
    const auto& P = gt_gm_pairing();  // P[j][k] = tr(e_j E_k)
    const auto& scE = structure_constants(BasisTag::GellMann);
    const auto& scGT = structure_constants(BasisTag::GT);
    // e_j = sum_k A_jk E_k with A_jk = <E_k|e_j> = -tr(E_k e_j) = -P[j][k].
    auto A = [&P](int j, int k) { return -P[j][k]; };
    for (int j = 0; j < 8; ++j) {
        for (int k = 0; k < 8; ++k) {
            // Expand [e_j,e_k] in the E basis through the E-table...
            std::array<GaussQuad, 8> viaE{};
            for (int m = 0; m < 8; ++m) {
                if (A(j, m).is_zero()) continue;
                for (int n = 0; n < 8; ++n) {
                    if (A(k, n).is_zero()) continue;
                    for (const auto& [l, coeff] : scE.bracket(m, n))
                        viaE[l] += A(j, m) * A(k, n) * GaussQuad(coeff);
                }
            }
            // ...and through the GT table followed by the change of basis.
            std::array<GaussQuad, 8> viaGT{};
            for (const auto& [l, coeff] : scGT.bracket(j, k))
                for (int m = 0; m < 8; ++m) viaGT[m] += GaussQuad(coeff) * A(l, m);
            for (int m = 0; m < 8; ++m) CHECK(viaE[m] == viaGT[m]);
        }
    }
}

TEST_CASE("pairing matrix has an exact inverse") {
    const auto& P = gt_gm_pairing();
    const auto& Pinv = gt_gm_pairing_inv();
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            GaussQuad acc;
            for (int k = 0; k < 8; ++k) acc += P[i][k] * Pinv[k][j];
            CHECK(acc == (i == j ? GaussQuad(1) : GaussQuad(0)));
        }
    }
}

TEST_CASE("exact expansions reconstruct and reject off-span input") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> pick(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        Mat3q X;
        for (int j = 0; j < 8; ++j) {
            GaussQuad c{QuadScalar(pick(rng), pick(rng), 0, 0), QuadScalar(pick(rng), 0, pick(rng), 0)};
            X = X + c * gt_basis()[j];
        }
        auto cg = expand_gt(X);
        auto ce = expand_gm(X);
        Mat3q back_g, back_e;
        for (int j = 0; j < 8; ++j) {
            back_g = back_g + cg[j] * gt_basis()[j];
            back_e = back_e + ce[j] * gm_basis()[j];
        }
        CHECK(back_g == X);
        CHECK(back_e == X);
    }
    CHECK_THROWS_AS(expand_gt(Mat3q::identity()), FieldError);
}

TEST_CASE("fundamental weights match their Gell-Mann expressions") {
    // w1 = (1/sqrt2) E3 + (1/sqrt6) E8, w2 = sqrt(2/3) E8.
    GaussQuad inv_sqrt2{QuadScalar(0, Rational(1, 2), 0, 0)};
    GaussQuad inv_sqrt6{QuadScalar(0, 0, 0, Rational(1, 6))};
    GaussQuad sqrt_two_thirds{QuadScalar(0, 0, 0, Rational(1, 3))};
    CHECK(fundamental_weight(1) == inv_sqrt2 * gm_basis()[2] + inv_sqrt6 * gm_basis()[7]);
    CHECK(fundamental_weight(2) == sqrt_two_thirds * gm_basis()[7]);
    CHECK_THROWS_AS(fundamental_weight(3), std::domain_error);
}

TEST_CASE("dominant weight norm is (2/3)(p^2+pq+q^2)") {
    for (auto [p, q] : {std::pair{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 3}, {5, 2}}) {
        DominantWeight w = dominant_weight(p, q);
        GaussQuad norm2 = pair_hermitian(w.omega, w.omega);
        CHECK(norm2 == GaussQuad(Rational(2 * (p * p + p * q + q * q), 3)));
        CHECK(w.omega.trace().is_zero());
    }
    CHECK_THROWS_AS(dominant_weight(-1, 0), std::domain_error);
}

TEST_CASE("Weyl arc parametrization") {
    WeylPoint p0 = weyl_point(0.0);
    CHECK(p0.x == doctest::Approx(1.0));
    WeylPoint p1 = weyl_point(1.0);
    CHECK(p1.x == doctest::Approx(0.0));
    double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    WeylPoint pm = weyl_point(inv_sqrt3);
    CHECK(pm.x == doctest::Approx(inv_sqrt3).epsilon(1e-14));

    for (int i = 0; i <= 100; ++i) {
        double y = i / 100.0;
        WeylPoint pt = weyl_point(y);
        CHECK(pt.x * pt.x + pt.x * pt.y + pt.y * pt.y == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs((pt.xi * pt.xi.adjoint()).trace().real() - 1.0) < 1e-14);
        CHECK(std::abs(pt.xi.trace()) < 1e-15);
    }
    CHECK_THROWS_AS(weyl_point(1.5), std::domain_error);
    CHECK_THROWS_AS(weyl_point(-0.1), std::domain_error);
}

TEST_CASE("fiber radius and Morse value") {
    CHECK(fiber_radius(0.0) == 0.0);
    double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    CHECK(fiber_radius(inv_sqrt3) == doctest::Approx(0.5).epsilon(1e-15));
    for (double y : {0.1, 0.3, 0.5}) {
        CHECK(morse_value(y) / (fiber_radius(y) * fiber_radius(y)) ==
              doctest::Approx(inv_sqrt3).epsilon(1e-14));
    }
    CHECK_THROWS_AS(fiber_radius(0.9), std::domain_error);
}

TEST_CASE("Weyl arc tau values at the pinned points") {
    CHECK(weyl_arc_tau(1.0, 0.0) == doctest::Approx(2.0));
    CHECK(weyl_arc_tau(0.0, 1.0) == doctest::Approx(-2.0));
    double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    CHECK(weyl_arc_tau(inv_sqrt3, inv_sqrt3) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("rational orbits on integral-radius rays") {
    RationalOrbit o10 = rational_orbit(1, 0);
    CHECK(o10.r == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
    CHECK(o10.xi_exact_available);
    CHECK(o10.xi_exact.to_complex().isApprox(o10.xi, 1e-14));

    RationalOrbit o11 = rational_orbit(1, 1);
    CHECK(o11.r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    WeylPoint mesonic = weyl_point(inv_sqrt3);
    CHECK(o11.xi.isApprox(mesonic.xi, 1e-12));
    CHECK(o11.xi_exact_available);

    RationalOrbit o21 = rational_orbit(2, 1);
    CHECK(o21.norm_m == 7);
    CHECK(!o21.xi_exact_available);
    CHECK(o21.r * o21.r == doctest::Approx(14.0 / 3.0).epsilon(1e-14));
    // omega = r * xi recovers the dominant weight.
    CHECK((o21.xi * o21.r).isApprox(dominant_weight(2, 1).omega.to_complex(), 1e-14));

    CHECK_THROWS_AS(rational_orbit(0, 0), std::domain_error);
    CHECK_THROWS_AS(rational_orbit(2, 4), std::domain_error);
    CHECK_THROWS_AS(rational_orbit(-1, 2), std::domain_error);
}

TEST_CASE("x-coordinates agree with -tr(E_k X)") {
    // x_3 at E_3 is -tr(E3 E3) = 1.
    auto x = x_coords(gm_basis_num()[2]);
    for (int k = 0; k < 8; ++k) {
        CHECK(x[k].real() == doctest::Approx(k == 2 ? 1.0 : 0.0).epsilon(1e-14));
        CHECK(std::abs(x[k].imag()) < 1e-15);
    }
}
