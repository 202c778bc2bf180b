#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "su3/irrep.hpp"
#include "su3/sl3.hpp"
#include "su3/uea.hpp"

#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

using namespace su3;
using cplx = std::complex<double>;

namespace {

Eigen::MatrixXcd dense(const SpMat& m) { return Eigen::MatrixXcd(m); }

UeaElement two_t3() {
    return UeaElement::from_matrix(GaussQuad(QuadScalar(2)) * defining_ops().T3);
}

}  // namespace

TEST_CASE("dimensions and labels") {
    CHECK(irrep_dim(1, 0) == 3);
    CHECK(irrep_dim(0, 1) == 3);
    CHECK(irrep_dim(2, 0) == 6);
    CHECK(irrep_dim(1, 1) == 8);
    CHECK(irrep_dim(2, 1) == 15);
    CHECK(irrep_dim(3, 0) == 10);
    CHECK(irrep_dim(12, 0) == 91);

    Irrep ir = build_irrep(2, 1);
    CHECK(ir.dim == 15);
    CHECK(static_cast<int>(ir.patterns.size()) == 15);
    CHECK(ir.patterns[ir.hw_index] == std::array<int, 3>{3, 1, 3});

    CHECK_THROWS_AS(build_irrep(0, 0), std::domain_error);
    CHECK_THROWS_AS(build_irrep(-1, 2), std::domain_error);
    CHECK_THROWS_AS(build_irrep(40, 40, 1000), std::domain_error);  // over the cap
}

TEST_CASE("defining representation reproduces the defining matrices") {
    // The pattern basis of (1,0) is the standard basis in order, so the
    // images must match the 3x3 basis matrices entrywise.
    Irrep ir = build_irrep(1, 0);
    const auto& e = gt_basis_num();
    for (int j = 0; j < 8; ++j) CHECK((dense(ir.rho[j]) - e[j]).norm() < 1e-12);
    const auto& E = gm_basis_num();
    for (int k = 0; k < 8; ++k) CHECK((dense(ir.rhoE[k]) - E[k]).norm() < 1e-12);
}

TEST_CASE("certification accepts a battery of labels") {
    for (auto [p, q] : {std::pair{0, 1}, {2, 0}, {1, 1}, {3, 1}, {2, 2}, {0, 4}, {5, 0}}) {
        Irrep ir = build_irrep(p, q);
        CHECK(ir.dim == irrep_dim(p, q));
    }
}

TEST_CASE("normal ordering is faithful under rho") {
    // rho(word product) must equal rho(normal form) as matrices.
    Irrep ir = build_irrep(1, 1);
    std::mt19937_64 eng(5);
    for (int trial = 0; trial < 20; ++trial) {
        int len = 2 + static_cast<int>(eng() % 4);
        Word w;
        Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(ir.dim, ir.dim);
        for (int i = 0; i < len; ++i) {
            int j = 1 + static_cast<int>(eng() % 8);
            w.push_back(static_cast<uint8_t>(j));
            prod = prod * dense(ir.rho[j - 1]);
        }
        Eigen::MatrixXcd nf = rho_word(ir, normal_order(w));
        CHECK((prod - nf).norm() < 1e-10 * std::max(1.0, prod.norm()));
    }
}

TEST_CASE("cubic Casimir is scalar with the closed-form eigenvalue") {
    // rho(S(tau)) = i (2/3)^{3/2} (p-q)(p+2q+3)(2p+q+3) * Id; the i is the
    // (-i)^3 of the degree-3 symbol convention. Antisymmetric in (p,q).
    auto casimir_value = [](int p, int q) {
        Irrep ir = build_irrep(p, q);
        Eigen::MatrixXcd c = rho_word(ir, cubic_casimir());
        cplx lead = c(0, 0);
        Eigen::MatrixXcd dev = c - lead * Eigen::MatrixXcd::Identity(ir.dim, ir.dim);
        REQUIRE(dev.norm() < 1e-8 * std::max(1.0, std::abs(lead)));
        REQUIRE(std::abs(lead.real()) < 1e-10 * std::max(1.0, std::abs(lead)));
        return lead.imag();
    };
    const double k = std::pow(2.0 / 3.0, 1.5);
    for (auto [p, q] : {std::pair{1, 0}, {2, 0}, {2, 1}, {3, 1}}) {
        double got = casimir_value(p, q);
        double want = k * (p - q) * (p + 2 * q + 3) * (2 * p + q + 3);
        CHECK(std::abs(got - want) < 1e-10 * std::abs(want));
    }
    double c10 = casimir_value(1, 0), c01 = casimir_value(0, 1);
    CHECK(std::abs(c10 + c01) < 1e-10 * std::abs(c10));
    double c21 = casimir_value(2, 1), c12 = casimir_value(1, 2);
    CHECK(std::abs(c21 + c12) < 1e-10 * std::abs(c21));
    CHECK(std::abs(casimir_value(1, 1)) < 1e-10);
}

TEST_CASE("weight spectrum of 2T3 on (p,0)") {
    Irrep ir = build_irrep(3, 0);
    Eigen::MatrixXcd a = rho_word(ir, two_t3());
    double mx = -100, mn = 100;
    for (int i = 0; i < ir.dim; ++i) {
        double v = a(i, i).real();
        CHECK(std::abs(v - std::round(v)) < 1e-10);  // integral weights
        mx = std::max(mx, v);
        mn = std::min(mn, v);
    }
    CHECK(mx == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(mn == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK((a - a.adjoint()).norm() < 1e-12);  // diagonal real
}

TEST_CASE("Haar samples are unitary with orthogonal adjoint action") {
    for (uint64_t seed : {1ull, 2ull, 42ull, 1000003ull}) {
        GroupSample s = sample_group(seed);
        CHECK((s.defining * s.defining.adjoint() - Eigen::Matrix3cd::Identity()).norm() < 1e-12);
        CHECK(std::abs(s.defining.determinant() - cplx(1, 0)) < 1e-12);
        // log: anti-Hermitian, traceless, exponentiates back to g
        CHECK((s.log_defining + s.log_defining.adjoint()).norm() < 1e-12);
        CHECK(std::abs(s.log_defining.trace()) < 1e-12);
        Irrep def = build_irrep(1, 0);
        CHECK((rep_matrix(def, s) - s.defining).norm() < 1e-10);
        // ad: orthogonal, consistent with conjugation in the defining rep
        Eigen::Matrix<double, 8, 8> ada = s.ad * s.ad.transpose();
        CHECK((ada - Eigen::Matrix<double, 8, 8>::Identity()).norm() < 1e-10);
        CHECK(s.ad.determinant() == doctest::Approx(1.0).epsilon(1e-8));
        const auto& E = gm_basis_num();
        for (int k = 0; k < 8; ++k) {
            Eigen::Matrix3cd lhs = s.defining * E[k] * s.defining.adjoint();
            Eigen::Matrix3cd rhs = Eigen::Matrix3cd::Zero();
            for (int l = 0; l < 8; ++l) rhs += s.ad(l, k) * E[l];
            CHECK((lhs - rhs).norm() < 1e-10);
        }
    }
    // deterministic and seed-sensitive
    GroupSample a1 = sample_group(7), a2 = sample_group(7), b = sample_group(8);
    CHECK((a1.defining - a2.defining).norm() == 0.0);
    CHECK((a1.defining - b.defining).norm() > 1e-3);
}

TEST_CASE("group sample from an explicit matrix") {
    GroupSample id = group_sample_from_matrix(Eigen::Matrix3cd::Identity());
    CHECK(id.log_defining.norm() < 1e-14);
    CHECK((id.ad - Eigen::Matrix<double, 8, 8>::Identity()).norm() < 1e-12);
    Eigen::Matrix3cd bad = Eigen::Matrix3cd::Identity() * 2.0;
    CHECK_THROWS_AS(group_sample_from_matrix(bad), std::domain_error);
}

TEST_CASE("rep matrices are unitary and multiplicative") {
    Irrep ir = build_irrep(1, 1);
    GroupSample g1 = sample_group(11), g2 = sample_group(12);
    Eigen::MatrixXcd r1 = rep_matrix(ir, g1), r2 = rep_matrix(ir, g2);
    CHECK((r1 * r1.adjoint() - Eigen::MatrixXcd::Identity(8, 8)).norm() < 1e-10);
    GroupSample g12 = group_sample_from_matrix(g1.defining * g2.defining);
    Eigen::MatrixXcd r12 = rep_matrix(ir, g12);
    CHECK((r12 - r1 * r2).norm() < 1e-8);
}

TEST_CASE("coherent states match the rep applied to the highest-weight vector") {
    GroupSample g = sample_group(3);
    Irrep def = build_irrep(1, 0);
    Eigen::VectorXcd psi = coherent_state(def, g);
    CHECK((psi - g.defining.col(0)).norm() < 1e-12);

    Irrep adj = build_irrep(2, 1);
    Eigen::VectorXcd psi2 = coherent_state(adj, g);
    Eigen::VectorXcd hw = Eigen::VectorXcd::Zero(adj.dim);
    hw[adj.hw_index] = 1.0;
    Eigen::VectorXcd viarep = rep_matrix(adj, g) * hw;
    CHECK((psi2 - viarep).norm() < 1e-10);
    CHECK(psi2.norm() == doctest::Approx(1.0).epsilon(1e-13));

    // At the identity the operator symbol is just the highest-weight entry.
    GroupSample id = group_sample_from_matrix(Eigen::Matrix3cd::Identity());
    Eigen::MatrixXcd a = rho_word(adj, two_t3());
    cplx val = berezin_symbol_operator(adj, a, id);
    CHECK(std::abs(val - a(adj.hw_index, adj.hw_index)) < 1e-12);
}

TEST_CASE("monomial application agrees with rho_word") {
    Irrep ir = build_irrep(1, 1);
    GroupSample g = sample_group(21);
    Eigen::VectorXcd psi = coherent_state(ir, g);
    Mono8 m{};
    m[0] = 1;
    m[3] = 2;
    m[6] = 1;
    UeaElement u = UeaElement::monomial(m, GaussQuad(QuadScalar(1)));
    CHECK((apply_monomial(ir, m, psi) - rho_word(ir, u) * psi).norm() < 1e-12);
}

TEST_CASE("ladder traces match the closed form") {
    LadderTrace t11 = ladder_trace_identity(1, 1);
    CHECK(t11.rhs == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(t11.lhs - t11.rhs) < 1e-9 * std::abs(t11.rhs));
    for (int p : {2, 3, 6}) {
        for (int n = 0; n <= std::min(p, 4); ++n) {
            LadderTrace t = ladder_trace_identity(p, n);
            double scale = std::max(1.0, std::abs(t.rhs));
            CHECK(std::abs(t.lhs - t.rhs) < 1e-9 * scale);
        }
    }
    CHECK_THROWS_AS(ladder_trace_identity(2, 3), std::domain_error);
    CHECK_THROWS_AS(ladder_trace_identity(0, 0), std::domain_error);
}

TEST_CASE("ladder norm pinning") {
    for (int p : {1, 4, 7}) {
        Irrep ir = build_irrep(p, 0);
        Eigen::MatrixXcd vplus = dense(ir.rho[5]);
        Eigen::MatrixXcd pw = Eigen::MatrixXcd::Identity(ir.dim, ir.dim);
        for (int n = 0; n <= std::min(p, 3); ++n) {
            double lhs = (pw.adjoint() * pw).trace().real();
            double rhs = mu_n_squared(p, n);
            CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, rhs));
            pw = vplus * pw;
        }
    }
    CHECK(mu_n_squared(1, 1) == doctest::Approx(1.0).epsilon(1e-12));  // 1/24 * 4!
}

TEST_CASE("irrep cache round-trips") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "su3symb_irrep_cache_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    setenv("SU3SYMB_IRREP_CACHE", dir.c_str(), 1);
    Irrep a = build_irrep(2, 1);
    CHECK(fs::exists(dir / "irrep_2_1.bin"));
    Irrep b = build_irrep(2, 1);  // loads from the cache, then re-certifies
    for (int j = 0; j < 8; ++j) CHECK((dense(a.rho[j]) - dense(b.rho[j])).norm() == 0.0);
    // Corrupt magic: loader must give up and rebuild.
    {
        std::ofstream out(dir / "irrep_2_1.bin", std::ios::binary | std::ios::trunc);
        uint32_t junk = 0xdeadbeef;
        out.write(reinterpret_cast<const char*>(&junk), sizeof junk);
    }
    Irrep c = build_irrep(2, 1);
    for (int j = 0; j < 8; ++j) CHECK((dense(a.rho[j]) - dense(c.rho[j])).norm() == 0.0);
    unsetenv("SU3SYMB_IRREP_CACHE");
    fs::remove_all(dir);
}
