#include "su3/sl3.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace su3 {

Mat3q Mat3q::identity() {
    Mat3q r;
    for (int i = 0; i < 3; ++i) r.m[i][i] = GaussQuad(1);
    return r;
}

Mat3q Mat3q::unit(int r, int c) {
    Mat3q x;
    x.m[r][c] = GaussQuad(1);
    return x;
}

bool Mat3q::is_zero() const {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!m[i][j].is_zero()) return false;
    return true;
}

Mat3q Mat3q::dagger() const {
    Mat3q r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i].conj();
    return r;
}

bool operator==(const Mat3q& x, const Mat3q& y) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (x.m[i][j] != y.m[i][j]) return false;
    return true;
}

Mat3q operator+(const Mat3q& x, const Mat3q& y) {
    Mat3q r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = x.m[i][j] + y.m[i][j];
    return r;
}

Mat3q operator-(const Mat3q& x, const Mat3q& y) {
    Mat3q r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = x.m[i][j] - y.m[i][j];
    return r;
}

Mat3q operator*(const Mat3q& x, const Mat3q& y) {
    Mat3q r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            GaussQuad acc;
            for (int k = 0; k < 3; ++k) acc += x.m[i][k] * y.m[k][j];
            r.m[i][j] = acc;
        }
    return r;
}

Mat3q operator*(const GaussQuad& s, const Mat3q& x) {
    Mat3q r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = s * x.m[i][j];
    return r;
}

Mat3q Mat3q::operator-() const { return GaussQuad(-1) * *this; }

Eigen::Matrix3cd Mat3q::to_complex() const {
    Eigen::Matrix3cd r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m[i][j].to_complex();
    return r;
}

const DefiningOps& defining_ops() {
    static const DefiningOps ops = [] {
        DefiningOps o;
        const GaussQuad half{Rational(1, 2)};
        o.Tp = Mat3q::unit(0, 1);
        o.Tm = Mat3q::unit(1, 0);
        o.T3 = half * (Mat3q::unit(0, 0) - Mat3q::unit(1, 1));
        o.Up = Mat3q::unit(1, 2);
        o.Um = Mat3q::unit(2, 1);
        o.U3 = half * (Mat3q::unit(1, 1) - Mat3q::unit(2, 2));
        o.Vp = Mat3q::unit(0, 2);
        o.Vm = Mat3q::unit(2, 0);
        o.V3 = half * (Mat3q::unit(0, 0) - Mat3q::unit(2, 2));
        return o;
    }();
    return ops;
}

const std::array<Mat3q, 8>& gt_basis() {
    static const std::array<Mat3q, 8> basis = [] {
        const DefiningOps& o = defining_ops();
        const GaussQuad sqrt2{QuadScalar::sqrt2()};
        const GaussQuad sqrt_two_thirds{QuadScalar(0, 0, 0, Rational(1, 3))};  // sqrt6/3
        std::array<Mat3q, 8> e;
        e[0] = o.Tm;
        e[1] = -o.Um;
        e[2] = o.Vm;
        e[3] = -o.Tp;
        e[4] = o.Up;
        e[5] = o.Vp;
        e[6] = -(sqrt2 * o.U3);
        e[7] = sqrt_two_thirds * (o.T3 + o.V3);
        return e;
    }();
    return basis;
}

const std::array<Mat3q, 8>& gm_basis() {
    static const std::array<Mat3q, 8> basis = [] {
        auto U = [](int r, int c) { return Mat3q::unit(r, c); };
        const GaussQuad inv_sqrt2{QuadScalar(0, Rational(1, 2), 0, 0)};            // sqrt2/2
        const GaussQuad i_inv_sqrt2{QuadScalar(0), QuadScalar(0, Rational(1, 2), 0, 0)};
        const GaussQuad i_inv_sqrt6{QuadScalar(0), QuadScalar(0, 0, 0, Rational(1, 6))};
        std::array<Mat3q, 8> E;
        E[0] = i_inv_sqrt2 * (U(0, 1) + U(1, 0));
        E[1] = inv_sqrt2 * (U(0, 1) - U(1, 0));
        E[2] = i_inv_sqrt2 * (U(0, 0) - U(1, 1));
        E[3] = i_inv_sqrt2 * (U(0, 2) + U(2, 0));
        E[4] = inv_sqrt2 * (U(0, 2) - U(2, 0));
        E[5] = i_inv_sqrt2 * (U(1, 2) + U(2, 1));
        E[6] = inv_sqrt2 * (U(1, 2) - U(2, 1));
        E[7] = i_inv_sqrt6 * (U(0, 0) + U(1, 1) - GaussQuad(2) * U(2, 2));
        return E;
    }();
    return basis;
}

namespace {

std::array<Eigen::Matrix3cd, 8> to_numeric(const std::array<Mat3q, 8>& basis) {
    std::array<Eigen::Matrix3cd, 8> out;
    for (int j = 0; j < 8; ++j) out[j] = basis[j].to_complex();
    return out;
}

}  // namespace

const std::array<Eigen::Matrix3cd, 8>& gt_basis_num() {
    static const std::array<Eigen::Matrix3cd, 8> b = to_numeric(gt_basis());
    return b;
}

const std::array<Eigen::Matrix3cd, 8>& gm_basis_num() {
    static const std::array<Eigen::Matrix3cd, 8> b = to_numeric(gm_basis());
    return b;
}

namespace {

StructureConstants build_constants(BasisTag tag) {
    const std::array<Mat3q, 8>& basis = tag == BasisTag::GT ? gt_basis() : gm_basis();
    StructureConstants sc;
    sc.tag = tag;
    for (int j = 0; j < 8; ++j) {
        for (int k = 0; k < 8; ++k) {
            Mat3q comm = commutator(basis[j], basis[k]);
            Mat3q recon;
            for (int l = 0; l < 8; ++l) {
                GaussQuad coeff = pair_hermitian(basis[l], comm);
                if (coeff.is_zero()) continue;
                QuadScalar real = require_real(coeff, "structure constant");
                sc.c[j][k].emplace_back(l, real);
                recon = recon + GaussQuad(real) * basis[l];
            }
            if (!(recon == comm)) throw FieldError("commutator left the basis span");
        }
    }
    return sc;
}

}  // namespace

const StructureConstants& structure_constants(BasisTag tag) {
    static const StructureConstants gt = build_constants(BasisTag::GT);
    static const StructureConstants gm = build_constants(BasisTag::GellMann);
    return tag == BasisTag::GT ? gt : gm;
}

namespace {

Gauss8x8 invert_gauss8(const Gauss8x8& a) {
    // Gauss-Jordan over the exact field.
    std::array<std::array<GaussQuad, 16>, 8> w{};
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) w[i][j] = a[i][j];
        w[i][8 + i] = GaussQuad(1);
    }
    for (int col = 0; col < 8; ++col) {
        int pivot = -1;
        for (int row = col; row < 8; ++row)
            if (!w[row][col].is_zero()) { pivot = row; break; }
        if (pivot < 0) throw FieldError("pairing matrix is singular");
        std::swap(w[col], w[pivot]);
        GaussQuad inv = w[col][col].invert();
        for (int j = 0; j < 16; ++j) w[col][j] = inv * w[col][j];
        for (int row = 0; row < 8; ++row) {
            if (row == col || w[row][col].is_zero()) continue;
            GaussQuad f = w[row][col];
            for (int j = 0; j < 16; ++j) w[row][j] = w[row][j] - f * w[col][j];
        }
    }
    Gauss8x8 out;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) out[i][j] = w[i][8 + j];
    return out;
}

}  // namespace

const Gauss8x8& gt_gm_pairing() {
    static const Gauss8x8 p = [] {
        Gauss8x8 out;
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) out[j][k] = pair_bilinear(gt_basis()[j], gm_basis()[k]);
        return out;
    }();
    return p;
}

const Gauss8x8& gt_gm_pairing_inv() {
    static const Gauss8x8 p = invert_gauss8(gt_gm_pairing());
    return p;
}

namespace {

std::array<GaussQuad, 8> expand_in(const std::array<Mat3q, 8>& basis, const Mat3q& X, const char* what) {
    std::array<GaussQuad, 8> coeff;
    Mat3q recon;
    for (int j = 0; j < 8; ++j) {
        coeff[j] = pair_hermitian(basis[j], X);
        if (!coeff[j].is_zero()) recon = recon + coeff[j] * basis[j];
    }
    if (!(recon == X)) throw FieldError(std::string(what) + ": matrix is not in the sl(3) span");
    return coeff;
}

}  // namespace

std::array<GaussQuad, 8> expand_gt(const Mat3q& X) { return expand_in(gt_basis(), X, "expand_gt"); }
std::array<GaussQuad, 8> expand_gm(const Mat3q& X) { return expand_in(gm_basis(), X, "expand_gm"); }

std::array<std::complex<double>, 8> x_coords(const Eigen::Matrix3cd& X) {
    std::array<std::complex<double>, 8> x;
    const auto& E = gm_basis_num();
    for (int k = 0; k < 8; ++k) x[k] = -(E[k] * X).trace();
    return x;
}

Mat3q fundamental_weight(int which) {
    if (which != 1 && which != 2) throw std::domain_error("fundamental_weight: index must be 1 or 2");
    const GaussQuad i = GaussQuad::i();
    Mat3q w;
    if (which == 1) {
        w.m[0][0] = i * GaussQuad(Rational(2, 3));
        w.m[1][1] = i * GaussQuad(Rational(-1, 3));
        w.m[2][2] = i * GaussQuad(Rational(-1, 3));
    } else {
        w.m[0][0] = i * GaussQuad(Rational(1, 3));
        w.m[1][1] = i * GaussQuad(Rational(1, 3));
        w.m[2][2] = i * GaussQuad(Rational(-2, 3));
    }
    return w;
}

DominantWeight dominant_weight(int p, int q) {
    if (p < 0 || q < 0) throw std::domain_error("dominant_weight: p,q must be nonnegative");
    const GaussQuad i = GaussQuad::i();
    Mat3q w;
    w.m[0][0] = i * GaussQuad(Rational(2 * p + q, 3));
    w.m[1][1] = i * GaussQuad(Rational(q - p, 3));
    w.m[2][2] = i * GaussQuad(Rational(-(p + 2 * q), 3));
    return DominantWeight{p, q, w};
}

WeylPoint weyl_point(double y) {
    if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("weyl_point: y must lie in [0,1]");
    double x = (-y + std::sqrt(4.0 - 3.0 * y * y)) / 2.0;
    WeylPoint pt;
    pt.x = x;
    pt.y = y;
    pt.xi = Eigen::Matrix3cd::Zero();
    const std::complex<double> i(0.0, 1.0);
    double s6 = std::sqrt(6.0);
    pt.xi(0, 0) = i * (2.0 * x + y) / s6;
    pt.xi(1, 1) = i * (-x + y) / s6;
    pt.xi(2, 2) = i * (-x - 2.0 * y) / s6;
    return pt;
}

namespace {

void check_fiber_domain(double y, const char* who) {
    if (!(y >= 0.0 && y <= 1.0 / std::sqrt(3.0) + 1e-12))
        throw std::domain_error(std::string(who) + ": y must lie in [0, 1/sqrt3]");
}

}  // namespace

double fiber_radius(double y) {
    check_fiber_domain(y, "fiber_radius");
    return std::sqrt(3.0) / 2.0 * y;
}

double morse_value(double y) {
    check_fiber_domain(y, "morse_value");
    return std::sqrt(3.0) / 4.0 * y * y;
}

double weyl_arc_tau(double x, double y) {
    return 2.0 * x * x * x + 3.0 * x * x * y - 3.0 * x * y * y - 2.0 * y * y * y;
}

RationalOrbit rational_orbit(int p1, int q1) {
    if (p1 < 0 || q1 < 0) throw std::domain_error("rational_orbit: pair must be nonnegative");
    if (p1 == 0 && q1 == 0) throw std::domain_error("rational_orbit: (0,0) is not a ray");
    if (std::gcd(p1, q1) != 1)
        throw std::domain_error("rational_orbit: pair is not primitive on its ray");

    RationalOrbit orb;
    orb.p1 = p1;
    orb.q1 = q1;
    orb.norm_m = p1 * p1 + p1 * q1 + q1 * q1;
    orb.r = std::sqrt(2.0 / 3.0 * orb.norm_m);
    orb.xi = dominant_weight(p1, q1).omega.to_complex() / orb.r;

    // 1/r lies in the quad field exactly when norm_m is 1 or 3 for primitive
    // pairs: 1/r = sqrt(3/(2m)).
    if (orb.norm_m == 1) {
        orb.xi_exact_available = true;
        GaussQuad inv_r{QuadScalar(0, 0, 0, Rational(1, 2))};  // sqrt6/2
        orb.xi_exact = inv_r * dominant_weight(p1, q1).omega;
    } else if (orb.norm_m == 3) {
        orb.xi_exact_available = true;
        GaussQuad inv_r{QuadScalar(0, Rational(1, 2), 0, 0)};  // sqrt2/2
        orb.xi_exact = inv_r * dominant_weight(p1, q1).omega;
    }
    return orb;
}

}  // namespace su3
