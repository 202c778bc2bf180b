#pragma once

// Concrete sl(3)/su(3) data: exact 3x3 matrices over the Gaussian quad
// field, the two orthonormal bases (the ordered Cartan-Weyl basis e1..e8
// and the Gell-Mann basis E1..E8), their trace pairings and structure
// constants, dominant weights, and the geometry of the Weyl arc.

#include "su3/quad.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <utility>
#include <vector>

namespace su3 {

class Mat3q {
public:
    GaussQuad m[3][3];

    Mat3q() = default;

    static Mat3q zero() { return Mat3q(); }
    static Mat3q identity();
    static Mat3q unit(int r, int c);  // single 1 at (r,c), 0-based

    GaussQuad& at(int r, int c) { return m[r][c]; }
    const GaussQuad& at(int r, int c) const { return m[r][c]; }

    bool is_zero() const;
    GaussQuad trace() const { return m[0][0] + m[1][1] + m[2][2]; }
    Mat3q dagger() const;  // conjugate transpose

    friend bool operator==(const Mat3q& x, const Mat3q& y);
    friend bool operator!=(const Mat3q& x, const Mat3q& y) { return !(x == y); }
    friend Mat3q operator+(const Mat3q& x, const Mat3q& y);
    friend Mat3q operator-(const Mat3q& x, const Mat3q& y);
    friend Mat3q operator*(const Mat3q& x, const Mat3q& y);
    friend Mat3q operator*(const GaussQuad& s, const Mat3q& x);
    Mat3q operator-() const;

    Eigen::Matrix3cd to_complex() const;
};

inline Mat3q commutator(const Mat3q& x, const Mat3q& y) { return x * y - y * x; }

// Bilinear pairing (X,Y) = tr(XY) and Hermitian pairing <X|Y> = tr(X^dag Y).
inline GaussQuad pair_bilinear(const Mat3q& x, const Mat3q& y) { return (x * y).trace(); }
inline GaussQuad pair_hermitian(const Mat3q& x, const Mat3q& y) { return (x.dagger() * y).trace(); }

// The su(2)-triple operators of the defining representation.
struct DefiningOps {
    Mat3q Tp, Tm, T3;  // rows/cols (1,2)
    Mat3q Up, Um, U3;  // rows/cols (2,3)
    Mat3q Vp, Vm, V3;  // rows/cols (1,3)
};
const DefiningOps& defining_ops();

// Ordered Cartan-Weyl basis:
//   e1 = T-, e2 = -U-, e3 = V-   (lowering)
//   e4 = -T+, e5 = U+, e6 = V+   (raising)
//   e7 = -sqrt2 U3, e8 = sqrt(2/3)(T3 + V3)   (Cartan)
// Orthonormal for <X|Y> = tr(X^dag Y), with all-real matrix entries.
const std::array<Mat3q, 8>& gt_basis();

// Gell-Mann basis E_k = i*lambda_k/sqrt2; anti-Hermitian, orthonormal,
// with tr(E_j E_k) = -delta_jk.
const std::array<Mat3q, 8>& gm_basis();

// Numeric copies for double-precision work.
const std::array<Eigen::Matrix3cd, 8>& gt_basis_num();
const std::array<Eigen::Matrix3cd, 8>& gm_basis_num();

enum class BasisTag { GT, GellMann };

// Exact tables c[j][k] = {(l, coeff)} with [b_j, b_k] = sum_l coeff * b_l.
// All entries live in the real quad field (checked at build time).
struct StructureConstants {
    BasisTag tag;
    std::array<std::array<std::vector<std::pair<int, QuadScalar>>, 8>, 8> c;  // 0-based

    const std::vector<std::pair<int, QuadScalar>>& bracket(int j, int k) const { return c[j][k]; }
};
const StructureConstants& structure_constants(BasisTag tag);

// Pairing matrix P[j][k] = tr(e_j E_k) (bilinear, genuinely complex) and its
// exact inverse; these mediate the l <-> x coordinate change for beta.
using Gauss8x8 = std::array<std::array<GaussQuad, 8>, 8>;
const Gauss8x8& gt_gm_pairing();
const Gauss8x8& gt_gm_pairing_inv();

// Exact expansion of X in either orthonormal basis; throws FieldError if X
// is not an exact combination (e.g. nonzero trace part).
std::array<GaussQuad, 8> expand_gt(const Mat3q& X);
std::array<GaussQuad, 8> expand_gm(const Mat3q& X);

// Coordinates x_k(X) = -tr(E_k X); real for X in su(3).
std::array<std::complex<double>, 8> x_coords(const Eigen::Matrix3cd& X);

// Weights. omega(p,q) = p*w1 + q*w2 = i*diag((2p+q)/3, (q-p)/3, -(p+2q)/3).
Mat3q fundamental_weight(int which);  // 1 or 2
struct DominantWeight {
    int p, q;
    Mat3q omega;
};
DominantWeight dominant_weight(int p, int q);

// The Weyl arc {xi_(x,y) : x,y >= 0, x^2+xy+y^2 = 1} parametrized by y.
struct WeylPoint {
    double x, y;
    Eigen::Matrix3cd xi;  // (i/sqrt6) diag(2x+y, -x+y, -x-2y)
};
WeylPoint weyl_point(double y);        // y in [0,1]
double fiber_radius(double y);         // (sqrt3/2) y, for y in [0, 1/sqrt3]
double morse_value(double y);          // (sqrt3/4) y^2, same domain
double weyl_arc_tau(double x, double y);  // 2x^3 + 3x^2 y - 3x y^2 - 2y^3

// Integral-radius ray data for a primitive pair (p1,q1).
struct RationalOrbit {
    int p1 = 0, q1 = 0;
    int norm_m = 0;            // p1^2 + p1 q1 + q1^2
    double r = 0.0;            // sqrt(2/3 * norm_m)
    Eigen::Matrix3cd xi;       // omega(p1,q1)/r, unit norm
    bool xi_exact_available = false;
    Mat3q xi_exact;            // set when 1/r lies in the quad field (norm_m in {1,3})
};
RationalOrbit rational_orbit(int p1, int q1);

}  // namespace su3
