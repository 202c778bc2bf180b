#pragma once

// Numeric irreducible representations of sl(3)/SU(3) built from
// Gelfand-Tsetlin patterns, with internal certification (bracket fidelity,
// highest-weight data, Casimir scalar-ness) instead of trust in the matrix
// element formulas. Also: Haar group sampling, coherent states, and the
// ladder trace identities used by the characteristic-number checks.

#include "su3/quad.hpp"
#include "su3/sl3.hpp"
#include "su3/uea.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace su3 {

using SpMat = Eigen::SparseMatrix<std::complex<double>>;

struct CertificationError : std::runtime_error {
    explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

struct Irrep {
    int p = 0, q = 0;
    int dim = 0;
    int hw_index = 0;                          // highest-weight basis vector
    std::array<SpMat, 8> rho;                  // images of e1..e8
    std::array<SpMat, 8> rhoE;                 // images of E1..E8
    std::vector<std::array<int, 3>> patterns;  // (mu1, mu2, nu) per basis vector
};

// GT construction + certification. Throws std::domain_error on bad labels or
// when the dimension exceeds the cap, CertificationError if any internal
// invariant fails. Honors the SU3SYMB_IRREP_CACHE directory if set.
Irrep build_irrep(int p, int q, int dim_cap = 1000);

inline long irrep_dim(int p, int q) {
    return static_cast<long>(p + 1) * (q + 1) * (p + q + 2) / 2;
}

// Dense image of a PBW element: linear extension of the ordered products.
Eigen::MatrixXcd rho_word(const Irrep& irrep, const UeaElement& u);

// Apply the image of a PBW monomial to a vector (rightmost factor first).
Eigen::VectorXcd apply_monomial(const Irrep& irrep, const Mono8& m, const Eigen::VectorXcd& v);

struct GroupSample {
    uint64_t seed = 0;
    Eigen::Matrix3cd defining;      // g in SU(3)
    Eigen::Matrix3cd log_defining;  // X with exp(X) = g, traceless anti-Hermitian
    Eigen::Matrix<double, 8, 8> ad;  // Ad_g in the E-basis
};

GroupSample sample_group(uint64_t seed);                            // Haar draw
GroupSample group_sample_from_matrix(const Eigen::Matrix3cd& g);   // e.g. identity

// rho(X) for X in su(3) (numeric), as a sparse matrix.
SpMat rho_algebra(const Irrep& irrep, const Eigen::Matrix3cd& X);

// exp(rho(X)) applied to the highest-weight vector; unit norm.
Eigen::VectorXcd coherent_state(const Irrep& irrep, const GroupSample& g);

// Dense exp(rho(X)) via Hermitian eigendecomposition of i*rho(X); unitary.
Eigen::MatrixXcd rep_matrix(const Irrep& irrep, const GroupSample& g);

// <g v_hw, A g v_hw> = tr(A Pi_>^g).
std::complex<double> berezin_symbol_operator(const Irrep& irrep, const Eigen::MatrixXcd& A,
                                             const GroupSample& g);

// lhs = sum_m tr((2T3+U3) Tm^(n-m) Tp^(n-m) Tp^m Tm^m) in the (p,0) irrep;
// rhs = (n/4) n!(n+1)!/(2n+3)! * (p+n+2)!/(p-n)! * (2p+3).
struct LadderTrace {
    double lhs, rhs;
};
LadderTrace ladder_trace_identity(int p, int n);

// Exact rhs of the norm pinning tr((V+^n)^dag V+^n) = mu_n(p)^2 in (p,0).
double mu_n_squared(int p, int n);

}  // namespace su3
