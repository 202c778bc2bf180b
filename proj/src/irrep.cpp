#include "su3/irrep.hpp"

#include "su3/rational.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace su3 {

namespace {

using cplx = std::complex<double>;

struct PatternTable {
    std::vector<std::array<int, 3>> pats;
    std::map<std::array<int, 3>, int> index;
};

// Triangular patterns for top row (p+q, q, 0): mu1 in [q, p+q], mu2 in [0, q],
// nu in [mu2, mu1]. Enumerated descending so the highest-weight pattern
// (p+q, q, p+q) lands at index 0.
PatternTable enumerate_patterns(int p, int q) {
    PatternTable t;
    const int l1 = p + q, l2 = q;
    for (int mu1 = l1; mu1 >= l2; --mu1)
        for (int mu2 = l2; mu2 >= 0; --mu2)
            for (int nu = mu1; nu >= mu2; --nu) {
                t.index[{mu1, mu2, nu}] = static_cast<int>(t.pats.size());
                t.pats.push_back({mu1, mu2, nu});
            }
    return t;
}

SpMat from_triplets(int dim, const std::vector<Eigen::Triplet<cplx>>& trips) {
    SpMat m(dim, dim);
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    return m;
}

SpMat diag_from(const std::vector<double>& d) {
    std::vector<Eigen::Triplet<cplx>> trips;
    for (int i = 0; i < static_cast<int>(d.size()); ++i)
        if (d[i] != 0.0) trips.emplace_back(i, i, cplx(d[i], 0.0));
    return from_triplets(static_cast<int>(d.size()), trips);
}

double frob_norm(const SpMat& m) {
    double s = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it) s += std::norm(it.value());
    return std::sqrt(s);
}

// gl(3) raising/lowering matrix elements on GT patterns. Validity of the
// target pattern is checked first; the formulas involve denominators that
// vanish exactly on invalid targets.
void build_gl3_generators(const PatternTable& t, int p, int q, SpMat& E12, SpMat& E21, SpMat& E23,
                          SpMat& E32, std::vector<double>& h11, std::vector<double>& h22,
                          std::vector<double>& h33) {
    const int l1 = p + q, l2 = q, l3 = 0;
    const int dim = static_cast<int>(t.pats.size());
    std::vector<Eigen::Triplet<cplx>> t12, t23;
    h11.assign(dim, 0.0);
    h22.assign(dim, 0.0);
    h33.assign(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        const auto [mu1, mu2, nu] = t.pats[i];
        h11[i] = nu;
        h22[i] = mu1 + mu2 - nu;
        h33[i] = l1 + l2 + l3 - mu1 - mu2;
        // E12: nu -> nu + 1
        if (nu + 1 <= mu1) {
            double c = std::sqrt(static_cast<double>(mu1 - nu) * (nu - mu2 + 1));
            t12.emplace_back(t.index.at({mu1, mu2, nu + 1}), i, cplx(c, 0.0));
        }
        // E23: mu1 -> mu1 + 1
        if (mu1 + 1 <= l1) {
            double num = static_cast<double>(l1 - mu1) * (mu1 - l2 + 1) * (mu1 - l3 + 2) *
                         (mu1 - nu + 1);
            double den = static_cast<double>(mu1 - mu2 + 1) * (mu1 - mu2 + 2);
            t23.emplace_back(t.index.at({mu1 + 1, mu2, nu}), i, cplx(std::sqrt(num / den), 0.0));
        }
        // E23: mu2 -> mu2 + 1
        if (mu2 + 1 <= l2 && mu2 + 1 <= nu) {
            double num = static_cast<double>(l1 - mu2 + 1) * (l2 - mu2) * (mu2 + 1 - l3) *
                         (nu - mu2);
            double den = static_cast<double>(mu1 - mu2 + 1) * (mu1 - mu2);
            t23.emplace_back(t.index.at({mu1, mu2 + 1, nu}), i, cplx(std::sqrt(num / den), 0.0));
        }
    }
    E12 = from_triplets(dim, t12);
    E23 = from_triplets(dim, t23);
    E21 = SpMat(E12.adjoint());
    E32 = SpMat(E23.adjoint());
}

SpMat comm(const SpMat& a, const SpMat& b) {
    SpMat r = (a * b - b * a).pruned(1e-300);
    r.makeCompressed();
    return r;
}

void certify(const Irrep& ir) {
    const auto& sc = structure_constants(BasisTag::GT);
    // Bracket fidelity against the exact structure constants.
    for (int j = 0; j < 8; ++j)
        for (int k = j + 1; k < 8; ++k) {
            SpMat lhs = comm(ir.rho[j], ir.rho[k]);
            SpMat rhs(ir.dim, ir.dim);
            for (const auto& [l, coeff] : sc.bracket(j, k))
                rhs += coeff.to_double() * ir.rho[l];
            double scale = frob_norm(ir.rho[j]) * frob_norm(ir.rho[k]);
            double err = frob_norm(SpMat(lhs - rhs)) / std::max(scale, 1.0);
            if (err > 1e-10)
                throw CertificationError("bracket fidelity failed for (e" + std::to_string(j + 1) +
                                         ", e" + std::to_string(k + 1) + "): err = " +
                                         std::to_string(err));
        }
    // Highest-weight vector: annihilated by the raising images, weight (p,q).
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(ir.dim);
    v[ir.hw_index] = 1.0;
    for (int j : {4, 5, 6}) {
        double n = (ir.rho[j - 1] * v).norm();
        if (n > 1e-12)
            throw CertificationError("highest-weight vector not annihilated by e" +
                                     std::to_string(j));
    }
    // 2T3 = E1 h-combination: weight labels read off the diagonal images.
    auto diag_at = [&](const SpMat& m, int i) { return m.coeff(i, i); };
    SpMat twoT3 = SpMat((std::sqrt(2.0) / 2.0) * ir.rho[6] +
                        (std::sqrt(6.0) / 2.0) * ir.rho[7]);
    SpMat twoU3 = SpMat(-std::sqrt(2.0) * ir.rho[6]);
    if (std::abs(diag_at(twoT3, ir.hw_index) - cplx(ir.p, 0)) > 1e-10 ||
        std::abs(diag_at(twoU3, ir.hw_index) - cplx(ir.q, 0)) > 1e-10)
        throw CertificationError("highest weight is not (p, q)");
    // Quadratic Casimir -sum rhoE_k^2 must be scalar.
    SpMat cas(ir.dim, ir.dim);
    for (int k = 0; k < 8; ++k) cas -= SpMat(ir.rhoE[k] * ir.rhoE[k]);
    cplx lead = cas.coeff(0, 0);
    double offmax = 0.0, diagdev = 0.0;
    for (int k = 0; k < cas.outerSize(); ++k)
        for (SpMat::InnerIterator it(cas, k); it; ++it) {
            if (it.row() == it.col())
                diagdev = std::max(diagdev, std::abs(it.value() - lead));
            else
                offmax = std::max(offmax, std::abs(it.value()));
        }
    if (offmax > 1e-10 * std::abs(lead) || diagdev > 1e-10 * std::abs(lead))
        throw CertificationError("quadratic Casimir is not scalar");
}

std::string cache_path(int p, int q) {
    const char* dir = std::getenv("SU3SYMB_IRREP_CACHE");
    if (!dir || !*dir) return {};
    std::ostringstream os;
    os << dir << "/irrep_" << p << "_" << q << ".bin";
    return os.str();
}

constexpr uint32_t kCacheMagic = 0x53553342;  // "SU3B"

bool load_cached(const std::string& path, Irrep& ir) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    auto rd_u32 = [&] {
        uint32_t v = 0;
        in.read(reinterpret_cast<char*>(&v), sizeof v);
        return v;
    };
    if (rd_u32() != kCacheMagic) return false;
    if (static_cast<int>(rd_u32()) != ir.p || static_cast<int>(rd_u32()) != ir.q) return false;
    uint32_t dim = rd_u32();
    if (static_cast<int>(dim) != ir.dim) return false;
    auto rd_mat = [&](SpMat& m) {
        uint32_t nnz = rd_u32();
        if (!in || nnz > dim * dim) return false;
        std::vector<Eigen::Triplet<cplx>> trips;
        trips.reserve(nnz);
        for (uint32_t i = 0; i < nnz; ++i) {
            uint32_t r = rd_u32(), c = rd_u32();
            double re, im;
            in.read(reinterpret_cast<char*>(&re), sizeof re);
            in.read(reinterpret_cast<char*>(&im), sizeof im);
            if (!in || r >= dim || c >= dim) return false;
            trips.emplace_back(r, c, cplx(re, im));
        }
        m = from_triplets(static_cast<int>(dim), trips);
        return true;
    };
    for (auto& m : ir.rho)
        if (!rd_mat(m)) return false;
    for (auto& m : ir.rhoE)
        if (!rd_mat(m)) return false;
    return static_cast<bool>(in);
}

void save_cached(const std::string& path, const Irrep& ir) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return;
    auto wr_u32 = [&](uint32_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); };
    wr_u32(kCacheMagic);
    wr_u32(static_cast<uint32_t>(ir.p));
    wr_u32(static_cast<uint32_t>(ir.q));
    wr_u32(static_cast<uint32_t>(ir.dim));
    auto wr_mat = [&](const SpMat& m) {
        wr_u32(static_cast<uint32_t>(m.nonZeros()));
        for (int k = 0; k < m.outerSize(); ++k)
            for (SpMat::InnerIterator it(m, k); it; ++it) {
                wr_u32(static_cast<uint32_t>(it.row()));
                wr_u32(static_cast<uint32_t>(it.col()));
                double re = it.value().real(), im = it.value().imag();
                out.write(reinterpret_cast<const char*>(&re), sizeof re);
                out.write(reinterpret_cast<const char*>(&im), sizeof im);
            }
    };
    for (const auto& m : ir.rho) wr_mat(m);
    for (const auto& m : ir.rhoE) wr_mat(m);
}

}  // namespace

Irrep build_irrep(int p, int q, int dim_cap) {
    if (p < 0 || q < 0 || (p == 0 && q == 0))
        throw std::domain_error("build_irrep: labels must be nonnegative, not both zero");
    long dim = irrep_dim(p, q);
    if (dim > dim_cap)
        throw std::domain_error("build_irrep: dimension " + std::to_string(dim) +
                                " exceeds cap " + std::to_string(dim_cap));

    Irrep ir;
    ir.p = p;
    ir.q = q;
    ir.dim = static_cast<int>(dim);
    auto table = enumerate_patterns(p, q);
    ir.patterns = table.pats;
    if (static_cast<long>(table.pats.size()) != dim)
        throw CertificationError("pattern count does not match the dimension formula");
    ir.hw_index = table.index.at({p + q, q, p + q});

    std::string path = cache_path(p, q);
    bool loaded = !path.empty() && load_cached(path, ir);
    if (!loaded) {
        SpMat E12, E21, E23, E32;
        std::vector<double> h11, h22, h33;
        build_gl3_generators(table, p, q, E12, E21, E23, E32, h11, h22, h33);
        SpMat E13 = comm(E12, E23);
        SpMat E31 = comm(E32, E21);

        ir.rho[0] = E21;
        ir.rho[1] = SpMat(-E32);
        ir.rho[2] = E31;
        ir.rho[3] = SpMat(-E12);
        ir.rho[4] = E23;
        ir.rho[5] = E13;
        std::vector<double> d7(ir.dim), d8(ir.dim);
        const double s2 = std::sqrt(2.0), s23 = std::sqrt(2.0 / 3.0);
        for (int i = 0; i < ir.dim; ++i) {
            d7[i] = -s2 * (h22[i] - h33[i]) / 2.0;
            d8[i] = s23 * (h11[i] - (h22[i] + h33[i]) / 2.0);
        }
        ir.rho[6] = diag_from(d7);
        ir.rho[7] = diag_from(d8);

        // Gell-Mann images from the exact change of basis E_k = sum_j <e_j|E_k> e_j.
        // The e_j are not anti-Hermitian, so this must be the Hermitian pairing
        // tr(e_j^dag E_k), not a sign of the bilinear pairing matrix.
        const auto& gt = gt_basis();
        const auto& gm = gm_basis();
        for (int k = 0; k < 8; ++k) {
            SpMat acc(ir.dim, ir.dim);
            for (int j = 0; j < 8; ++j) {
                cplx c = pair_hermitian(gt[j], gm[k]).to_complex();
                if (c != cplx(0.0, 0.0)) acc += c * ir.rho[j];
            }
            acc.makeCompressed();
            ir.rhoE[k] = acc;
        }
    }

    certify(ir);
    if (!loaded && !path.empty()) save_cached(path, ir);
    return ir;
}

Eigen::MatrixXcd rho_word(const Irrep& irrep, const UeaElement& u) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(irrep.dim, irrep.dim);
    for (const auto& [mono, coeff] : u.terms()) {
        Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(irrep.dim, irrep.dim);
        for (int j = 0; j < 8; ++j)
            for (int rep = 0; rep < mono[j]; ++rep) prod = prod * irrep.rho[j];
        out += coeff.to_complex() * prod;
    }
    return out;
}

Eigen::VectorXcd apply_monomial(const Irrep& irrep, const Mono8& m, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd w = v;
    for (int j = 7; j >= 0; --j)
        for (int rep = 0; rep < m[j]; ++rep) w = irrep.rho[j] * w;
    return w;
}

namespace {

// Deterministic standard normals: explicit Box-Muller over mt19937_64 so the
// stream does not depend on the standard library's distribution internals.
struct NormalStream {
    std::mt19937_64 eng;
    bool have_spare = false;
    double spare = 0.0;
    explicit NormalStream(uint64_t seed) : eng(seed) {}
    double uniform01() {
        // in (0, 1]: avoids log(0)
        return (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
    }
    double next() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        double u1 = uniform01(), u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1)), t = 2.0 * std::numbers::pi * u2;
        spare = r * std::sin(t);
        have_spare = true;
        return r * std::cos(t);
    }
};

// Haar unitary via Gram-Schmidt QR of a complex Ginibre matrix with the
// diagonal-phase fix, then det-normalized into SU(3).
Eigen::Matrix3cd haar_su3(uint64_t seed) {
    NormalStream ns(seed);
    Eigen::Matrix3cd a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = cplx(ns.next(), ns.next()) / std::sqrt(2.0);
    Eigen::Matrix3cd qmat;
    // Gram-Schmidt yields the QR factor with positive real R diagonal, which
    // makes Q exactly Haar-distributed; no phase correction needed.
    for (int j = 0; j < 3; ++j) {
        Eigen::Vector3cd v = a.col(j);
        for (int k = 0; k < j; ++k) v -= qmat.col(k).dot(a.col(j)) * qmat.col(k);
        qmat.col(j) = v / v.norm();
    }
    cplx det = qmat.determinant();
    double theta = std::arg(det);
    qmat *= std::exp(cplx(0.0, -theta / 3.0));
    return qmat;
}

// Principal log of g in SU(3) with the angle branch adjusted so the trace is
// exactly zero; result is anti-Hermitized to kill rounding skew.
Eigen::Matrix3cd su3_log(const Eigen::Matrix3cd& g) {
    Eigen::ComplexSchur<Eigen::Matrix3cd> schur(g);
    const auto& t = schur.matrixT();
    const auto& u = schur.matrixU();
    double theta[3];
    for (int i = 0; i < 3; ++i) theta[i] = std::arg(t(i, i));
    double s = theta[0] + theta[1] + theta[2];
    long wind = std::lround(s / (2.0 * std::numbers::pi));
    if (wind != 0) {
        // Shift the angle that keeps all branches in (-2pi, 2pi).
        int idx = 0;
        for (int i = 1; i < 3; ++i) {
            if (wind > 0 && theta[i] > theta[idx]) idx = i;
            if (wind < 0 && theta[i] < theta[idx]) idx = i;
        }
        theta[idx] -= 2.0 * std::numbers::pi * static_cast<double>(wind);
    }
    Eigen::Matrix3cd d = Eigen::Matrix3cd::Zero();
    for (int i = 0; i < 3; ++i) d(i, i) = cplx(0.0, theta[i]);
    Eigen::Matrix3cd x = u * d * u.adjoint();
    x = 0.5 * (x - x.adjoint().eval());
    cplx tr = x.trace();
    for (int i = 0; i < 3; ++i) x(i, i) -= tr / 3.0;
    return x;
}

GroupSample finish_sample(uint64_t seed, const Eigen::Matrix3cd& g) {
    GroupSample s;
    s.seed = seed;
    s.defining = g;
    s.log_defining = su3_log(g);
    const auto E = gm_basis_num();
    for (int l = 0; l < 8; ++l)
        for (int k = 0; k < 8; ++k) {
            // Ad_g E_k = g E_k g^dag; coefficient along E_l is -tr(E_l g E_k g^dag).
            cplx v = -(E[l] * g * E[k] * g.adjoint()).trace();
            s.ad(l, k) = v.real();
        }
    return s;
}

}  // namespace

GroupSample sample_group(uint64_t seed) { return finish_sample(seed, haar_su3(seed)); }

GroupSample group_sample_from_matrix(const Eigen::Matrix3cd& g) {
    Eigen::Matrix3cd gg = g;
    cplx det = gg.determinant();
    if (std::abs(std::abs(det) - 1.0) > 1e-10 ||
        (gg * gg.adjoint() - Eigen::Matrix3cd::Identity()).norm() > 1e-10)
        throw std::domain_error("group_sample_from_matrix: not unitary");
    gg *= std::exp(cplx(0.0, -std::arg(det) / 3.0));
    return finish_sample(0, gg);
}

SpMat rho_algebra(const Irrep& irrep, const Eigen::Matrix3cd& X) {
    const auto E = gm_basis_num();
    SpMat acc(irrep.dim, irrep.dim);
    for (int k = 0; k < 8; ++k) {
        cplx c = (E[k].adjoint() * X).trace();  // <E_k|X>
        if (std::abs(c) > 0.0) acc += c * irrep.rhoE[k];
    }
    acc.makeCompressed();
    return acc;
}

Eigen::VectorXcd coherent_state(const Irrep& irrep, const GroupSample& g) {
    SpMat A = rho_algebra(irrep, g.log_defining);
    // Scaling + truncated Taylor; A is anti-Hermitian so the result has unit
    // norm up to rounding, which the final normalization removes.
    double a1 = 0.0;
    for (int k = 0; k < A.outerSize(); ++k) {
        double col = 0.0;
        for (SpMat::InnerIterator it(A, k); it; ++it) col += std::abs(it.value());
        a1 = std::max(a1, col);
    }
    int m = 1;
    while (a1 / m > 1.0 && m < (1 << 20)) m <<= 1;
    SpMat B = SpMat(A / static_cast<double>(m));
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(irrep.dim);
    v[irrep.hw_index] = 1.0;
    for (int step = 0; step < m; ++step) {
        Eigen::VectorXcd w = v, term = v;
        for (int k = 1; k <= 40; ++k) {
            term = (B * term) / static_cast<double>(k);
            w += term;
            if (term.norm() <= 1e-18 * w.norm()) break;
        }
        v = w;
    }
    return v / v.norm();
}

Eigen::MatrixXcd rep_matrix(const Irrep& irrep, const GroupSample& g) {
    Eigen::MatrixXcd A = Eigen::MatrixXcd(rho_algebra(irrep, g.log_defining));
    Eigen::MatrixXcd H = cplx(0.0, 1.0) * A;  // Hermitian
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    Eigen::VectorXcd phases(irrep.dim);
    for (int i = 0; i < irrep.dim; ++i)
        phases[i] = std::exp(cplx(0.0, -es.eigenvalues()[i]));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

std::complex<double> berezin_symbol_operator(const Irrep& irrep, const Eigen::MatrixXcd& A,
                                             const GroupSample& g) {
    Eigen::VectorXcd psi = coherent_state(irrep, g);
    return psi.dot(A * psi);
}

namespace {

Rational factorial_ratio(int hi, int lo) {  // hi! / lo!, hi >= lo >= 0
    Int v = 1;
    for (int k = lo + 1; k <= hi; ++k) v *= k;
    return Rational(v);
}

Rational factorial(int n) { return factorial_ratio(n, 0); }

}  // namespace

LadderTrace ladder_trace_identity(int p, int n) {
    if (p < 1 || n < 0 || n > p)
        throw std::domain_error("ladder_trace_identity: need p >= 1 and 0 <= n <= p");
    Irrep ir = build_irrep(p, 0);
    Eigen::MatrixXcd tm = Eigen::MatrixXcd(ir.rho[0]);       // T-
    Eigen::MatrixXcd tp = Eigen::MatrixXcd(-1.0 * ir.rho[3]);  // T+
    // 2T3 + U3 as a diagonal image, via the exact expansion in e7, e8.
    Mat3q h = GaussQuad(QuadScalar(2)) * defining_ops().T3 + defining_ops().U3;
    Eigen::MatrixXcd A = rho_word(ir, UeaElement::from_matrix(h));

    auto mat_pow = [&](const Eigen::MatrixXcd& mat, int e) {
        Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(ir.dim, ir.dim);
        for (int i = 0; i < e; ++i) r = r * mat;
        return r;
    };
    cplx lhs = 0.0;
    for (int m = 0; m <= n; ++m) {
        Eigen::MatrixXcd prod =
            mat_pow(tm, n - m) * mat_pow(tp, n - m) * mat_pow(tp, m) * mat_pow(tm, m);
        lhs += (A * prod).trace();
    }
    Rational rhs = Rational(n, 4) * factorial(n) * factorial(n + 1) / factorial(2 * n + 3) *
                   factorial_ratio(p + n + 2, p - n) * Rational(2 * p + 3);
    return LadderTrace{lhs.real(), rat_double(rhs)};
}

double mu_n_squared(int p, int n) {
    if (p < 1 || n < 0 || n > p)
        throw std::domain_error("mu_n_squared: need p >= 1 and 0 <= n <= p");
    Rational v = factorial(n) * factorial(n) / factorial(2 * n + 2) *
                 factorial_ratio(p + n + 2, p - n);
    return rat_double(v);
}

}  // namespace su3
