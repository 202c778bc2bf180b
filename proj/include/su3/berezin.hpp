#pragma once

// Symbol correspondences on the fuzzy rational orbits: the operator symbol
// b[u](Ad_g xi) at level s, computed by two independent routes (operator
// route through an irrep; algebraic route through the adjoint push and the
// beta evaluation), the scaled variant, twisted products, error maps,
// Poisson-type convergence diagnostics with log-log slope fits, and the
// pure-ray characteristic numbers with their asymptotics.

#include "su3/irrep.hpp"
#include "su3/poly.hpp"
#include "su3/sl3.hpp"
#include "su3/uea.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace su3 {

using Matrix8c = Eigen::Matrix<std::complex<double>, 8, 8>;

enum class SymbolKind { Berezin, ScaledBerezin };

struct RaySpec {
    RationalOrbit orbit;
    SymbolKind kind = SymbolKind::Berezin;
    std::vector<int> s_range;  // levels; level s uses highest weight (s*p1, s*q1)
};

RaySpec make_ray(int p1, int q1, SymbolKind kind, std::vector<int> s_range);
std::vector<int> s_sequence(int lo, int hi);  // {lo, lo+1, ..., hi}

// A fixed seeded bank of group samples on one orbit, with the per-point data
// every symbol evaluation needs: coordinates of Ad_g xi and the adjoint push
// a(j,k) = <e_k | g^dag e_j g>. Validated at construction: sum x^2 = 1 and
// tau = chi on every point.
struct OrbitContext {
    RationalOrbit orbit;
    uint64_t seed = 0;
    std::vector<GroupSample> bank;
    std::vector<Eigen::Matrix3cd> points;  // Ad_g xi
    std::vector<std::array<std::complex<double>, 8>> xcoords;
    std::vector<Matrix8c> apush;

    int size() const { return static_cast<int>(bank.size()); }
};

OrbitContext make_orbit_context(const RationalOrbit& orbit, uint64_t seed, int samples);

// a(j,k) = <e_k | g^dag e_j g>, so Ad_{g^-1} e_j = sum_k a(j,k) e_k.
Matrix8c adjoint_push(const GroupSample& g);

// View of the context as a plain point sample (for polynomial sup-norms).
OrbitSample orbit_sample(const OrbitContext& ctx);

enum class BerezinRoute {
    Auto,      // Algebraic when the degree allows it, else Operator
    Operator,  // coherent states in the level-s irrep
    Algebraic  // adjoint push + normal order + beta at -i*omega(s p1, s q1)
};

// The plain (unscaled) symbol of u at one group point. The two explicit
// routes are independent implementations whose agreement is the module's
// central integration oracle.
std::complex<double> universal_berezin(const UeaElement& u, const RaySpec& ray, int s,
                                       const GroupSample& g,
                                       BerezinRoute route = BerezinRoute::Auto);

struct SymbolEval {
    int s = 0;
    std::vector<std::complex<double>> values;  // aligned with the context bank
};

// Kind-aware symbol over the whole bank. ScaledBerezin applies
// w = b + (r/s)(b - mean), the bank mean standing in for the invariant part.
SymbolEval eval_symbol(const UeaElement& u, const RaySpec& ray, int s, const OrbitContext& ctx);

// Product symbol w[uv]; the twisted product of symbols by construction.
std::complex<double> twisted_product_eval(const UeaElement& u, const UeaElement& v,
                                          const RaySpec& ray, int s, const GroupSample& g);
SymbolEval twisted_product_symbol(const UeaElement& u, const UeaElement& v, const RaySpec& ray,
                                  int s, const OrbitContext& ctx);

// sup over the bank of |(s r)^(-deg u) b[u] - (-i)^(deg u) beta_top[u]|.
// Berezin kind only.
double error_map_eval(const UeaElement& u, const RaySpec& ray, int s, const OrbitContext& ctx);

struct PoissonRow {
    int s = 0;
    double s_times_r = 0;
    double prod_defect = 0;
    double bracket_defect = 0;
};

// Per s in ray.s_range:
//   prod_defect    = sup |(sr)^-(d1+d2) w[uv] - f1 f2|
//   bracket_defect = sup |(sr)^-(d1+d2-1) w[uv-vu] - (-i)^(d1+d2-1) beta[uv-vu]|
// where f_i = (-i)^(d_i) beta_top of the factor, all restricted to the bank.
std::vector<PoissonRow> poisson_diagnostics(const UeaElement& u, const UeaElement& v,
                                            const RaySpec& ray, const OrbitContext& ctx);

struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    double stderr_slope = 0;
    int n_used = 0;
};

// Least squares of log(defect) against log(s); nonpositive defects are
// dropped (they mean the quantity is exact at that level).
SlopeFit fit_loglog(const std::vector<std::pair<double, double>>& s_and_defect);

// b_n^p = sqrt(C(p,n)/C(p+n+2,n)) with exact binomials; p(b-1) -> -n(n+2)/2.
double characteristic_number(int p, int n);

// Closed-form ladder coupling constants for the (p,0) family, 1 <= n < p.
struct LadderCouplings {
    double x_n = 0;
    double y_n = 0;
};
LadderCouplings ladder_couplings(int p, int n);

struct CharNumberRow {
    int n = 0;
    double b_at_pmax = 0;    // b_n at p = p_max
    double scaled_gap = 0;   // p_max * (b - 1)
    double target = 0;       // -n(n+2)/2
    bool pass = false;
};
struct CharNumberReport {
    int p_max = 0, n_max = 0;
    double tolerance = 0.05;  // relative to |target| (absolute when target is 0)
    bool all_pass = false;
    std::vector<CharNumberRow> rows;
};
CharNumberReport char_number_limit_check(int p_max, int n_max);

}  // namespace su3
