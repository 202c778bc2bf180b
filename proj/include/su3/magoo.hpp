#pragma once

#include "su3/berezin.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace su3 {

// Nonnegative integer solutions of X^2 + XY + Y^2 = rho_sq, lex sorted.
struct IntegralOrbitSet {
    long long rho_sq = 0;
    std::vector<std::pair<long long, long long>> solutions;
};
IntegralOrbitSet enumerate_integral_orbits(long long rho_sq);

// All primitive rays (gcd(p1,q1) = 1) with norm p1^2+p1*q1+q1^2 <= max_norm,
// ordered by norm, ties lex by (p1,q1).
std::vector<RationalOrbit> primitive_orbits(long long max_norm);

// Nested sets of primitive rational orbits, one level per distinct radius.
struct RadialChain {
    std::vector<std::vector<RationalOrbit>> levels;  // cumulative: R_1 c R_2 c ...
};
RadialChain radial_chain(int n_max);

// Delta polynomials gluing per-orbit symbols across a finite orbit set:
// delta^xi = prod_{xi' != xi} (tau - chi_xi') / M^xi with
// M^xi = prod (chi_xi - chi_xi'). Kept in factored form and evaluated with
// compensated products; chi values cluster for nearby orbits, which makes the
// expanded form numerically stiff.
struct Pencil {
    std::vector<RationalOrbit> orbits;
    std::vector<double> chi;          // tau on each orbit
    std::vector<double> normalizers;  // M^xi
    bool ill_conditioned = false;     // some |M^xi| < 1e-6
};
Pencil build_pencil(const std::vector<RationalOrbit>& orbits);
double delta_eval(const Pencil& pencil, int which, double tau_value);
// Expanded monomial coefficients of delta^which in tau, constant term first.
std::vector<double> delta_coefficients(const Pencil& pencil, int which);

// Delta identities sampled on per-orbit banks (aligned with pencil.orbits):
// max |delta^xi(pt) - [xi == xi']|, max |sum_xi delta^xi(pt) - 1|, and
// max |delta^xi delta^eta(pt)| over xi != eta.
struct DeltaCheck {
    double delta_gap = 0;
    double partition_gap = 0;
    double orthogonality_gap = 0;
};
DeltaCheck delta_identity_check(const Pencil& pencil, const std::vector<OrbitContext>& banks);

// Glued symbol sum_xi delta^xi(pt) * w_xi^s[u](pt) at one bank point; the
// point is banks[orbit_index] entry point_index, tagged by its home orbit.
std::complex<double> pencil_symbol(const UeaElement& u, const Pencil& pencil, SymbolKind kind,
                                   int s, const std::vector<OrbitContext>& banks, int orbit_index,
                                   int point_index);
// Glued r-weighted commutator sum_xi delta^xi(pt) * r(xi) * w_xi^s[uv-vu](pt).
std::complex<double> r_weighted_bracket(const UeaElement& u, const UeaElement& v,
                                        const Pencil& pencil, SymbolKind kind, int s,
                                        const std::vector<OrbitContext>& banks, int orbit_index,
                                        int point_index);

// Defect tensors of a glued-correspondence sweep over a nested orbit chain.
struct MagooRun {
    SymbolKind kind = SymbolKind::Berezin;
    std::vector<RationalOrbit> orbits;     // radius-ordered input list
    std::vector<int> level_of_orbit;       // first level containing each orbit
    std::vector<std::vector<int>> levels;  // cumulative orbit indices per level
    std::vector<int> s_list;
    int samples = 0;
    uint64_t seed = 0;
    int deg_u = 0, deg_v = 0;
    std::vector<bool> pencil_ill;  // per level
    // glued defects indexed [level][s][orbit]; NaN when the orbit is not in
    // the level's pencil
    std::vector<std::vector<std::vector<double>>> prod_defect, bracket_defect;
    // per-orbit (unglued) defects indexed [s][orbit]
    std::vector<std::vector<double>> per_orbit_prod, per_orbit_bracket;
    std::vector<double> per_orbit_slope;  // log-log rate of per-orbit prod defect
};
MagooRun uniformity_sweep(SymbolKind kind, const std::vector<RationalOrbit>& orbits,
                          const std::vector<int>& s_list, const UeaElement& u,
                          const UeaElement& v, int samples = 128, uint64_t seed = 0);

// Invariant checks on a finished run.
// Max over (xi, s, n >= n_xi) of |defect(n,s,xi) - defect(n_xi,s,xi)|.
double restriction_compatibility_gap(const MagooRun& run);
// Max over (n, s) of |max_xi glued defect - max_xi per-orbit defect|.
double level_vs_per_orbit_gap(const MagooRun& run);
// Cross-orbit max defect at fixed s as a function of the cutoff level. The
// bracket channel isolates the r(xi)/s rescaling term for degree-1 pairs,
// where the plain Berezin bracket defect vanishes identically.
enum class DefectChannel { Product, Bracket };
std::vector<double> max_defect_cutoff_curve(const MagooRun& run, int s,
                                            DefectChannel channel = DefectChannel::Product);

std::string orbit_set_csv(const IntegralOrbitSet& set);
std::string magoo_run_csv(const MagooRun& run);
std::string magoo_run_json(const MagooRun& run);

}  // namespace su3
