#pragma once

// Sparse exact polynomials in the coordinates x_1..x_8 on su(3):
// pointwise product, the KAKS Poisson bracket, the cubic invariant tau,
// orbit-restriction evaluation and sup-norm estimation on sampled orbits.

#include "su3/mono.hpp"
#include "su3/quad.hpp"
#include "su3/sl3.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace su3 {

class PolyElement {
public:
    using TermMap = std::map<Mono8, GaussQuad, MonoOrder>;

    PolyElement() = default;

    static PolyElement constant(const GaussQuad& c);
    static PolyElement variable(int k);  // x_k, 1-based
    static PolyElement monomial(const Mono8& m, const GaussQuad& c);

    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for the zero polynomial
    const TermMap& terms() const { return terms_; }

    void add_term(const Mono8& m, const GaussQuad& c);

    PolyElement operator-() const;
    friend PolyElement operator+(const PolyElement& f, const PolyElement& h);
    friend PolyElement operator-(const PolyElement& f, const PolyElement& h);
    friend PolyElement operator*(const GaussQuad& s, const PolyElement& f);
    friend bool operator==(const PolyElement& f, const PolyElement& h) { return f.terms_ == h.terms_; }
    friend bool operator!=(const PolyElement& f, const PolyElement& h) { return !(f == h); }

    PolyElement partial(int k) const;  // d/dx_k, 1-based

    std::string str() const;

private:
    TermMap terms_;
};

PolyElement pointwise_mul(const PolyElement& f, const PolyElement& h);

// Biderivation extension of {x_j, x_k} = sum_l c^l_{kj} x_l with the
// Gell-Mann-basis structure constants (coefficients of [E_k, E_j]).
PolyElement kaks_bracket(const PolyElement& f, const PolyElement& h);

// The 10-term cubic invariant separating the (co)adjoint orbits.
const PolyElement& tau_poly();

// Exact coordinates of an exact matrix: x_k(X) = -tr(E_k X).
std::array<GaussQuad, 8> x_coords_exact(const Mat3q& X);

GaussQuad evaluate_exact(const PolyElement& f, const Mat3q& X);
std::complex<double> evaluate_at(const PolyElement& f, const std::array<std::complex<double>, 8>& x);
std::complex<double> evaluate(const PolyElement& f, const Eigen::Matrix3cd& X);

// Value of tau on the orbit through o.xi (exact when xi is, else double).
double tau_on_orbit(const RationalOrbit& o);

// tau - tau(xi): vanishes exactly on the orbit of xi and nowhere else on
// the rational family. Constant subtracted exactly when xi is exact,
// otherwise as the dyadic rational of its double value.
PolyElement check_tau(const RationalOrbit& o);

struct OrbitSample {
    RationalOrbit orbit;
    uint64_t seed = 0;
    std::vector<Eigen::Matrix3cd> points;  // Ad_g xi for sampled g
};

double sup_norm_estimate(const PolyElement& f, const OrbitSample& sample);

}  // namespace su3
