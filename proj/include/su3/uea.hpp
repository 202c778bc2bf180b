#pragma once

// The universal enveloping algebra U(sl(3)) in PBW normal form over the
// ordered basis e1..e8: normal ordering by bubble rewriting, products and
// commutators, the degree filtration, the beta polynomial maps, the
// symmetrization right-inverse, and the cubic Casimir.

#include "su3/mono.hpp"
#include "su3/poly.hpp"
#include "su3/quad.hpp"
#include "su3/sl3.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace su3 {

using Word = std::vector<uint8_t>;  // generator indices, 1-based

class UeaElement {
public:
    using TermMap = std::map<Mono8, GaussQuad, MonoOrder>;

    UeaElement() = default;

    static UeaElement scalar(const GaussQuad& c);
    static UeaElement generator(int j);  // e_j, 1-based
    static UeaElement monomial(const Mono8& m, const GaussQuad& c);
    // Degree-1 element with the exact expansion coefficients of X in e1..e8.
    static UeaElement from_matrix(const Mat3q& X);

    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for zero
    const TermMap& terms() const { return terms_; }

    void add_term(const Mono8& m, const GaussQuad& c);

    UeaElement operator-() const;
    friend UeaElement operator+(const UeaElement& u, const UeaElement& v);
    friend UeaElement operator-(const UeaElement& u, const UeaElement& v);
    friend UeaElement operator*(const GaussQuad& s, const UeaElement& u);
    friend bool operator==(const UeaElement& u, const UeaElement& v) { return u.terms_ == v.terms_; }
    friend bool operator!=(const UeaElement& u, const UeaElement& v) { return !(u == v); }

    std::string str() const;

private:
    TermMap terms_;
};

// PBW normal form of a word by rightmost-disorder-first bubble rewriting
// (e_k e_j -> e_j e_k + [e_k, e_j]); memoized globally.
UeaElement normal_order(const Word& word);

// Same rewriting with the inversion picked pseudo-randomly at every step
// and no memo; used to stress-test confluence.
UeaElement normal_order_randomized(const Word& word, uint64_t seed);

UeaElement multiply(const UeaElement& u, const UeaElement& v);
UeaElement commutator(const UeaElement& u, const UeaElement& v);
UeaElement project_degree(const UeaElement& u, int d);

// beta: PBW monomial -> product of the linear forms l_j = tr(e_j .),
// expanded in the x-coordinates; extended linearly.
PolyElement beta(const UeaElement& u);
PolyElement beta_d(const UeaElement& u, int d);
PolyElement beta_top(const UeaElement& u);  // beta_d at d = deg(u)

// The linear form l_j as a polynomial in x (j 1-based).
const PolyElement& ell(int j);

// Symmetrization: re-express f in the l-coordinates via the exact inverse
// pairing, then average all generator orderings of each monomial.
UeaElement symmetrize(const PolyElement& f);

// S(tau); commutes with every generator.
const UeaElement& cubic_casimir();

}  // namespace su3
