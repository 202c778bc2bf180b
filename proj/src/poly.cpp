#include "su3/poly.hpp"

#include <cmath>
#include <stdexcept>

namespace su3 {

PolyElement PolyElement::constant(const GaussQuad& c) {
    PolyElement f;
    f.add_term(Mono8{}, c);
    return f;
}

PolyElement PolyElement::variable(int k) {
    if (k < 1 || k > 8) throw std::domain_error("PolyElement::variable: index out of range");
    Mono8 m{};
    m[k - 1] = 1;
    return monomial(m, GaussQuad(1));
}

PolyElement PolyElement::monomial(const Mono8& m, const GaussQuad& c) {
    PolyElement f;
    f.add_term(m, c);
    return f;
}

int PolyElement::degree() const {
    // Terms are ordered highest degree first.
    return terms_.empty() ? -1 : mono_degree(terms_.begin()->first);
}

void PolyElement::add_term(const Mono8& m, const GaussQuad& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolyElement PolyElement::operator-() const {
    PolyElement f;
    for (const auto& [m, c] : terms_) f.terms_.emplace(m, -c);
    return f;
}

PolyElement operator+(const PolyElement& f, const PolyElement& h) {
    PolyElement out = f;
    for (const auto& [m, c] : h.terms_) out.add_term(m, c);
    return out;
}

PolyElement operator-(const PolyElement& f, const PolyElement& h) {
    PolyElement out = f;
    for (const auto& [m, c] : h.terms_) out.add_term(m, -c);
    return out;
}

PolyElement operator*(const GaussQuad& s, const PolyElement& f) {
    PolyElement out;
    if (s.is_zero()) return out;
    for (const auto& [m, c] : f.terms()) out.add_term(m, s * c);
    return out;
}

PolyElement PolyElement::partial(int k) const {
    if (k < 1 || k > 8) throw std::domain_error("PolyElement::partial: index out of range");
    PolyElement out;
    for (const auto& [m, c] : terms_) {
        if (m[k - 1] == 0) continue;
        Mono8 d = m;
        d[k - 1] -= 1;
        out.add_term(d, GaussQuad(Rational(static_cast<int>(m[k - 1]))) * c);
    }
    return out;
}

std::string PolyElement::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(";
        out += c.str();
        out += ")*";
        out += mono_str(m, 'x');
    }
    return out;
}

PolyElement pointwise_mul(const PolyElement& f, const PolyElement& h) {
    PolyElement out;
    for (const auto& [mf, cf] : f.terms()) {
        for (const auto& [mh, ch] : h.terms()) {
            Mono8 m;
            for (int j = 0; j < 8; ++j) m[j] = static_cast<uint8_t>(mf[j] + mh[j]);
            out.add_term(m, cf * ch);
        }
    }
    return out;
}

namespace {

// bracket_xx[j][k] = {x_{j+1}, x_{k+1}} = sum_l c^l_{kj} x_l, coefficients
// of [E_k, E_j] in the Gell-Mann table.
const std::array<std::array<PolyElement, 8>, 8>& coordinate_brackets() {
    static const std::array<std::array<PolyElement, 8>, 8> table = [] {
        std::array<std::array<PolyElement, 8>, 8> t;
        const auto& sc = structure_constants(BasisTag::GellMann);
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k)
                for (const auto& [l, coeff] : sc.bracket(k, j))
                    t[j][k].add_term([&] { Mono8 m{}; m[l] = 1; return m; }(), GaussQuad(coeff));
        return t;
    }();
    return table;
}

}  // namespace

PolyElement kaks_bracket(const PolyElement& f, const PolyElement& h) {
    const auto& xx = coordinate_brackets();
    std::array<PolyElement, 8> df, dh;
    for (int j = 0; j < 8; ++j) {
        df[j] = f.partial(j + 1);
        dh[j] = h.partial(j + 1);
    }
    PolyElement out;
    for (int j = 0; j < 8; ++j) {
        if (df[j].is_zero()) continue;
        for (int k = 0; k < 8; ++k) {
            if (dh[k].is_zero() || xx[j][k].is_zero()) continue;
            out = out + pointwise_mul(pointwise_mul(df[j], dh[k]), xx[j][k]);
        }
    }
    return out;
}

const PolyElement& tau_poly() {
    static const PolyElement tau = [] {
        PolyElement f;
        auto add = [&f](std::initializer_list<int> vars, const QuadScalar& coeff) {
            Mono8 m{};
            for (int v : vars) m[v - 1] += 1;
            f.add_term(m, GaussQuad(coeff));
        };
        const QuadScalar six(6), minus3(-3);
        const QuadScalar six_sqrt3(0, 0, 6, 0), three_sqrt3(0, 0, 3, 0);
        // 6(x1^2+x2^2+x3^2)x8 - 2x8^3
        add({1, 1, 8}, six);
        add({2, 2, 8}, six);
        add({3, 3, 8}, six);
        add({8, 8, 8}, QuadScalar(-2));
        // 6*sqrt3*(x1(x4x6+x5x7) - x2(x4x7-x5x6))
        add({1, 4, 6}, six_sqrt3);
        add({1, 5, 7}, six_sqrt3);
        add({2, 4, 7}, -six_sqrt3);
        add({2, 5, 6}, six_sqrt3);
        // -3(x4^2+x5^2+x6^2+x7^2)x8
        add({4, 4, 8}, minus3);
        add({5, 5, 8}, minus3);
        add({6, 6, 8}, minus3);
        add({7, 7, 8}, minus3);
        // 3*sqrt3*x3(x4^2+x5^2-x6^2-x7^2)
        add({3, 4, 4}, three_sqrt3);
        add({3, 5, 5}, three_sqrt3);
        add({3, 6, 6}, -three_sqrt3);
        add({3, 7, 7}, -three_sqrt3);
        return f;
    }();
    return tau;
}

std::array<GaussQuad, 8> x_coords_exact(const Mat3q& X) {
    std::array<GaussQuad, 8> x;
    for (int k = 0; k < 8; ++k) x[k] = -pair_bilinear(gm_basis()[k], X);
    return x;
}

GaussQuad evaluate_exact(const PolyElement& f, const Mat3q& X) {
    auto x = x_coords_exact(X);
    GaussQuad out;
    for (const auto& [m, c] : f.terms()) {
        GaussQuad term = c;
        for (int k = 0; k < 8; ++k)
            for (int e = 0; e < m[k]; ++e) term *= x[k];
        out += term;
    }
    return out;
}

std::complex<double> evaluate_at(const PolyElement& f, const std::array<std::complex<double>, 8>& x) {
    std::complex<double> out = 0.0;
    for (const auto& [m, c] : f.terms()) {
        std::complex<double> term = c.to_complex();
        for (int k = 0; k < 8; ++k)
            for (int e = 0; e < m[k]; ++e) term *= x[k];
        out += term;
    }
    return out;
}

std::complex<double> evaluate(const PolyElement& f, const Eigen::Matrix3cd& X) {
    return evaluate_at(f, x_coords(X));
}

namespace {

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("rational_from_double: non-finite input");
    int exp = 0;
    double mant = std::frexp(v, &exp);  // v = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    long long scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(scaled);
    if (exp > 0) r *= Rational(Int(1) << exp);
    if (exp < 0) r /= Rational(Int(1) << -exp);
    return r;
}

}  // namespace

double tau_on_orbit(const RationalOrbit& o) {
    if (o.xi_exact_available) {
        GaussQuad v = evaluate_exact(tau_poly(), o.xi_exact);
        return require_real(v, "tau_on_orbit").to_double();
    }
    double p = o.p1, q = o.q1;
    return (2 * p * p * p + 3 * p * p * q - 3 * p * q * q - 2 * q * q * q) / std::pow(o.norm_m, 1.5);
}

PolyElement check_tau(const RationalOrbit& o) {
    GaussQuad chi;
    if (o.xi_exact_available) {
        chi = evaluate_exact(tau_poly(), o.xi_exact);
    } else {
        chi = GaussQuad(QuadScalar(rational_from_double(tau_on_orbit(o))));
    }
    return tau_poly() - PolyElement::constant(chi);
}

double sup_norm_estimate(const PolyElement& f, const OrbitSample& sample) {
    if (sample.points.empty()) throw std::invalid_argument("sup_norm_estimate: empty sample");
    double sup = 0.0;
    for (const auto& pt : sample.points) sup = std::max(sup, std::abs(evaluate(f, pt)));
    return sup;
}

}  // namespace su3
