#include "su3/quad.hpp"

#include <cmath>
#include <vector>

namespace su3 {

QuadScalar QuadScalar::invert() const {
    if (is_zero()) throw FieldError("division by zero in quad field");
    // x * conj2(x) lives in Q(sqrt3); multiplying by the sqrt3-conjugate of
    // that collapses everything into Q. The field norm is the product of x
    // with its three nontrivial Galois conjugates.
    QuadScalar y = conj_sqrt2();
    QuadScalar z = *this * y;            // in Q(sqrt3): b = d = 0
    QuadScalar w = z.conj_sqrt3();
    QuadScalar n = z * w;                // rational
    if (!n.is_rational() || n.a == 0) throw FieldError("quad field norm degenerated");
    Rational inv_n = Rational(1) / n.a;
    QuadScalar num = y * w;              // product of the three conjugates
    return QuadScalar(num.a * inv_n, num.b * inv_n, num.c * inv_n, num.d * inv_n);
}

double QuadScalar::to_double() const {
    static const double s2 = std::sqrt(2.0);
    static const double s3 = std::sqrt(3.0);
    static const double s6 = std::sqrt(6.0);
    return rat_double(a) + rat_double(b) * s2 + rat_double(c) * s3 + rat_double(d) * s6;
}

std::string QuadScalar::str() const {
    std::string out;
    auto emit = [&out](const Rational& v, const char* radical) {
        if (v == 0) return;
        if (!out.empty()) out += " + ";
        out += rat_str(v);
        out += radical;
    };
    emit(a, "");
    emit(b, "*r2");
    emit(c, "*r3");
    emit(d, "*r6");
    return out.empty() ? "0" : out;
}

QuadScalar QuadScalar::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty quad literal");
    QuadScalar result;
    bool seen[4] = {false, false, false, false};
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find(" + ", pos);
        std::string term = text.substr(pos, next == std::string::npos ? next : next - pos);
        pos = next == std::string::npos ? text.size() : next + 3;

        int slot = 0;
        std::string ratpart = term;
        auto star = term.rfind("*r");
        if (star != std::string::npos) {
            std::string radical = term.substr(star);
            ratpart = term.substr(0, star);
            if (radical == "*r2") slot = 1;
            else if (radical == "*r3") slot = 2;
            else if (radical == "*r6") slot = 3;
            else throw std::invalid_argument("bad radical suffix in quad literal: " + term);
        }
        if (seen[slot]) throw std::invalid_argument("duplicate component in quad literal: " + text);
        seen[slot] = true;
        Rational v = rat_parse(ratpart);
        switch (slot) {
            case 0: result.a = v; break;
            case 1: result.b = v; break;
            case 2: result.c = v; break;
            default: result.d = v; break;
        }
    }
    // "0" parses as a == 0 via the slot-0 branch; nothing more to do.
    return result;
}

std::string GaussQuad::str() const {
    if (im.is_zero()) return re.str();
    std::string out = re.str();
    out += " + (";
    out += im.str();
    out += ")*i";
    return out;
}

QuadScalar require_real(const GaussQuad& v, const char* where) {
    if (!v.im.is_zero()) {
        throw FieldError(std::string(where) + ": value has a nonzero imaginary part: " + v.str());
    }
    return v.re;
}

}  // namespace su3
