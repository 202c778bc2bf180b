#pragma once

// Arbitrary-precision rational scalars. Stored in lowest terms with a
// positive denominator (both guaranteed by boost's canonicalization).

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace su3 {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rat_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

// Strict inverse of rat_str: "p" or "p/q" with q > 0.
inline Rational rat_parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("rational denominator must be positive");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument(std::string("bad rational literal '") + text + "': " + e.what());
    }
}

inline double rat_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace su3
