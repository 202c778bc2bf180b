#pragma once

// Exact scalars for the multiquadratic field Q(sqrt2, sqrt3) and its
// Gaussian extension. A QuadScalar is a + b*sqrt2 + c*sqrt3 + d*sqrt6 with
// rational components; inversion goes through the two Galois conjugations
// (sqrt2 -> -sqrt2 and sqrt3 -> -sqrt3), whose product collapses the norm
// into a plain rational. A GaussQuad is re + i*im over that field.

#include "su3/rational.hpp"

#include <complex>
#include <stdexcept>
#include <string>

namespace su3 {

// Raised when an operation would leave the scalar field (e.g. dividing by
// zero inside it, or a matrix pairing producing an unexpected component).
struct FieldError : std::runtime_error {
    explicit FieldError(const std::string& what) : std::runtime_error(what) {}
};

class QuadScalar {
public:
    Rational a, b, c, d;  // a + b*sqrt2 + c*sqrt3 + d*sqrt6

    QuadScalar() : a(0), b(0), c(0), d(0) {}
    QuadScalar(Rational a_, Rational b_, Rational c_, Rational d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
    QuadScalar(int v) : a(v), b(0), c(0), d(0) {}                    // NOLINT(google-explicit-constructor)
    QuadScalar(const Rational& v) : a(v), b(0), c(0), d(0) {}        // NOLINT(google-explicit-constructor)

    static QuadScalar rational(const Rational& v) { return QuadScalar(v, 0, 0, 0); }
    static QuadScalar sqrt2() { return QuadScalar(0, 1, 0, 0); }
    static QuadScalar sqrt3() { return QuadScalar(0, 0, 1, 0); }
    static QuadScalar sqrt6() { return QuadScalar(0, 0, 0, 1); }

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
    bool is_rational() const { return b == 0 && c == 0 && d == 0; }

    friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }

    QuadScalar operator-() const { return QuadScalar(-a, -b, -c, -d); }

    friend QuadScalar operator+(const QuadScalar& x, const QuadScalar& y) {
        return QuadScalar(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d);
    }
    friend QuadScalar operator-(const QuadScalar& x, const QuadScalar& y) {
        return QuadScalar(x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d);
    }
    friend QuadScalar operator*(const QuadScalar& x, const QuadScalar& y) {
        // Multiplication table: sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2*sqrt3,
        // sqrt3*sqrt6 = 3*sqrt2, sqrt6^2 = 6.
        return QuadScalar(
            x.a * y.a + 2 * x.b * y.b + 3 * x.c * y.c + 6 * x.d * y.d,
            x.a * y.b + x.b * y.a + 3 * (x.c * y.d + x.d * y.c),
            x.a * y.c + x.c * y.a + 2 * (x.b * y.d + x.d * y.b),
            x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b);
    }
    QuadScalar& operator+=(const QuadScalar& y) { *this = *this + y; return *this; }
    QuadScalar& operator-=(const QuadScalar& y) { *this = *this - y; return *this; }
    QuadScalar& operator*=(const QuadScalar& y) { *this = *this * y; return *this; }

    // Galois conjugations.
    QuadScalar conj_sqrt2() const { return QuadScalar(a, -b, c, -d); }  // sqrt2 -> -sqrt2
    QuadScalar conj_sqrt3() const { return QuadScalar(a, b, -c, -d); }  // sqrt3 -> -sqrt3

    QuadScalar invert() const;
    friend QuadScalar operator/(const QuadScalar& x, const QuadScalar& y) { return x * y.invert(); }

    double to_double() const;
    std::string str() const;
    static QuadScalar parse(const std::string& text);
};

class GaussQuad {
public:
    QuadScalar re, im;  // re + i*im

    GaussQuad() = default;
    GaussQuad(QuadScalar re_, QuadScalar im_) : re(std::move(re_)), im(std::move(im_)) {}
    GaussQuad(int v) : re(v), im(0) {}                              // NOLINT(google-explicit-constructor)
    GaussQuad(const Rational& v) : re(v), im(0) {}                  // NOLINT(google-explicit-constructor)
    GaussQuad(const QuadScalar& v) : re(v), im(0) {}                // NOLINT(google-explicit-constructor)

    static GaussQuad i() { return GaussQuad(QuadScalar(0), QuadScalar(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    friend bool operator==(const GaussQuad& x, const GaussQuad& y) { return x.re == y.re && x.im == y.im; }
    friend bool operator!=(const GaussQuad& x, const GaussQuad& y) { return !(x == y); }

    GaussQuad operator-() const { return GaussQuad(-re, -im); }
    GaussQuad conj() const { return GaussQuad(re, -im); }

    friend GaussQuad operator+(const GaussQuad& x, const GaussQuad& y) {
        return GaussQuad(x.re + y.re, x.im + y.im);
    }
    friend GaussQuad operator-(const GaussQuad& x, const GaussQuad& y) {
        return GaussQuad(x.re - y.re, x.im - y.im);
    }
    friend GaussQuad operator*(const GaussQuad& x, const GaussQuad& y) {
        return GaussQuad(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
    }
    GaussQuad& operator+=(const GaussQuad& y) { *this = *this + y; return *this; }
    GaussQuad& operator-=(const GaussQuad& y) { *this = *this - y; return *this; }
    GaussQuad& operator*=(const GaussQuad& y) { *this = *this * y; return *this; }

    GaussQuad invert() const {
        if (is_zero()) throw FieldError("division by zero in Gaussian quad field");
        QuadScalar n = re * re + im * im;
        QuadScalar ninv = n.invert();
        return GaussQuad(re * ninv, -(im * ninv));
    }
    friend GaussQuad operator/(const GaussQuad& x, const GaussQuad& y) { return x * y.invert(); }

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
    std::string str() const;
};

// Requires the value to sit in the real subfield; error text names the caller.
QuadScalar require_real(const GaussQuad& v, const char* where);

}  // namespace su3
