#ifndef BERGMAN_RATIONAL_HPP
#define BERGMAN_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace bergman {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational rat_pow(const Rational& q, unsigned e) {
    if (e == 0) return Rational(1);
    BigInt n = boost::multiprecision::pow(numerator(q), e);
    BigInt d = boost::multiprecision::pow(denominator(q), e);
    return Rational(n, d);
}

/// Exact binary rational equal to the given double (doubles are dyadic).
Rational rational_from_double(double x);

Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& q);

/// Complex number with exact rational real/imaginary parts.
struct RationalComplex {
    Rational re{0};
    Rational im{0};

    RationalComplex() = default;
    RationalComplex(Rational r) : re(std::move(r)) {}
    RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    RationalComplex(long v) : re(v) {}
    RationalComplex(int v) : re(v) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    RationalComplex conj() const { return {re, -im}; }
    Rational abs2() const { return re * re + im * im; }
    Complex to_complex() const { return {to_double(re), to_double(im)}; }

    RationalComplex& operator+=(const RationalComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    RationalComplex& operator-=(const RationalComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    RationalComplex& operator*=(const RationalComplex& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }

    friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
    friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
    friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) { return a *= b; }
    friend RationalComplex operator-(const RationalComplex& a) { return {-a.re, -a.im}; }
    friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const RationalComplex& a, const RationalComplex& b) { return !(a == b); }
};

RationalComplex rc_pow(const RationalComplex& z, unsigned e);

/// Exact complex rational from a double pair.
inline RationalComplex rc_from_complex(const Complex& z) {
    return {rational_from_double(z.real()), rational_from_double(z.imag())};
}

std::string rc_str(const RationalComplex& z);

}  // namespace bergman

#endif
