#include "bergman/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace bergman {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings turn the mantissa into an integer.
    BigInt m = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational q(m);
    if (exp > 0)
        q *= rat_pow(Rational(2), static_cast<unsigned>(exp));
    else if (exp < 0)
        q /= rat_pow(Rational(2), static_cast<unsigned>(-exp));
    return q;
}

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool neg = false;
    size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = s[pos] == '-';
        ++pos;
    }
    auto digits = [&](size_t& p) {
        size_t start = p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p == start) throw std::invalid_argument("parse_rational: expected digits in '" + text + "'");
        return s.substr(start, p - start);
    };
    std::string ip = digits(pos);
    Rational q;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        std::string dp = digits(pos);
        BigInt den(dp);
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
        q = Rational(BigInt(ip), den);
    } else if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::string fp = digits(pos);
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fp.size()));
        q = Rational(BigInt(ip) * scale + BigInt(fp), scale);
    } else {
        q = Rational(BigInt(ip));
    }
    if (pos != s.size()) throw std::invalid_argument("parse_rational: trailing characters in '" + text + "'");
    return neg ? -q : q;
}

std::string rational_str(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

RationalComplex rc_pow(const RationalComplex& z, unsigned e) {
    RationalComplex r{Rational(1)};
    RationalComplex base = z;
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

std::string rc_str(const RationalComplex& z) {
    if (z.im == 0) return rational_str(z.re);
    return rational_str(z.re) + (z.im > 0 ? "+" : "") + rational_str(z.im) + "i";
}

}  // namespace bergman
