#ifndef BERGMAN_POLYZZBAR_HPP
#define BERGMAN_POLYZZBAR_HPP

#include "bergman/symbols.hpp"

#include <map>
#include <optional>
#include <vector>

namespace bergman {

/// Monomial exponents: per variable a power of z_j and of conj(z_j).
struct ZZbarExp {
    std::vector<unsigned> a;  // powers of z_j
    std::vector<unsigned> b;  // powers of conj(z_j)
    friend bool operator<(const ZZbarExp& x, const ZZbarExp& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }
    friend bool operator==(const ZZbarExp& x, const ZZbarExp& y) { return x.a == y.a && x.b == y.b; }
};

/// Polynomial in z_1..z_n, conj(z_1)..conj(z_n) with exact complex-rational
/// coefficients.
class PolyZZbar {
  public:
    explicit PolyZZbar(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("PolyZZbar: dimension must be >= 1");
    }

    static PolyZZbar constant(int n, RationalComplex v);
    static PolyZZbar monomial(int n, const ZZbarExp& e, RationalComplex v);
    static PolyZZbar variable(int n, int j);        // z_j
    static PolyZZbar variable_conj(int n, int j);   // conj(z_j)

    int dim() const { return n_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<ZZbarExp, RationalComplex>& coeffs() const { return coeffs_; }

    void add_term(const ZZbarExp& e, const RationalComplex& v);

    PolyZZbar operator+(const PolyZZbar& o) const;
    PolyZZbar operator-(const PolyZZbar& o) const;
    PolyZZbar operator*(const PolyZZbar& o) const;
    PolyZZbar conj() const;
    PolyZZbar scaled(const RationalComplex& s) const;

    Complex eval(const Point& z) const;
    friend bool operator==(const PolyZZbar& x, const PolyZZbar& y) {
        return x.n_ == y.n_ && x.coeffs_ == y.coeffs_;
    }

    /// Lossless conversion into the symbol algebra.
    SymbolExpr to_symbol() const;

  private:
    int n_;
    std::map<ZZbarExp, RationalComplex> coeffs_;
};

/// Delta_j p = 4 d^2 p / (dz_j dzbar_j), exact.
PolyZZbar laplacian_j(const PolyZZbar& p, int j);

/// Harmonic in each variable separately.
bool is_n_harmonic(const PolyZZbar& p);

/// One-variable canonical radial form: f(z) = sum_j p_j(|z|^2) z^j
/// + sum_{j>=1} q_j(|z|^2) conj(z)^j, exact.
struct CanonicalRadialForm {
    std::vector<RPoly> p;  // p[j] multiplies z^j
    std::vector<RPoly> q;  // q[j] multiplies conj(z)^j, q[0] unused
    PolyZZbar reconstruct() const;
};
CanonicalRadialForm canonical_radial_form(const PolyZZbar& f);

/// Quotient g with f = (1 - |z|^2) g, exact, when f vanishes on the circle.
std::optional<PolyZZbar> divide_by_one_minus_mod2(const PolyZZbar& f);

/// f vanishes identically on the unit circle (constructively: every
/// coefficient polynomial of the canonical radial form has a root at 1).
bool circle_vanishing(const PolyZZbar& f);

/// Restriction of a polynomial to the face {|z_k| = 1} vanishes identically:
/// grouped by the monomials in the other variables, every slot-k coefficient
/// polynomial circle-vanishes.
bool face_vanishing(const PolyZZbar& f, int k);

/// PolyZZbar from a SymbolExpr whose radial profiles are all constant.
std::optional<PolyZZbar> symbol_to_poly(const SymbolExpr& s);

}  // namespace bergman

#endif
