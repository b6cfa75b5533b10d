#ifndef BERGMAN_RPOLY_HPP
#define BERGMAN_RPOLY_HPP

#include "bergman/rational.hpp"

#include <optional>
#include <vector>

namespace bergman {

/// Univariate polynomial with exact complex-rational coefficients, ascending order.
class RPoly {
  public:
    RPoly() = default;
    explicit RPoly(std::vector<RationalComplex> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RPoly constant(RationalComplex v) { return RPoly({std::move(v)}); }
    static RPoly monomial(unsigned deg, RationalComplex v);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<RationalComplex>& coeffs() const { return c_; }
    RationalComplex coeff(size_t i) const { return i < c_.size() ? c_[i] : RationalComplex(); }

    RationalComplex eval(const Rational& x) const;
    Complex eval_double(double x) const;

    RPoly conj() const;
    RPoly shifted(unsigned k) const;  // multiply by x^k

    RPoly& operator+=(const RPoly& o);
    RPoly& operator-=(const RPoly& o);
    friend RPoly operator+(RPoly a, const RPoly& b) { return a += b; }
    friend RPoly operator-(RPoly a, const RPoly& b) { return a -= b; }
    friend RPoly operator*(const RPoly& a, const RPoly& b);
    friend RPoly operator*(const RationalComplex& s, RPoly p);
    friend bool operator==(const RPoly& a, const RPoly& b) { return a.c_ == b.c_; }

    /// Quotient q with p = (1-x) q, when p(1) = 0; empty otherwise.
    std::optional<RPoly> divide_by_one_minus_x() const;

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<RationalComplex> c_;
};

/// Piecewise polynomial profile on [0,1]; pieces partition [0,1] with rational
/// breakpoints. Used for radial symbol profiles rho(|z|).
class PiecewisePoly {
  public:
    struct Piece {
        Rational lo, hi;
        RPoly poly;
    };

    PiecewisePoly() { pieces_.push_back({Rational(0), Rational(1), RPoly()}); }
    explicit PiecewisePoly(std::vector<Piece> pieces);
    static PiecewisePoly constant(RationalComplex v) {
        return PiecewisePoly({{Rational(0), Rational(1), RPoly::constant(std::move(v))}});
    }
    static PiecewisePoly one() { return constant(RationalComplex(1)); }

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool is_zero() const;
    bool is_constant(RationalComplex* value = nullptr) const;

    /// Exact continuity across the internal breakpoints.
    bool continuous() const;

    RationalComplex value_at(const Rational& r) const;
    RationalComplex value_at_one() const { return pieces_.back().poly.eval(Rational(1)); }
    Complex eval_double(double r) const;

    PiecewisePoly conj() const;
    PiecewisePoly shifted(unsigned k) const;  // multiply by r^k
    int max_degree() const;

    friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b);
    friend PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b);
    friend PiecewisePoly operator*(const RationalComplex& s, PiecewisePoly p);
    friend bool operator==(const PiecewisePoly& a, const PiecewisePoly& b);

    /// Exact 2 * int_0^1 rho(r) r^(2k+1) dr by piecewise antidifferentiation.
    RationalComplex radial_moment(unsigned k) const;
    /// Same value in floating point (large k stays cheap).
    Complex radial_moment_double(unsigned k) const;

    std::vector<Rational> breakpoints() const;

  private:
    void merge_equal_neighbors();
    std::vector<Piece> pieces_;
};

/// Common refinement of two partitions of [0,1].
std::vector<Rational> merge_breakpoints(const PiecewisePoly& a, const PiecewisePoly& b);

}  // namespace bergman

#endif
