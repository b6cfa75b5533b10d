#ifndef BERGMAN_SYMBOLS_HPP
#define BERGMAN_SYMBOLS_HPP

#include "bergman/basis.hpp"
#include "bergman/rpoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace bergman {

/// One-variable building block: scale * rho(|z|) * z^a * conj(z)^b.
struct UniTerm {
    RationalComplex scale{Rational(1)};
    unsigned a = 0;
    unsigned b = 0;
    PiecewisePoly radial = PiecewisePoly::one();

    UniTerm() = default;
    UniTerm(RationalComplex s, unsigned a_, unsigned b_, PiecewisePoly r)
        : scale(std::move(s)), a(a_), b(b_), radial(std::move(r)) {}

    Complex eval(Complex z) const;
    UniTerm conj() const { return {scale.conj(), b, a, radial.conj()}; }
};

/// Finite sum of UniTerms in a single variable.
using UniSymbol = std::vector<UniTerm>;

UniSymbol uni_mul(const UniSymbol& x, const UniSymbol& y);
UniSymbol uni_conj(const UniSymbol& x);
Complex uni_eval(const UniSymbol& x, Complex z);

/// Canonical slice decomposition of a one-variable symbol:
///   f(z) = sum_d rho_d(|z|) * (z^d for d>=0, conj(z)^{-d} for d<0)
/// with min(a,b) folded into the radial profile. Exact; the basis for
/// zero tests, boundary traces and Toeplitz band assembly.
std::map<int, PiecewisePoly> uni_canonical_slices(const UniSymbol& x);

bool uni_is_zero(const UniSymbol& x);
/// Boundary trace on |z|=1 as a Laurent polynomial in the angle: d -> coefficient.
std::map<int, RationalComplex> uni_boundary_trace(const UniSymbol& x);

/// Symbol on the closed polydisc: sum of tensor terms, each a tuple of n
/// one-variable symbols. Closed under +, *, scaling and conjugation; every
/// member is continuous on the closed polydisc when its radial profiles are.
class SymbolExpr {
  public:
    /// Tensor term: product over slots of one-variable symbols.
    using TensorTerm = std::vector<UniSymbol>;

    explicit SymbolExpr(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("SymbolExpr: dimension must be >= 1");
    }
    SymbolExpr(int n, std::vector<TensorTerm> terms) : n_(n), terms_(std::move(terms)) {}

    static SymbolExpr constant(int n, RationalComplex v);
    static SymbolExpr coordinate(int n, int j);        // z_j
    static SymbolExpr coordinate_conj(int n, int j);   // conj(z_j)
    static SymbolExpr radial_profile(int n, int j, PiecewisePoly rho);

    int dim() const { return n_; }
    const std::vector<TensorTerm>& terms() const { return terms_; }
    bool has_terms() const { return !terms_.empty(); }

    SymbolExpr operator+(const SymbolExpr& o) const;
    SymbolExpr operator-(const SymbolExpr& o) const;
    SymbolExpr operator*(const SymbolExpr& o) const;
    SymbolExpr conj() const;
    SymbolExpr scaled(const RationalComplex& s) const;
    SymbolExpr pow(unsigned e) const;

    Complex eval(const Point& z) const;
    /// Exact value at the origin.
    RationalComplex eval_origin() const;

    /// All radial profiles continuous across their breakpoints (membership in
    /// C of the closed polydisc).
    bool boundary_continuous() const;

    /// Exact zero certificate (sound: true implies the symbol vanishes
    /// identically; false means no certificate was found).
    bool structurally_zero() const;

    /// Substitute z_k = xi (|xi| = 1), producing an (n-1)-variable symbol.
    /// Terms whose slot-k trace at xi is exactly zero are dropped.
    SymbolExpr restrict(int k, Complex xi) const;

    /// Restriction at slot k vanishes identically for every unimodular xi.
    bool restriction_vanishes_all_xi(int k) const;

    /// Insert a constant-1 factor in slot k, producing an (n+1)-variable symbol.
    SymbolExpr extend(int k) const;

    /// Largest |a-b| angular degree appearing in slot j.
    int angular_degree(int j) const;
    /// Largest max(a,b) over the whole expression (padding heuristic).
    int max_analytic_degree() const;

    /// Structural equality (same terms in the same order).
    friend bool operator==(const SymbolExpr& a, const SymbolExpr& b);

  private:
    int n_;
    std::vector<TensorTerm> terms_;
};

/// Sampling grid for boundary faces: equispaced unimodular points on the
/// distinguished coordinate, tensor polar grid on the rest.
struct BoundaryGrid {
    int xi_count = 64;
    std::vector<double> radii{0.0, 0.25, 0.5, 0.75, 0.95};
    int angle_count = 32;
};

/// Max of |f| over the sampled face {|z_k| = 1}.
double boundary_face_max(const SymbolExpr& s, int k, const BoundaryGrid& grid = {});

}  // namespace bergman

#endif
