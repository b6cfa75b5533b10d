#ifndef BERGMAN_TOEPLITZ_HPP
#define BERGMAN_TOEPLITZ_HPP

#include "bergman/basis.hpp"
#include "bergman/quadops.hpp"
#include "bergman/symbols.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bergman {

/// Exact one-variable truncated Toeplitz matrix with the square-root weights
/// factored out: actual entry A_{l,m} = sqrt(l+1) sqrt(m+1) * Atilde_{l,m},
/// stored per diagonal offset d = l - m. For a single quasi-homogeneous term
/// rho(r) z^a conj(z)^b only the offset a - b is populated:
///   Atilde_{l,m} = 2 int_0^1 rho(r) r^{m+l+|d|+1} dr  (a rational number).
class ScaledBandMatrix {
  public:
    explicit ScaledBandMatrix(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("ScaledBandMatrix: size must be >= 1");
    }

    static ScaledBandMatrix identity(int n);

    int size() const { return n_; }
    const std::map<int, std::vector<RationalComplex>>& bands() const { return bands_; }

    /// Scaled entry Atilde_{l,m}.
    RationalComplex scaled_entry(int l, int m) const;
    /// Actual entry in floating point: sqrt((l+1)(m+1)) Atilde_{l,m}.
    Complex entry(int l, int m) const;

    void add_band(int offset, std::vector<RationalComplex> values);

    bool is_zero() const;
    bool is_diagonal() const;
    /// Actual diagonal entries (m+1) * Atilde_{m,m}, exact.
    std::vector<RationalComplex> diagonal() const;

    Eigen::MatrixXcd to_dense() const;

    /// CSV rows `row,col,re,im`, structurally nonzero entries only.
    void write_csv(std::ostream& os) const;

    friend bool operator==(const ScaledBandMatrix& a, const ScaledBandMatrix& b);

  private:
    int n_;
    std::map<int, std::vector<RationalComplex>> bands_;  // offset -> values indexed by min(l,m)
};

/// Exact truncated Toeplitz matrix of a one-variable symbol.
ScaledBandMatrix assemble_exact_1var(const UniSymbol& f, int n);

/// Matrix product under the scaling convention:
/// (AB)tilde_{l,m} = sum_k (k+1) Atilde_{l,k} Btilde_{k,m}, exact.
ScaledBandMatrix compose_exact(const ScaledBandMatrix& a, const ScaledBandMatrix& b);

ScaledBandMatrix scaled_sum(const ScaledBandMatrix& a, const ScaledBandMatrix& b);

/// Exact actual diagonal (m+1) * moment(rho_0, m) of a radial one-variable
/// symbol for m < count; errors when the symbol is not radial.
std::vector<Rational> exact_radial_spectrum(const UniSymbol& f, int count);

/// Dense truncated operator in the linearized orthonormal monomial basis.
struct OperatorMatrix {
    Truncation trunc;
    Eigen::MatrixXcd mat;

    OperatorMatrix() = default;
    OperatorMatrix(Truncation t, Eigen::MatrixXcd m);

    /// CSV rows `row,col,re,im`, entries with |.| > 1e-300 only.
    void write_csv(std::ostream& os) const;
};

enum class AssembleMode { Exact, Quadrature };

/// Truncated T_f in the orthonormal monomial basis: entry (l,m) = <f e_m, e_l>.
/// Tensor terms assemble as Kronecker products of per-variable matrices; sums
/// of tensor terms add. Exact mode computes rational moments and rounds once
/// at export; quadrature mode integrates numerically with the given rules
/// (one per variable).
OperatorMatrix assemble(const SymbolExpr& f, const Truncation& trunc,
                        AssembleMode mode = AssembleMode::Exact,
                        const std::vector<DiscRule>& rules = {});

OperatorMatrix kronecker(const OperatorMatrix& a, const OperatorMatrix& b);

/// Sum of products of Toeplitz operators.
struct OperatorExpr {
    int n = 1;
    std::vector<std::vector<SymbolExpr>> products;
    std::string text;  // display form, when parsed from text

    bool boundary_continuous() const;
    /// Sum over products of the pointwise product of factor symbols.
    SymbolExpr total_symbol() const;
    static OperatorExpr single(SymbolExpr f);
};

/// Padding heuristic: largest total analytic degree shift across any product
/// (sum over factors of max(a,b)), capped at 16. Radial factors need none.
int default_pad(const OperatorExpr& expr);

/// Evaluate the operator expression at a truncation: every factor is
/// assembled at caps + pad, products and sums taken there, then cropped.
/// Padding bounds the bias of composing truncations (the Bergman projection
/// hidden in T_f T_g does not commute with truncation).
OperatorMatrix compose(const OperatorExpr& expr, const Truncation& trunc, int pad,
                       AssembleMode mode = AssembleMode::Exact);

/// Largest singular value by power iteration on A^H A with a deterministic
/// all-ones start and one seeded random restart on stagnation.
double operator_norm(const Eigen::MatrixXcd& a, double tol = 1e-12);
inline double operator_norm(const OperatorMatrix& a, double tol = 1e-12) {
    return operator_norm(a.mat, tol);
}

/// Matrix-free application of an operator expression built from per-variable
/// factor matrices (Kronecker structure); keeps caps-64 polydisc work cheap.
class KronApplicator {
  public:
    KronApplicator(const OperatorExpr& expr, const Truncation& trunc);
    const Truncation& trunc() const { return trunc_; }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

  private:
    struct TensorFactor {
        std::vector<Eigen::MatrixXcd> axis;  // one per variable
    };
    Truncation trunc_;
    std::vector<std::vector<std::vector<TensorFactor>>> products_;
    // products_[p][f] = tensor terms of factor f of product p
};

}  // namespace bergman

#endif
