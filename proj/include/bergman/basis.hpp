#ifndef BERGMAN_BASIS_HPP
#define BERGMAN_BASIS_HPP

#include "bergman/rational.hpp"

#include <Eigen/Dense>

#include <ostream>
#include <vector>

namespace bergman {

// Measure convention used throughout: normalized volume nu = dV / pi^n, so
// ||z^m||^2 = prod_j 1/(m_j+1) and K(z,w) = prod_j (1 - z_j conj(w_j))^(-2).
// Every statement computed here is invariant under this rescaling.

using MultiIndex = std::vector<int>;

/// Per-variable basis caps N_j; degree m_j ranges over 0..N_j-1. Linearization
/// is mixed-radix with variable 1 slowest (the serialization order).
class Truncation {
  public:
    Truncation() = default;
    explicit Truncation(std::vector<int> caps);

    int dim() const { return static_cast<int>(caps_.size()); }
    const std::vector<int>& caps() const { return caps_; }
    long total() const { return total_; }

    long linearize(const MultiIndex& m) const;
    MultiIndex delinearize(long idx) const;

    friend bool operator==(const Truncation& a, const Truncation& b) { return a.caps_ == b.caps_; }
    friend bool operator!=(const Truncation& a, const Truncation& b) { return !(a == b); }

  private:
    std::vector<int> caps_;
    long total_ = 0;
};

/// Point of the closed polydisc.
struct Point {
    std::vector<Complex> coords;

    Point() = default;
    explicit Point(std::vector<Complex> c) : coords(std::move(c)) {}
    int dim() const { return static_cast<int>(coords.size()); }
    bool interior() const;
    bool on_boundary(double tol = 1e-12) const;
    /// Coordinates j with |p_j| = 1 (within tol).
    std::vector<int> boundary_faces(double tol = 1e-12) const;
};

/// Coefficients of an A^2 element in the truncated orthonormal monomial basis.
struct CoefVector {
    Truncation trunc;
    Eigen::VectorXcd coeffs;

    CoefVector() = default;
    CoefVector(Truncation t, Eigen::VectorXcd c);

    double norm2() const { return coeffs.squaredNorm(); }
    static CoefVector unit(const Truncation& t, long idx = 0);

    /// CSV rows `index,m1,...,mn,re,im` in linearization order.
    void write_csv(std::ostream& os) const;
};

/// Truncated coefficient expansion of the normalized reproducing kernel k_p:
/// coefficient at m is prod_j (1-|p_j|^2) sqrt(m_j+1) conj(p_j)^{m_j}.
CoefVector kernel_coeffs(const Point& p, const Truncation& trunc);

/// K(z,p) = prod_j (1 - z_j conj(p_j))^(-2).
Complex eval_kernel(const Point& z, const Point& p);

Complex inner_product(const CoefVector& u, const CoefVector& v);

}  // namespace bergman

#endif
