#ifndef BERGMAN_BEREZIN_HPP
#define BERGMAN_BEREZIN_HPP

#include "bergman/toeplitz.hpp"

#include <ostream>
#include <vector>

namespace bergman {

/// Berezin transform of a symbol: int f(z) prod_j |k_{p_j}(z_j)|^2 dnu(z),
/// computed per variable as a ratio of quadratures against the unnormalized
/// kernel (numerator and denominator share nodes, so f = 1 gives exactly 1).
/// The angle count is raised until kernel harmonics beyond it are negligible.
Complex berezin_symbol(const SymbolExpr& f, const Point& p, int q_r = 64);

/// Berezin transform of a truncated operator: <A khat_p, khat_p>.
Complex berezin_operator(const OperatorMatrix& a, const Point& p);

/// Linear approach path p(t) = (1-t) anchor + t target toward a boundary
/// point, sampled at the given parameters.
struct ApproachSchedule {
    Point target;
    Point anchor;                 // defaults to 0
    std::vector<double> ts{0.5, 0.75, 0.9, 0.95, 0.975, 0.99};

    static ApproachSchedule toward(Point target);
    Point at(double t) const;
};

struct DecayPoint {
    double t = 0;
    Point p;
    double abs_bt = 0;
    double defect = 0;  // 1 - ||khat_p||^2, kernel mass beyond the truncation
    bool reliable = false;
};

/// |BT(p(t))| along an approach path, with a truncation-adequacy flag per
/// point: the kernel norm is known exactly, so the profile self-reports where
/// its values can be trusted (defect <= 1e-6).
struct DecayProfile {
    Point target;
    Truncation trunc;
    int pad = 0;
    std::vector<DecayPoint> points;

    /// Value at the largest sampled t.
    double tail() const;
    /// Value at the last adequately-truncated point (tail() if none).
    double reliable_tail() const;
    double max_reliable() const;
    bool reliable_segment_decreasing() const;

    /// CSV rows `t,p1_re,p1_im,...,abs_bt,kernel_mass_defect,reliable`.
    void write_csv(std::ostream& os) const;
};

inline constexpr double kKernelMassTolerance = 1e-6;

DecayProfile decay_profile(const OperatorExpr& expr, const ApproachSchedule& schedule,
                           const Truncation& trunc, int pad);

}  // namespace bergman

#endif
