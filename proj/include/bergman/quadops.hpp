#ifndef BERGMAN_QUADOPS_HPP
#define BERGMAN_QUADOPS_HPP

#include "bergman/symbols.hpp"

#include <vector>

namespace bergman {

/// Gauss-Legendre rule on [0,1]: integrates polynomials of degree <= 2Q-1
/// exactly; weights sum to 1.
struct RadialRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order() const { return static_cast<int>(nodes.size()); }
};

RadialRule gauss_legendre(int q);

/// Product rule on the unit disc in polar form: composite Gauss-Legendre in
/// the radius (per panel), equispaced trapezoid in the angle. Exact for
/// trigonometric polynomials of angular degree < q_theta.
struct DiscRule {
    RadialRule radial;     // panel rule
    int q_theta = 8;
    bool composite = true;  // split the radial integral at profile breakpoints

    DiscRule() : radial(gauss_legendre(16)) {}
    DiscRule(int q_r, int q_t, bool comp = true) : radial(gauss_legendre(q_r)), q_theta(q_t), composite(comp) {}
};

/// Integral over the disc against normalized area measure:
/// int_D f dnu = 2 int_0^1 (angular mean of f(r e^{i theta})) r dr.
Complex disc_integral(const SymbolExpr& f, const DiscRule& rule);

/// Exact 2 int_0^1 rho(r) r^{2k+1} dr (piecewise antidifferentiation).
Rational exact_radial_moment(const PiecewisePoly& rho, unsigned k);

/// Radial panels for a set of profiles: their breakpoints, or [0,1] when the
/// rule is non-composite.
std::vector<double> radial_panels(const std::vector<const PiecewisePoly*>& profiles, bool composite);

}  // namespace bergman

#endif
