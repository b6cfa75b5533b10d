#include "bergman/quadops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace bergman {

namespace {

RadialRule compute_gauss_legendre(int q) {
    // Newton iteration on the Legendre recurrence over [-1,1], mapped to [0,1].
    RadialRule rule;
    rule.nodes.resize(q);
    rule.weights.resize(q);
    const int m = (q + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double p1 = 0.0, dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < q; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) * x * p2 - j * p3) / (j + 1);
            }
            dp = q * (x * p1 - p2) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1,1] -> [0,1]
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.nodes[q - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = 0.5 * w;
        rule.weights[q - 1 - i] = 0.5 * w;
    }
    return rule;
}

std::map<int, RadialRule>& rule_cache() {
    static std::map<int, RadialRule> cache;
    return cache;
}
std::mutex rule_mutex;

}  // namespace

RadialRule gauss_legendre(int q) {
    if (q < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    std::lock_guard<std::mutex> lock(rule_mutex);
    auto it = rule_cache().find(q);
    if (it == rule_cache().end()) it = rule_cache().emplace(q, compute_gauss_legendre(q)).first;
    return it->second;
}

std::vector<double> radial_panels(const std::vector<const PiecewisePoly*>& profiles, bool composite) {
    std::vector<double> panels{0.0, 1.0};
    if (composite) {
        for (auto* rho : profiles)
            for (auto& bp : rho->breakpoints()) panels.push_back(to_double(bp));
        std::sort(panels.begin(), panels.end());
        panels.erase(std::unique(panels.begin(), panels.end()), panels.end());
    }
    return panels;
}

Complex disc_integral(const SymbolExpr& f, const DiscRule& rule) {
    if (f.dim() != 1) throw std::invalid_argument("disc_integral: one-variable symbols only");
    std::vector<const PiecewisePoly*> profiles;
    for (auto& t : f.terms())
        for (auto& u : t[0]) profiles.push_back(&u.radial);
    std::vector<double> panels = radial_panels(profiles, rule.composite);
    const double two_pi = 2.0 * std::numbers::pi;
    const int qt = std::max(rule.q_theta, f.angular_degree(1) + 1);
    Complex total = 0.0;
    Point z;
    z.coords.resize(1);
    for (size_t s = 0; s + 1 < panels.size(); ++s) {
        const double lo = panels[s], hi = panels[s + 1];
        for (int i = 0; i < rule.radial.order(); ++i) {
            const double r = lo + (hi - lo) * rule.radial.nodes[i];
            const double w = (hi - lo) * rule.radial.weights[i];
            Complex mean = 0.0;
            for (int a = 0; a < qt; ++a) {
                z.coords[0] = std::polar(r, two_pi * a / qt);
                mean += f.eval(z);
            }
            mean /= static_cast<double>(qt);
            total += 2.0 * w * r * mean;
        }
    }
    return total;
}

Rational exact_radial_moment(const PiecewisePoly& rho, unsigned k) {
    RationalComplex m = rho.radial_moment(k);
    if (m.im != 0)
        throw std::invalid_argument("exact_radial_moment: profile has non-real coefficients");
    return m.re;
}

}  // namespace bergman
