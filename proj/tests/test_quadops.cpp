#include "bergman/diagnostics.hpp"
#include "bergman/quadops.hpp"

#include "doctest.h"

#include <cmath>

using namespace bergman;

TEST_CASE("Gauss-Legendre nodes and weights on [0,1]") {
    RadialRule q1 = gauss_legendre(1);
    CHECK(q1.nodes[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q1.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

    RadialRule q2 = gauss_legendre(2);
    const double off = 0.5 / std::sqrt(3.0);
    CHECK(q2.nodes[0] == doctest::Approx(0.5 - off).epsilon(1e-14));
    CHECK(q2.nodes[1] == doctest::Approx(0.5 + off).epsilon(1e-14));
    CHECK(q2.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(q2.weights[1] == doctest::Approx(0.5).epsilon(1e-14));

    // degree-3 exactness at Q=2: int_0^1 r^3 dr = 1/4
    double val = 0.0;
    for (int i = 0; i < 2; ++i) val += q2.weights[i] * std::pow(q2.nodes[i], 3);
    CHECK(val == doctest::Approx(0.25).epsilon(1e-15));

    for (int q : {3, 8, 16, 64}) {
        RadialRule r = gauss_legendre(q);
        double sum = 0.0;
        for (double w : r.weights) sum += w;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("disc integrals of elementary symbols") {
    DiscRule rule(16, 8);
    SymbolExpr one = SymbolExpr::constant(1, RationalComplex(1));
    CHECK(std::abs(disc_integral(one, rule) - Complex(1.0)) < 1e-14);
    SymbolExpr zz = SymbolExpr::coordinate(1, 1) * SymbolExpr::coordinate_conj(1, 1);
    CHECK(std::abs(disc_integral(zz, rule) - Complex(0.5)) < 1e-12);
    CHECK(std::abs(disc_integral(SymbolExpr::coordinate(1, 1), rule)) < 1e-14);
}

TEST_CASE("exact radial moments") {
    CHECK(exact_radial_moment(phi_profile(), 0) == Rational(1, 12));
    // T_phi diagonal: (k+1) * moment = 4^{-(k+1)} / (2k+3)
    for (unsigned k = 0; k <= 20; ++k) {
        BigInt den = boost::multiprecision::pow(BigInt(4), k + 1) * (2 * k + 3);
        CHECK(Rational(k + 1) * exact_radial_moment(phi_profile(), k) == Rational(BigInt(1), den));
    }
    // psi moment at k=0 from the antiderivative: 2 int_{1/2}^1 (2r-1) r dr = 5/12
    CHECK(exact_radial_moment(psi_profile(), 0) == Rational(5, 12));
    for (unsigned k : {0u, 1u, 3u, 7u}) CHECK(exact_radial_moment(PiecewisePoly::one(), k) == Rational(1, k + 1));
}

TEST_CASE("exact moments agree with disc quadrature up to k = 40") {
    DiscRule rule(64, 8);
    for (const PiecewisePoly& rho : {phi_profile(), psi_profile()}) {
        for (unsigned k = 0; k <= 40; k += 8) {
            SymbolExpr s = SymbolExpr::radial_profile(1, 1, rho);
            SymbolExpr zz = SymbolExpr::coordinate(1, 1) * SymbolExpr::coordinate_conj(1, 1);
            SymbolExpr integrand = s;
            for (unsigned i = 0; i < k; ++i) integrand = integrand * zz;
            Complex quad = disc_integral(integrand, rule);
            CHECK(std::abs(quad - Complex(to_double(exact_radial_moment(rho, k)))) < 1e-10);
        }
    }
}

TEST_CASE("single-panel quadrature converges on the kinked profile") {
    // With panels aligned to the breakpoints the rule is exact, so the
    // convergence study deliberately uses one panel over the kink.
    const double exact = to_double(exact_radial_moment(phi_profile(), 0));
    SymbolExpr s = SymbolExpr::radial_profile(1, 1, phi_profile());
    double prev_err = -1.0;
    for (int q : {4, 8, 16, 32, 64, 128, 256, 512}) {
        DiscRule rule(q, 4, /*composite=*/false);
        double err = std::abs(disc_integral(s, rule) - Complex(exact));
        if (prev_err >= 0.0) CHECK(err <= 0.5 * prev_err + 1e-12);
        prev_err = err;
    }
    CHECK(prev_err < 1e-6);
}
