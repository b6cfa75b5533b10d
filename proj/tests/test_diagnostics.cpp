#include "bergman/diagnostics.hpp"

#include "doctest.h"

#include <cmath>

using namespace bergman;

namespace {

SymbolExpr zvar(int n, int j) { return SymbolExpr::coordinate(n, j); }
SymbolExpr zbar(int n, int j) { return SymbolExpr::coordinate_conj(n, j); }
SymbolExpr cnum(int n, long v) { return SymbolExpr::constant(n, RationalComplex(v)); }
PolyZZbar pz(int n, int j) { return PolyZZbar::variable(n, j); }
PolyZZbar pzb(int n, int j) { return PolyZZbar::variable_conj(n, j); }

SymbolExpr separable_compact() {
    return (cnum(2, 1) - zvar(2, 1) * zbar(2, 1)) * (cnum(2, 1) - zvar(2, 2) * zbar(2, 2));
}

const double kSliceLowerBound = 17.0 / 576.0;

}  // namespace

TEST_CASE("slice test: separable symbol has exactly zero slices") {
    OperatorExpr expr = OperatorExpr::single(separable_compact());
    auto slices = restriction_slice_test(expr, 16, Truncation({16, 16}), 0, 1e-8);
    CHECK(slices.size() == 32);
    for (auto& s : slices) {
        CHECK(s.exact_zero);
        CHECK(s.norm == 0.0);
    }
}

TEST_CASE("slice test: boundary-only vanishing product is caught on k=1") {
    OperatorExpr expr;
    expr.n = 2;
    SymbolExpr f = SymbolExpr::radial_profile(2, 2, phi_profile());
    SymbolExpr g = SymbolExpr::radial_profile(2, 1, phi_profile()) +
                   SymbolExpr::radial_profile(2, 2, psi_profile());
    expr.products.push_back({f, g});
    auto slices = restriction_slice_test(expr, 8, Truncation({16, 16}), 0, 1e-8);
    const double expected = 5.0 / 144.0;
    for (auto& s : slices) {
        if (s.k == 1) {
            CHECK(!s.exact_zero);
            CHECK(s.norm == doctest::Approx(expected).epsilon(1e-9));
            CHECK(s.norm >= kSliceLowerBound);
        } else {
            CHECK(s.exact_zero);  // phi(xi) = 0 kills the first factor
        }
    }
}

TEST_CASE("slice test: same-variable product is caught on k=1, scalar on k=2") {
    OperatorExpr expr;
    expr.n = 2;
    expr.products.push_back({SymbolExpr::radial_profile(2, 2, phi_profile()),
                             SymbolExpr::radial_profile(2, 2, psi_profile())});
    auto slices = restriction_slice_test(expr, 8, Truncation({16, 16}), 0, 1e-8);
    for (auto& s : slices) {
        if (s.k == 1)
            CHECK(s.norm >= kSliceLowerBound);
        else
            CHECK(s.exact_zero);
    }
}

TEST_CASE("slice test refuses discontinuous symbols") {
    OperatorExpr expr = OperatorExpr::single(SymbolExpr::radial_profile(2, 1, phi_profile(Rational(3, 5))));
    CHECK_THROWS_AS(restriction_slice_test(expr, 4, Truncation({8, 8}), 0, 1e-8), refusal_error);
}

TEST_CASE("exactness dominance: structural zeros have negligible float norms") {
    SymbolExpr f = separable_compact();
    for (int caps : {8, 16, 24}) {
        for (int k = 1; k <= 2; ++k) {
            for (double arg : {0.0, 1.1, 2.7}) {
                SymbolExpr sliced = f.restrict(k, std::polar(1.0, arg));
                OperatorMatrix a = sliced.has_terms()
                                       ? assemble(sliced, Truncation({caps}))
                                       : OperatorMatrix(Truncation({caps}),
                                                        Eigen::MatrixXcd::Zero(caps, caps));
                CHECK(operator_norm(a) <= 1e-13);
            }
        }
    }
}

TEST_CASE("monotone evidence: certifying slice norms survive cap doubling") {
    OperatorExpr expr;
    expr.n = 2;
    expr.products.push_back({SymbolExpr::radial_profile(2, 2, phi_profile()),
                             SymbolExpr::radial_profile(2, 1, phi_profile()) +
                                 SymbolExpr::radial_profile(2, 2, psi_profile())});
    double norm16 = 0.0, norm32 = 0.0;
    for (auto& s : restriction_slice_test(expr, 4, Truncation({16, 16}), 0, 1e-8))
        norm16 = std::max(norm16, s.norm);
    for (auto& s : restriction_slice_test(expr, 4, Truncation({32, 32}), 0, 1e-8))
        norm32 = std::max(norm32, s.norm);
    CHECK(norm16 > 1e-8);
    CHECK(norm32 >= norm16 - 1e-12);
}

TEST_CASE("decay test flags persistence and accepts decay") {
    Truncation t({48, 48});
    // compact separable case: no obstruction on the default targets
    DecayTestResult ok = decay_test(OperatorExpr::single(separable_compact()), default_decay_targets(2),
                                    t, 0, 1e-2, {});
    CHECK(ok.verdict == Verdict::Inconclusive);

    // same-variable product: constant reliable profile above tol
    OperatorExpr bad;
    bad.n = 2;
    bad.products.push_back({SymbolExpr::radial_profile(2, 2, phi_profile()),
                            SymbolExpr::radial_profile(2, 2, psi_profile())});
    DecayTestResult caught = decay_test(bad, {Point({Complex(1.0), Complex(0.0)})}, t, 0, 1e-6, {});
    CHECK(caught.verdict == Verdict::NotCompact);

    // T_{z1} T_{z2} toward the corner (1,1): |BT| climbs toward 1
    OperatorExpr zz;
    zz.n = 2;
    zz.products.push_back({zvar(2, 1), zvar(2, 2)});
    DecayTestResult corner = decay_test(zz, {Point({Complex(1.0), Complex(1.0)})}, t, 2, 1e-6, {});
    CHECK(corner.verdict == Verdict::NotCompact);

    CHECK_THROWS_AS(decay_test(zz, {Point({Complex(0.5), Complex(0.0)})}, t, 0, 1e-6, {}),
                    std::invalid_argument);
}

TEST_CASE("harmonic slice criterion") {
    CHECK(harmonic_slice_criterion(pz(2, 1), pzb(2, 2)) == Verdict::NotCompact);
    CHECK(harmonic_slice_criterion(PolyZZbar(2), pz(2, 1) + pzb(2, 2)) == Verdict::Compact);
    CHECK(harmonic_slice_criterion(pz(2, 1), pz(2, 2)) == Verdict::NotCompact);
    CHECK_THROWS_AS(harmonic_slice_criterion(pz(2, 1) * pzb(2, 1), pz(2, 2)), refusal_error);
}

TEST_CASE("decoupled criterion") {
    SymbolExpr phi_z = SymbolExpr::radial_profile(2, 1, phi_profile());
    SymbolExpr phi_w = SymbolExpr::radial_profile(2, 2, phi_profile());
    SymbolExpr psi_w = SymbolExpr::radial_profile(2, 2, psi_profile());

    // phi in each variable: F = phi(z)phi(w) vanishes on the boundary and is
    // 1 at the origin -> compact.
    DecoupledResult compact = decoupled_criterion({phi_z, phi_w});
    CHECK(compact.verdict == Verdict::Compact);
    REQUIRE(compact.witness.has_value());

    // phi(z) with psi(w): psi = 1 on the circle, so F = phi(z)psi(w) misses
    // the face {|w|=1} and the product operator is not compact.
    DecoupledResult caught = decoupled_criterion({phi_z, psi_w});
    CHECK(caught.verdict == Verdict::NotCompact);

    // both factors in the same variable with disjoint supports: F vanishes
    // identically, the criterion cannot speak.
    DecoupledResult silent = decoupled_criterion({phi_w, psi_w});
    CHECK(silent.verdict == Verdict::Inconclusive);

    // F = z1 z2 has modulus 1 on the torus.
    DecoupledResult torus = decoupled_criterion({zvar(2, 1), zvar(2, 2)});
    CHECK(torus.verdict == Verdict::NotCompact);

    CHECK_THROWS_AS(decoupled_criterion({phi_z + psi_w}), refusal_error);
}

TEST_CASE("decoupled criterion agrees with the slice test on its compact case") {
    SymbolExpr phi_z = SymbolExpr::radial_profile(2, 1, phi_profile());
    SymbolExpr phi_w = SymbolExpr::radial_profile(2, 2, phi_profile());
    OperatorExpr expr;
    expr.n = 2;
    expr.products.push_back({phi_z, phi_w});
    auto slices = restriction_slice_test(expr, 8, Truncation({12, 12}), 0, 1e-8);
    for (auto& s : slices) CHECK(s.exact_zero);
}

TEST_CASE("polynomial criterion") {
    PolyZZbar one = PolyZZbar::constant(2, RationalComplex(1));
    PolyZZbar mod_z = one - pz(2, 1) * pzb(2, 1);
    PolyZZbar mod_w = one - pz(2, 2) * pzb(2, 2);
    SymbolExpr h1 = cnum(2, 1);

    CHECK(polynomial_criterion({mod_z}, h1, {mod_w}) == Verdict::Compact);
    CHECK(polynomial_criterion({pz(2, 1)}, h1, {pz(2, 2)}) == Verdict::NotCompact);

    // h = phi(w)psi(w) is the zero symbol, so T_h itself is compact even
    // though T_phi(w) T_psi(w) with the same pointwise product is not: the
    // criterion speaks about the stated operator shape only.
    SymbolExpr h_product = SymbolExpr::radial_profile(2, 2, phi_profile()) *
                           SymbolExpr::radial_profile(2, 2, psi_profile());
    CHECK(polynomial_criterion({}, h_product, {}) == Verdict::Compact);

    CHECK_THROWS_AS(polynomial_criterion({PolyZZbar::variable(1, 1)}, cnum(1, 1), {}), refusal_error);
    CHECK_THROWS_AS(
        polynomial_criterion({}, SymbolExpr::radial_profile(2, 1, phi_profile(Rational(3, 5))), {}),
        refusal_error);
}

TEST_CASE("limit probe vanishes identically when psi has no z1 dependence") {
    SymbolExpr psi = SymbolExpr::radial_profile(2, 2, psi_profile());
    CoefVector h = CoefVector::unit(Truncation({8}));
    auto pts = lemma_limit_probe(psi, Complex(1.0), h, {0.25, 0.5, 0.9});
    for (auto& pt : pts) CHECK(pt.value < 1e-13);
}

TEST_CASE("limit probe for |z1|^2 matches the quadrature oracle and decays") {
    SymbolExpr psi = zvar(2, 1) * zbar(2, 1);
    CoefVector h = CoefVector::unit(Truncation({8}));
    auto pts = lemma_limit_probe(psi, Complex(1.0), h, {0.0, 0.5, 0.9, 0.99});
    // ||(|z|^2 - 1) k_0|| = sqrt(int (1-r^2)^2 dnu) = sqrt(1/3)
    CHECK(pts[0].value == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-10));
    // independent oracle at t = 0.5: 1-variable disc quadrature of
    // (1-|z|^2)^2 |k_p|^2
    {
        SymbolExpr w = cnum(1, 1) - zvar(1, 1) * zbar(1, 1);
        Complex q = berezin_symbol(w * w, Point({Complex(0.5)}));
        CHECK(pts[1].value == doctest::Approx(std::sqrt(q.real())).epsilon(1e-9));
    }
    for (size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].value < pts[i - 1].value);
    CHECK(pts.back().value < 0.05);
    for (auto& pt : pts) CHECK(pt.reliable);
}

TEST_CASE("limit probe for z1 decays to zero") {
    SymbolExpr psi = zvar(2, 1);
    CoefVector h = CoefVector::unit(Truncation({8}));
    auto pts = lemma_limit_probe(psi, Complex(1.0), h, {0.0, 0.5, 0.9, 0.99});
    // ||(z-1) k_t|| at t=0: sqrt(int |z-1|^2 dnu) = sqrt(3/2)
    CHECK(pts[0].value == doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));
    for (size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].value < pts[i - 1].value);
    CHECK(pts.back().value < 0.05 * pts.front().value);
}

TEST_CASE("full pipeline verdicts") {
    RunConfig config;
    config.caps = {24, 24};
    config.xi_count = 16;

    OperatorExpr compact = OperatorExpr::single(separable_compact());
    compact.text = "T((1-z1*conj(z1))*(1-z2*conj(z2)))";
    CompactnessReport r1 = run_compactness(compact, config);
    CHECK(r1.verdict == Verdict::CompactConsistent);

    OperatorExpr product;
    product.n = 2;
    product.products.push_back({SymbolExpr::radial_profile(2, 2, phi_profile()),
                                SymbolExpr::radial_profile(2, 1, phi_profile()) +
                                    SymbolExpr::radial_profile(2, 2, psi_profile())});
    CompactnessReport r2 = run_compactness(product, config);
    CHECK(r2.verdict == Verdict::NotCompact);

    OperatorExpr holo;
    holo.n = 2;
    holo.products.push_back({zvar(2, 1), zvar(2, 2)});
    CompactnessReport r3 = run_compactness(holo, config);
    CHECK(r3.verdict == Verdict::NotCompact);

    Json j = r1.to_json();
    CHECK(j["verdict"] == "compact-consistent");
    CHECK(j.contains("slices"));
    CHECK(j.contains("profiles"));
    CHECK(j.contains("face_maxima"));
}

TEST_CASE("example catalog claims hold and the corrupted profile is flagged") {
    RunConfig config;
    config.caps = {24, 24};
    config.xi_count = 16;
    ExamplesResult good = reproduce_examples(config);
    CHECK(good.failed_claims.empty());
    CHECK(good.bundle["all_claims_pass"] == true);

    // the claims are truncation-robust: halved caps still pass
    RunConfig small = config;
    small.caps = {16, 16};
    ExamplesResult halved = reproduce_examples(small);
    CHECK(halved.failed_claims.empty());

    ExamplesResult corrupted = reproduce_examples(config, Rational(3, 5));
    CHECK(!corrupted.failed_claims.empty());
    REQUIRE(corrupted.bundle.contains("warnings"));
    bool has_continuity_warning = false;
    for (auto& w : corrupted.bundle["warnings"])
        has_continuity_warning =
            has_continuity_warning || w.get<std::string>().find("not continuous") != std::string::npos;
    CHECK(has_continuity_warning);
}

TEST_CASE("criterion agreement between the polynomial test and the slice test") {
    PolyZZbar one = PolyZZbar::constant(2, RationalComplex(1));
    PolyZZbar mod_z = one - pz(2, 1) * pzb(2, 1);
    PolyZZbar mod_w = one - pz(2, 2) * pzb(2, 2);
    SymbolExpr h1 = cnum(2, 1);

    struct Instance {
        std::vector<PolyZZbar> fs, gs;
    };
    std::vector<Instance> instances = {
        {{mod_z}, {mod_w}},
        {{pz(2, 1)}, {pz(2, 2)}},
        {{mod_z * pz(2, 1)}, {}},
        {{mod_z * mod_w}, {}},
        {{pz(2, 1) - pz(2, 2)}, {}},
    };
    for (auto& inst : instances) {
        Verdict poly = polynomial_criterion(inst.fs, h1, inst.gs);
        OperatorExpr expr;
        expr.n = 2;
        std::vector<SymbolExpr> factors;
        for (auto& f : inst.fs) factors.push_back(f.to_symbol());
        factors.push_back(h1);
        for (auto& g : inst.gs) factors.push_back(g.to_symbol());
        expr.products.push_back(std::move(factors));
        auto slices = restriction_slice_test(expr, 8, Truncation({12, 12}), default_pad(expr), 1e-8);
        double worst = 0.0;
        for (auto& s : slices) worst = std::max(worst, s.norm);
        if (poly == Verdict::Compact)
            CHECK(worst <= 1e-8);
        else
            CHECK(worst > 1e-8);
    }
}
