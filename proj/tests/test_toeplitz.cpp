#include "bergman/diagnostics.hpp"
#include "bergman/toeplitz.hpp"

#include "doctest.h"

#include <Eigen/SVD>

#include <cmath>
#include <random>

using namespace bergman;

namespace {

SymbolExpr zvar(int n, int j) { return SymbolExpr::coordinate(n, j); }
SymbolExpr zbar(int n, int j) { return SymbolExpr::coordinate_conj(n, j); }
SymbolExpr cnum(int n, long v) { return SymbolExpr::constant(n, RationalComplex(v)); }

UniSymbol uni(const SymbolExpr& s) {
    UniSymbol out;
    for (auto& t : s.terms())
        for (auto& u : t[0]) out.push_back(u);
    return out;
}

const Rational kPhiPsiProductDiag00(5, 144);  // lambda_0 * mu_0 = 1/12 * 5/12

}  // namespace

TEST_CASE("T_1 is the identity") {
    OperatorMatrix a = assemble(cnum(1, 1), Truncation({8}));
    CHECK((a.mat - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
    ScaledBandMatrix id = ScaledBandMatrix::identity(8);
    CHECK(assemble_exact_1var(uni(cnum(1, 1)), 8) == id);
}

TEST_CASE("radial symbols give exactly diagonal matrices") {
    ScaledBandMatrix t = assemble_exact_1var(uni(zvar(1, 1) * zbar(1, 1)), 12);
    CHECK(t.is_diagonal());
    std::vector<RationalComplex> diag = t.diagonal();
    for (int m = 0; m < 12; ++m) CHECK(diag[m] == RationalComplex(Rational(m + 1, m + 2)));
    ScaledBandMatrix phi = assemble_exact_1var({UniTerm{RationalComplex(1), 0, 0, phi_profile()}}, 52);
    CHECK(phi.is_diagonal());
    std::vector<RationalComplex> lam = phi.diagonal();
    for (unsigned m = 0; m < 52; ++m) {
        BigInt den = boost::multiprecision::pow(BigInt(4), m + 1) * (2 * m + 3);
        CHECK(lam[m] == RationalComplex(Rational(BigInt(1), den)));
    }
    CHECK(lam[0] == RationalComplex(Rational(1, 12)));
}

TEST_CASE("T_z has the square-root subdiagonal") {
    ScaledBandMatrix t = assemble_exact_1var(uni(zvar(1, 1)), 10);
    Eigen::MatrixXcd d = t.to_dense();
    for (int m = 0; m + 1 < 10; ++m)
        CHECK(std::abs(d(m + 1, m) - Complex(std::sqrt((m + 1.0) / (m + 2.0)))) < 1e-15);
    CHECK(std::abs(d(0, 1) - std::conj(d(1, 0))) > 0.0);  // not Hermitian
}

TEST_CASE("scaled composition reproduces matrix products") {
    ScaledBandMatrix id = ScaledBandMatrix::identity(8);
    ScaledBandMatrix phi = assemble_exact_1var({UniTerm{RationalComplex(1), 0, 0, phi_profile()}}, 8);
    CHECK(compose_exact(id, phi) == phi);
    CHECK(compose_exact(phi, id) == phi);

    ScaledBandMatrix psi = assemble_exact_1var({UniTerm{RationalComplex(1), 0, 0, psi_profile()}}, 8);
    ScaledBandMatrix prod = compose_exact(phi, psi);
    CHECK(prod.is_diagonal());
    CHECK(prod.diagonal()[0] == RationalComplex(kPhiPsiProductDiag00));
    CHECK(to_double(kPhiPsiProductDiag00) >= 17.0 / 576.0);

    // T_zbar T_z vs T_z T_zbar differ already at (0,0): 1/2 vs 0.
    ScaledBandMatrix tz = assemble_exact_1var(uni(zvar(1, 1)), 8);
    ScaledBandMatrix tzb = assemble_exact_1var(uni(zbar(1, 1)), 8);
    CHECK(compose_exact(tzb, tz).diagonal()[0] == RationalComplex(Rational(1, 2)));
    CHECK(compose_exact(tz, tzb).diagonal()[0] == RationalComplex(0));
}

TEST_CASE("scaled composition agrees with naive floating products") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> pick(0, 3);
    auto random_sym = [&]() {
        SymbolExpr s = cnum(1, 1);
        for (int i = 0; i < 2; ++i) {
            switch (pick(rng)) {
                case 0: s = s * zvar(1, 1); break;
                case 1: s = s * zbar(1, 1); break;
                case 2: s = s * SymbolExpr::radial_profile(1, 1, phi_profile()); break;
                default: s = s + cnum(1, 2); break;
            }
        }
        return s;
    };
    for (int trial = 0; trial < 10; ++trial) {
        SymbolExpr f = random_sym(), g = random_sym();
        ScaledBandMatrix a = assemble_exact_1var(uni(f), 16);
        ScaledBandMatrix b = assemble_exact_1var(uni(g), 16);
        Eigen::MatrixXcd lhs = compose_exact(a, b).to_dense();
        Eigen::MatrixXcd rhs = a.to_dense() * b.to_dense();
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("composing identities is the identity at any pad") {
    OperatorExpr expr;
    expr.n = 1;
    expr.products.push_back({cnum(1, 1), cnum(1, 1)});
    for (int pad : {0, 3, 8}) {
        OperatorMatrix a = compose(expr, Truncation({6}), pad);
        CHECK((a.mat - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("composition padding: analytic factors feel the truncation edge") {
    // T_zbar T_z at caps 8: the (7,7) entry needs basis index 8, so pad 0 is
    // biased there while pad 8 matches the caps-32 value exactly. Radial
    // products commute with truncation and need no padding.
    OperatorExpr expr;
    expr.n = 1;
    expr.products.push_back({zbar(1, 1), zvar(1, 1)});
    Truncation t8({8});
    OperatorMatrix pad0 = compose(expr, t8, 0);
    OperatorMatrix pad8 = compose(expr, t8, 8);
    OperatorMatrix wide = compose(expr, Truncation({32}), 0);
    CHECK(std::abs(pad0.mat(7, 7) - pad8.mat(7, 7)) > 1e-3);
    CHECK(std::abs(pad8.mat(7, 7) - wide.mat(7, 7)) < 1e-15);
    CHECK(default_pad(expr) == 2);

    OperatorExpr radial;
    radial.n = 1;
    radial.products.push_back({SymbolExpr::radial_profile(1, 1, phi_profile()),
                               SymbolExpr::radial_profile(1, 1, psi_profile())});
    CHECK(default_pad(radial) == 0);
    OperatorMatrix r0 = compose(radial, t8, 0);
    OperatorMatrix r8 = compose(radial, t8, 8);
    CHECK((r0.mat - r8.mat).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(r0.mat(0, 0) - Complex(to_double(kPhiPsiProductDiag00))) < 1e-16);
}

TEST_CASE("Kronecker assembly matches tensor symbols") {
    OperatorMatrix i4 = assemble(cnum(1, 1), Truncation({4}));
    OperatorMatrix i3 = assemble(cnum(1, 1), Truncation({3}));
    OperatorMatrix ii = kronecker(i4, i3);
    CHECK((ii.mat - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff() == 0.0);

    // f(z,w) = phi(w) assembles as I (x) diag(lambda)
    SymbolExpr f = SymbolExpr::radial_profile(2, 2, phi_profile());
    OperatorMatrix a = assemble(f, Truncation({4, 6}));
    OperatorMatrix phi1 = assemble(SymbolExpr::radial_profile(1, 1, phi_profile()), Truncation({6}));
    OperatorMatrix expected = kronecker(i4, phi1);
    CHECK((a.mat - expected.mat).cwiseAbs().maxCoeff() == 0.0);

    // (1-|z|^2)(1-|w|^2) = diag(1/(m+2)) (x) diag(1/(m+2))
    SymbolExpr g = (cnum(2, 1) - zvar(2, 1) * zbar(2, 1)) * (cnum(2, 1) - zvar(2, 2) * zbar(2, 2));
    OperatorMatrix b = assemble(g, Truncation({5, 5}));
    Truncation t55({5, 5});
    for (int m1 = 0; m1 < 5; ++m1)
        for (int m2 = 0; m2 < 5; ++m2) {
            long idx = t55.linearize({m1, m2});
            CHECK(std::abs(b.mat(idx, idx) - Complex(1.0 / ((m1 + 2.0) * (m2 + 2.0)))) < 1e-16);
        }
    CHECK(b.mat.cwiseAbs().sum() == doctest::Approx(b.mat.real().trace()).epsilon(1e-12));
}

TEST_CASE("operator norms") {
    CHECK(operator_norm(Eigen::MatrixXcd::Identity(16, 16)) == doctest::Approx(1.0).epsilon(1e-10));
    OperatorMatrix phi = assemble(SymbolExpr::radial_profile(1, 1, phi_profile()), Truncation({32}));
    CHECK(operator_norm(phi) == doctest::Approx(1.0 / 12.0).epsilon(1e-10));

    OperatorExpr expr;
    expr.n = 1;
    expr.products.push_back({SymbolExpr::radial_profile(1, 1, phi_profile()),
                             SymbolExpr::radial_profile(1, 1, psi_profile())});
    OperatorMatrix prod = compose(expr, Truncation({32}), 0);
    CHECK(operator_norm(prod) == doctest::Approx(to_double(kPhiPsiProductDiag00)).epsilon(1e-10));
    CHECK(operator_norm(prod) >= 17.0 / 576.0);

    std::mt19937_64 rng(11);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::MatrixXcd m(12, 12);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) m(i, j) = Complex(dist(rng), dist(rng));
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        CHECK(operator_norm(m) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-8));
    }
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(operator_norm(bad), std::invalid_argument);
}

TEST_CASE("real symbols assemble to Hermitian matrices") {
    SymbolExpr s = SymbolExpr::radial_profile(2, 1, phi_profile()) +
                   SymbolExpr::radial_profile(2, 2, psi_profile()) +
                   zvar(2, 1) * zbar(2, 2) + zvar(2, 2) * zbar(2, 1);
    OperatorMatrix a = assemble(s, Truncation({6, 6}));
    CHECK((a.mat - a.mat.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    OperatorMatrix q = assemble(s, Truncation({6, 6}), AssembleMode::Quadrature);
    CHECK((q.mat - q.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("exact and quadrature assembly agree") {
    std::vector<SymbolExpr> corpus;
    corpus.push_back(cnum(1, 1));
    corpus.push_back(zvar(1, 1) * zvar(1, 1) * zbar(1, 1));
    corpus.push_back(SymbolExpr::radial_profile(1, 1, phi_profile()) * zvar(1, 1));
    corpus.push_back(zvar(2, 1) * zbar(2, 2));
    corpus.push_back(SymbolExpr::radial_profile(2, 2, psi_profile()) + zvar(2, 1));
    for (auto& s : corpus) {
        Truncation t(std::vector<int>(s.dim(), 12));
        OperatorMatrix e = assemble(s, t);
        OperatorMatrix q = assemble(s, t, AssembleMode::Quadrature,
                                    std::vector<DiscRule>(s.dim(), DiscRule(64, 8)));
        CHECK((e.mat - q.mat).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("matrix-free application matches the dense composition") {
    OperatorExpr expr;
    expr.n = 2;
    expr.products.push_back({SymbolExpr::radial_profile(2, 2, phi_profile()),
                             SymbolExpr::radial_profile(2, 1, phi_profile()) +
                                 SymbolExpr::radial_profile(2, 2, psi_profile())});
    expr.products.push_back({zvar(2, 1) * zbar(2, 2)});
    Truncation t({5, 4});
    OperatorMatrix dense = compose(expr, t, 0);
    KronApplicator op(expr, t);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXcd v(t.total());
        for (long i = 0; i < v.size(); ++i) v(i) = Complex(dist(rng), dist(rng));
        CHECK((op.apply(v) - dense.mat * v).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("band matrix bookkeeping") {
    ScaledBandMatrix m(4);
    CHECK(m.is_zero());
    m.add_band(1, {RationalComplex(1), RationalComplex(2), RationalComplex(3)});
    CHECK(!m.is_zero());
    CHECK(m.scaled_entry(1, 0) == RationalComplex(1));
    CHECK(m.scaled_entry(3, 2) == RationalComplex(3));
    CHECK(m.scaled_entry(0, 1) == RationalComplex(0));
    CHECK_THROWS_AS(m.add_band(0, {RationalComplex(1)}), std::invalid_argument);
    CHECK_THROWS_AS(compose_exact(m, ScaledBandMatrix(5)), std::invalid_argument);
}
