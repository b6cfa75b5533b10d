#include "bergman/diagnostics.hpp"
#include "bergman/parser.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace bergman;

TEST_CASE("grammar basics") {
    SymbolExpr s = parse_symbol("1 - z1*conj(z1)", 1);
    CHECK(std::abs(s.eval(Point({Complex(0.6, 0.0)})) - Complex(1.0 - 0.36)) < 1e-15);

    SymbolExpr phi = parse_symbol("radial(z2; [0,1/2]: 1-2r, [1/2,1]: 0)", 2);
    CHECK(phi == SymbolExpr::radial_profile(2, 2, phi_profile()));

    SymbolExpr p = parse_symbol("z1^2*conj(z2) + 3", 2);
    CHECK(p.terms().size() == 2);
    Point z({Complex(0.5, 0.1), Complex(-0.2, 0.3)});
    Complex expect = z.coords[0] * z.coords[0] * std::conj(z.coords[1]) + 3.0;
    CHECK(std::abs(p.eval(z) - expect) < 1e-14);

    SymbolExpr dec = parse_symbol("0.25*z1", 1);
    CHECK(std::abs(dec.eval(Point({Complex(1.0, 0.0)})) - Complex(0.25)) < 1e-16);

    SymbolExpr im = parse_symbol("i*z1 - i*z1", 1);
    CHECK(im.structurally_zero());

    SymbolExpr par = parse_symbol("(1 + z1)^2", 1);
    CHECK(std::abs(par.eval(Point({Complex(0.3)})) - Complex(1.69)) < 1e-14);
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK_THROWS_AS(parse_symbol("z1 + ", 1), parse_error);
    CHECK_THROWS_AS(parse_symbol("z3", 2), parse_error);
    CHECK_THROWS_AS(parse_symbol("radial(z1; [0,1/3]: 1)", 1), parse_error);  // gap in [0,1]
    CHECK_THROWS_AS(parse_symbol("1/0", 1), parse_error);
    CHECK_THROWS_AS(parse_symbol("z1 )", 1), parse_error);
    try {
        parse_symbol("z1 + $", 1);
        CHECK(false);
    } catch (const parse_error& e) {
        CHECK(e.offset == 5);
    }
}

TEST_CASE("operator expressions") {
    OperatorExpr expr = parse_operator(
        "T(radial(z2; [0,1/2]: 1-2r, [1/2,1]: 0)) * T(radial(z1; [0,1/2]: 1-2r, [1/2,1]: 0) + "
        "radial(z2; [0,1/2]: 0, [1/2,1]: 2r-1))",
        2);
    REQUIRE(expr.products.size() == 1);
    CHECK(expr.products[0].size() == 2);
    CHECK(expr.boundary_continuous());

    OperatorExpr sum = parse_operator("T(z1)*T(z2) + T(1) - T(z1*conj(z1))", 2);
    CHECK(sum.products.size() == 3);

    CHECK_THROWS_AS(parse_operator("T(z1) * z2", 2), parse_error);
}

TEST_CASE("serialization round-trips structurally on the corpus") {
    std::vector<std::string> corpus = {
        "1 - z1*conj(z1)",
        "radial(z2; [0,1/2]: 1-2r, [1/2,1]: 0)",
        "z1^2*conj(z2) + 3",
        "radial(z1; [0,1/2]: 1-2r, [1/2,1]: 0) + radial(z2; [0,1/2]: 0, [1/2,1]: 2r-1)",
        "radial(z1; [0,1]: 1-2r+3r^2)*z1*conj(z1)^2",
        "-z1 + 1/2*z2",
        "(1 + i)*z1*z2",
        "2/3",
    };
    for (auto& text : corpus) {
        SymbolExpr s = parse_symbol(text, 2);
        std::string emitted = symbol_to_text(s);
        CAPTURE(text);
        CAPTURE(emitted);
        SymbolExpr back = parse_symbol(emitted, 2);
        CHECK(back == s);
    }
}

TEST_CASE("operator serialization round-trips") {
    OperatorExpr expr = parse_operator("T(z1)*T(conj(z1)) + T(1 - z1*conj(z1))", 1);
    std::string emitted = operator_to_text(expr);
    OperatorExpr back = parse_operator(emitted, 1);
    REQUIRE(back.products.size() == expr.products.size());
    for (size_t p = 0; p < back.products.size(); ++p) {
        REQUIRE(back.products[p].size() == expr.products[p].size());
        for (size_t f = 0; f < back.products[p].size(); ++f)
            CHECK(back.products[p][f] == expr.products[p][f]);
    }
}

TEST_CASE("JSON form mirrors the AST losslessly") {
    SymbolExpr s = parse_symbol("radial(z1; [0,1/2]: 1-2r, [1/2,1]: 0)*conj(z2)^2 + (1+i)*z1", 2);
    Json j = symbol_to_json(s);
    SymbolExpr back = symbol_from_json(j);
    CHECK(back == s);
    CHECK(j["n"] == 2);
    // (1+i)*z1 distributes into two tensor terms, plus the radial product term
    CHECK(j["terms"].size() == 3);
}

TEST_CASE("parsed symbols and built symbols evaluate identically") {
    SymbolExpr built = (SymbolExpr::constant(2, RationalComplex(1)) -
                        SymbolExpr::coordinate(2, 1) * SymbolExpr::coordinate_conj(2, 1)) *
                       (SymbolExpr::constant(2, RationalComplex(1)) -
                        SymbolExpr::coordinate(2, 2) * SymbolExpr::coordinate_conj(2, 2));
    SymbolExpr parsed = parse_symbol("(1-z1*conj(z1))*(1-z2*conj(z2))", 2);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(-0.7, 0.7);
    for (int trial = 0; trial < 100; ++trial) {
        Point z({Complex(unit(rng), unit(rng)), Complex(unit(rng), unit(rng))});
        CHECK(std::abs(built.eval(z) - parsed.eval(z)) < 1e-15);
    }
}
