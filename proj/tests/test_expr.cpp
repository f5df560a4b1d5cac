#include <doctest.h>

#include <random>

#include "afftool/expr.hpp"
#include "afftool/tables.hpp"

using namespace afftool;

TEST_CASE("element expression parsing") {
    auto ast = parse_element("J3+S2", 2);
    Matrix h = eval_element(*ast, 2);
    CHECK(h.rows == 5);
    CHECK(h == direct_sum(2, {jordan_block(2, 3), singer(2, 2, 1)}));

    ast = parse_element("S1*J2", 3);
    CHECK(eval_element(*ast, 3) == kronecker(singer(3, 1, 1), jordan_block(3, 2)));

    ast = parse_element("S4^3", 2);
    CHECK(eval_element(*ast, 2) == singer(2, 4, 3));

    ast = parse_element("[0,1;1,1]", 2);
    CHECK(eval_element(*ast, 2) == parse_matrix("[0,1;1,1]", 2));

    ast = parse_element("(J1+S2)*J2", 2);
    CHECK(eval_element(*ast, 2) ==
          kronecker(direct_sum(2, {jordan_block(2, 1), singer(2, 2, 1)}), jordan_block(2, 2)));
}

TEST_CASE("parse errors carry the offset") {
    try {
        parse_element("J2+", 2);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset == 3);
    }
    CHECK_THROWS_AS(parse_element("J2)", 2), ParseError);
    CHECK_THROWS_AS(parse_element("Q3", 2), ParseError);
    CHECK_THROWS_AS(parse_element("J2+S2", 4), std::invalid_argument);  // p not prime
}

TEST_CASE("parser survives arbitrary input") {
    std::mt19937_64 gen(97);
    const std::string alphabet = "JSI0123456789+*^()[];, x";
    for (int iter = 0; iter < 3000; ++iter) {
        std::string s;
        std::size_t len = gen() % 16;
        for (std::size_t k = 0; k < len; ++k) s += alphabet[gen() % alphabet.size()];
        try {
            auto ast = parse_element(s, 3);
            Matrix m = eval_element(*ast, 3);  // must evaluate when it parses
            CHECK(m.rows == m.cols);
        } catch (const std::invalid_argument&) {
            // rejected inputs must fail with a diagnostic, never crash
        }
    }
}

TEST_CASE("print/parse round trips to an identical tree") {
    for (const char* text : {"J3+S2", "S1*J2", "S4^3+J1", "(J1+S2)*J2+J1", "[0,1;1,1]+J2"}) {
        auto ast = parse_element(text, 2);
        std::string printed = print_element(*ast);
        auto again = parse_element(printed, 2);
        CHECK_MESSAGE(ast->equal(*again), text, " -> ", printed);
    }
}

// classification of parsed expressions agrees with the table matcher; the
// corpus covers every table
TEST_CASE("golden classification corpus") {
    struct Golden {
        u32 p, d;
        const char* h;
        const char* t;
        TableKind kind;
        int table, line;
    };
    const Golden corpus[] = {
        {2, 4, "S4", "0", TableKind::orders, 2, 1},
        {3, 3, "S3^2", "0", TableKind::orders, 2, 1},
        {5, 2, "J1+S1", "e1", TableKind::orders, 2, 2},
        {2, 1, "J1", "e1", TableKind::orders, 2, 3},
        {3, 4, "J1+S3", "0", TableKind::orders, 3, 1},
        {3, 4, "S1+S3", "0", TableKind::orders, 3, 2},
        {3, 5, "(S1*J2)+S3^2", "0", TableKind::orders, 3, 3},
        {3, 4, "J2+S2", "0", TableKind::orders, 3, 4},
        {3, 4, "J1+J1+S2", "e1", TableKind::orders, 3, 5},
        {3, 5, "J3+S2", "e1", TableKind::orders, 3, 6},
        {2, 3, "J1+S2", "0", TableKind::orders, 3, 7},
        {2, 5, "S2+S3", "0", TableKind::orders, 3, 8},
        {2, 7, "(S2*J2)+S3", "0", TableKind::orders, 3, 9},
        {2, 5, "J3+S2", "0", TableKind::orders, 3, 10},
        {2, 4, "J2+S2", "0", TableKind::orders, 3, 11},
        {2, 12, "S2+[0,1;1,1]+S3+S5", "0", TableKind::orders, 3, 12},
        {2, 7, "S4^3+S3", "0", TableKind::orders, 3, 13},
        {2, 6, "J1+S2+S3", "e1", TableKind::orders, 3, 14},
        {2, 7, "J2+S2+S3", "e1", TableKind::orders, 3, 15},
        {2, 9, "J4+S2+S3", "e1", TableKind::orders, 3, 16},
        {2, 6, "J2+S4^3", "e1", TableKind::orders, 3, 17},
        {7, 2, "S1*J2", "0", TableKind::orders, 4, 1},
        {3, 4, "S2*J2", "0", TableKind::orders, 4, 2},
        {3, 3, "J3", "e1", TableKind::orders, 4, 3},
        {2, 5, "J5", "0", TableKind::orders, 4, 4},
        {2, 4, "J4", "e1", TableKind::orders, 4, 7},
        {2, 3, "J2+J1", "e1", TableKind::orders, 4, 10},
        {5, 2, "S2^2", "0", TableKind::cycles, 5, 1},
        {3, 2, "S1*J2", "0", TableKind::cycles, 5, 2},
        {5, 1, "I1", "e1", TableKind::cycles, 5, 3},
        {3, 3, "J1+S2", "e1", TableKind::cycles, 5, 4},
        {2, 5, "S2+S3", "0", TableKind::cycles, 6, 1},
        {2, 4, "J1+S3", "0", TableKind::cycles, 6, 2},
        {2, 5, "J3+S2", "e1", TableKind::cycles, 6, 3},
        {2, 4, "J1+J1+S2", "e1", TableKind::cycles, 6, 4},
        {2, 5, "J2+S3", "e1", TableKind::cycles, 6, 5},
        {2, 6, "J2+J1+S3", "e1", TableKind::cycles, 6, 6},
        {2, 6, "J1+S2+S3", "e1", TableKind::cycles, 6, 7},
        {2, 6, "J4+S2", "e1", TableKind::cycles, 6, 8},
        {2, 2, "I2", "e1", TableKind::cycles, 7, 1},
        {3, 2, "J2", "e1", TableKind::cycles, 7, 2},
        {2, 3, "J3", "e1", TableKind::cycles, 7, 3},
        {2, 3, "J2+J1", "e3", TableKind::cycles, 7, 4},
        {2, 3, "J3", "0", TableKind::cycles, 7, 5},
        {2, 4, "J3+J1", "e1", TableKind::cycles, 7, 6},
        {2, 4, "S2*J2", "0", TableKind::cycles, 7, 7},
        {2, 5, "J5", "e1", TableKind::cycles, 7, 8},
        {2, 2, "J2", "e1", TableKind::cycles, 7, 9},
        {2, 3, "I3", "e1", TableKind::cycles, 7, 10},
        {2, 3, "J2+J1", "e1", TableKind::cycles, 7, 11},
        {3, 3, "J3", "e1", TableKind::cycles, 7, 12},
        {2, 4, "J2+J2", "e1", TableKind::cycles, 7, 13},
        {2, 4, "J4", "e1", TableKind::cycles, 7, 14},
        {2, 5, "J4+J1", "e1", TableKind::cycles, 7, 15},
    };
    for (const auto& g : corpus) {
        auto ast = parse_element(g.h, g.p);
        Matrix h = eval_element(*ast, g.p);
        REQUIRE_MESSAGE(h.rows == g.d, g.h);
        AffineMap el = make_affine(h, parse_vec(g.t, g.p, g.d));
        MatchResult m = match(el, g.kind);
        bool found = false;
        for (const auto& hit : m.matched)
            if (hit.line == LineId{g.table, g.line}) found = true;
        CHECK_MESSAGE(found, g.h, " with t=", g.t, " should land in T", g.table, ".L", g.line);
    }
}
