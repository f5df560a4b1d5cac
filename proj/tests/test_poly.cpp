#include <doctest.h>

#include <random>

#include "afftool/poly.hpp"

using namespace afftool;

namespace {

Polynomial P(u32 p, std::initializer_list<u32> lowest_first) {
    return Polynomial(p, std::vector<u32>(lowest_first));
}

// trial-division oracle, independent of the gcd-based production path
bool naive_irreducible(const Polynomial& f) {
    for (int dg = 1; 2 * dg <= f.degree(); ++dg) {
        u64 space = ipow(f.p, u64(dg));
        for (u64 n = 0; n < space; ++n) {
            Polynomial cand;
            cand.p = f.p;
            cand.c.assign(std::size_t(dg) + 1, 0);
            u64 t = n;
            for (int i = 0; i < dg; ++i) {
                cand.c[std::size_t(i)] = u32(t % f.p);
                t /= f.p;
            }
            cand.c[std::size_t(dg)] = 1;
            if (poly_divmod(f, cand).second.is_zero()) return false;
        }
    }
    return f.degree() >= 1;
}

// order by brute-force powering of x mod f
u64 naive_order(const Polynomial& f) {
    Polynomial acc = poly_mod(Polynomial::x(f.p), f);
    Polynomial one = Polynomial::one(f.p);
    u64 e = 1;
    while (acc != one) {
        acc = poly_mod(poly_mul(acc, Polynomial::x(f.p)), f);
        ++e;
    }
    return e;
}

Polynomial random_poly(std::mt19937_64& gen, u32 p, int maxdeg) {
    int dg = int(gen() % u64(maxdeg + 1));
    std::vector<u32> c(std::size_t(dg) + 1);
    for (auto& x : c) x = u32(gen() % p);
    return Polynomial(p, c);
}

}  // namespace

TEST_CASE("field scalar arithmetic") {
    CHECK(fp_inv(7, 3) == 5);
    CHECK(fp_mul(7, 3, fp_inv(7, 3)) == 1);
    CHECK(fp_pow(13, 2, 12) == 1);
    CHECK_THROWS_AS(fp_inv(5, 0), std::domain_error);
}

TEST_CASE("polynomial arithmetic basics") {
    // gcd(x^2+1, x+1) = x+1 over F_2
    CHECK(poly_gcd(P(2, {1, 0, 1}), P(2, {1, 1})) == P(2, {1, 1}));
    // (x^3 - 1) / (x - 1) = x^2 + x + 1 exactly over F_3
    auto [q, r] = poly_divmod(P(3, {2, 0, 0, 1}), P(3, {2, 1}));
    CHECK(q == P(3, {1, 1, 1}));
    CHECK(r.is_zero());
    // (x+1)(x+2) = x^2 + 2 over F_3
    CHECK(poly_mul(P(3, {1, 1}), P(3, {2, 1})) == P(3, {2, 0, 1}));
    CHECK_THROWS_AS(poly_divmod(P(2, {1, 1}), Polynomial::zero(2)), std::domain_error);
    CHECK_THROWS_AS(poly_add(P(2, {1}), P(3, {1})), std::invalid_argument);
}

TEST_CASE("divmod is exact division") {
    std::mt19937_64 gen(7);
    for (u32 p : {2u, 3u, 5u, 13u}) {
        for (int iter = 0; iter < 50; ++iter) {
            Polynomial a = random_poly(gen, p, 8);
            Polynomial b = random_poly(gen, p, 5);
            if (b.is_zero()) continue;
            auto [q, r] = poly_divmod(a, b);
            CHECK(poly_add(poly_mul(q, b), r) == a);
            CHECK(r.degree() < b.degree());
        }
    }
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(P(2, {1, 1, 1})));        // x^2+x+1
    CHECK_FALSE(is_irreducible(P(2, {1, 0, 1})));  // x^2+1 = (x+1)^2
    CHECK(is_irreducible(P(2, {1, 1, 1, 1, 1})));  // x^4+x^3+x^2+x+1
    CHECK_THROWS_AS(is_irreducible(P(2, {1})), std::invalid_argument);

    std::mt19937_64 gen(11);
    for (u32 p : {2u, 3u, 5u}) {
        for (int iter = 0; iter < 60; ++iter) {
            Polynomial f = random_poly(gen, p, 6);
            if (f.degree() < 1) continue;
            CHECK(is_irreducible(f) == naive_irreducible(f));
        }
    }
}

TEST_CASE("factorization") {
    // x^5 - 1 over F_2
    auto fs = factorize(P(2, {1, 0, 0, 0, 0, 1}));
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].f == P(2, {1, 1}));
    CHECK(fs[0].multiplicity == 1);
    CHECK(fs[1].f == P(2, {1, 1, 1, 1, 1}));
    CHECK(fs[1].multiplicity == 1);
    // (x-1)^3 over F_3, given expanded: x^3 - 3x^2 + 3x - 1 = x^3 + 2
    fs = factorize(P(3, {2, 0, 0, 1}));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].f == P(3, {2, 1}));  // x + 2 = x - 1
    CHECK(fs[0].multiplicity == 3);
    // x^4 - 1 over F_5 splits into the four linear factors
    fs = factorize(P(5, {4, 0, 0, 0, 1}));
    REQUIRE(fs.size() == 4);
    for (const auto& pf : fs) {
        CHECK(pf.f.degree() == 1);
        CHECK(pf.multiplicity == 1);
    }
}

TEST_CASE("factor product reconstructs the input") {
    std::mt19937_64 gen(19);
    for (u32 p : {2u, 3u, 7u}) {
        for (int iter = 0; iter < 40; ++iter) {
            Polynomial f = random_poly(gen, p, 9);
            if (f.is_zero()) continue;
            Polynomial prod = Polynomial::one(p);
            for (const auto& pf : factorize(f)) {
                CHECK(is_irreducible(pf.f));
                prod = poly_mul(prod, poly_pow(pf.f, u64(pf.multiplicity)));
            }
            CHECK(prod == poly_make_monic(f));
        }
    }
}

TEST_CASE("factorize is multiplicative") {
    std::mt19937_64 gen(13);
    for (u32 p : {2u, 3u, 5u}) {
        for (int iter = 0; iter < 40; ++iter) {
            Polynomial f = random_poly(gen, p, 5);
            Polynomial g = random_poly(gen, p, 5);
            if (f.is_zero() || g.is_zero()) continue;
            auto want = factorize(f);
            for (const auto& pf : factorize(g)) {
                bool merged = false;
                for (auto& wf : want)
                    if (wf.f == pf.f) {
                        wf.multiplicity += pf.multiplicity;
                        merged = true;
                    }
                if (!merged) want.push_back(pf);
            }
            std::sort(want.begin(), want.end(),
                      [](const PolyFactor& a, const PolyFactor& b) { return poly_less(a.f, b.f); });
            auto got = factorize(poly_mul(f, g));
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].f == want[i].f);
                CHECK(got[i].multiplicity == want[i].multiplicity);
            }
        }
    }
}

TEST_CASE("multiplicative order") {
    CHECK(multiplicative_order(P(2, {1, 1, 1})) == 3);
    CHECK(multiplicative_order(P(2, {1, 1, 1, 1, 1})) == 5);
    CHECK(multiplicative_order(P(2, {1, 1, 0, 1})) == 7);
    CHECK_THROWS_AS(multiplicative_order(P(2, {1, 0, 1})), std::invalid_argument);
    CHECK_THROWS_AS(multiplicative_order(P(2, {0, 1})), std::invalid_argument);

    // order divides p^deg - 1, and matches brute-force powering
    for (u32 p : {2u, 3u, 5u}) {
        for (u32 dg = 1; dg <= 4; ++dg) {
            for (const auto& f : irreducibles_of_degree(p, dg)) {
                if (dg == 1 && f.c[0] == 0) continue;
                u64 e = multiplicative_order(f);
                CHECK((ipow(p, dg) - 1) % e == 0);
                CHECK(e == naive_order(f));
            }
        }
    }
}

TEST_CASE("primitive polynomials") {
    CHECK(primitive_poly(2, 3) == P(2, {1, 1, 0, 1}));  // x^3+x+1
    CHECK(primitive_poly(2, 1) == P(2, {1, 1}));        // x+1
    // the lexicographic scan over F_3 degree 2 rejects x^2+1 (order 4) and the
    // reducible candidates before x^2+x+2
    CHECK(primitive_poly(3, 2) == P(3, {2, 1, 1}));
    for (auto [p, j] : {std::pair<u32, u32>{2, 4}, {3, 3}, {5, 2}, {13, 1}}) {
        Polynomial f = primitive_poly(p, j);
        CHECK(is_irreducible(f));
        CHECK(naive_order(f) == ipow(p, j) - 1);
    }
}

TEST_CASE("polynomial text form") {
    CHECK(poly_to_string(P(2, {1, 1, 0, 1})) == "x^3+x+1");
    CHECK(poly_to_string(P(3, {2, 0, 2})) == "2x^2+2");
    CHECK(poly_to_string(Polynomial::zero(5)) == "0");
    CHECK(parse_poly("x^3+x+1", 2) == P(2, {1, 1, 0, 1}));
    CHECK(parse_poly("2*x^2 + 1", 3) == P(3, {1, 0, 2}));
    CHECK(parse_poly("x^4+2x+2", 3) == P(3, {2, 2, 0, 0, 1}));
    CHECK(parse_poly("x-1", 3) == P(3, {2, 1}));
    CHECK_THROWS_AS(parse_poly("x^+1", 2), std::invalid_argument);
    std::mt19937_64 gen(17);
    for (int iter = 0; iter < 40; ++iter) {
        Polynomial f = random_poly(gen, 5, 6);
        CHECK(parse_poly(poly_to_string(f), 5) == f);
    }
}
