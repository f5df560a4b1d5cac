#pragma once

#include <string>
#include <vector>

#include "afftool/intmath.hpp"

namespace afftool {

// Scalar arithmetic in the prime field F_p. Values are kept in [0, p).
inline u32 fp_add(u32 p, u32 a, u32 b) { return (a + b) % p; }
inline u32 fp_sub(u32 p, u32 a, u32 b) { return (a + p - b) % p; }
inline u32 fp_neg(u32 p, u32 a) { return a == 0 ? 0 : p - a; }
inline u32 fp_mul(u32 p, u32 a, u32 b) { return u32((u64(a) * b) % p); }

u32 fp_inv(u32 p, u32 a);
u32 fp_pow(u32 p, u32 a, u64 e);

// Dense univariate polynomial over F_p, coefficients lowest degree first.
// The zero polynomial has an empty coefficient vector; otherwise the leading
// coefficient is nonzero.
struct Polynomial {
    u32 p = 2;
    std::vector<u32> c;

    Polynomial() = default;
    Polynomial(u32 p_, std::vector<u32> coeffs);

    static Polynomial zero(u32 p) { return Polynomial(p, {}); }
    static Polynomial constant(u32 p, u32 a) { return Polynomial(p, {a}); }
    static Polynomial one(u32 p) { return Polynomial(p, {1}); }
    static Polynomial x(u32 p) { return Polynomial(p, {0, 1}); }
    // x - a
    static Polynomial x_minus(u32 p, u32 a) { return Polynomial(p, {fp_neg(p, a), 1}); }

    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; }  // -1 for zero
    u32 coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    u32 lead() const { return c.empty() ? 0 : c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    void trim();
    bool operator==(const Polynomial& o) const { return p == o.p && c == o.c; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, u32 s);
// (quotient, remainder) with deg(remainder) < deg(divisor).
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b);
Polynomial poly_mod(const Polynomial& a, const Polynomial& b);
// Monic gcd; gcd(0, 0) = 0.
Polynomial poly_gcd(Polynomial a, Polynomial b);
Polynomial poly_make_monic(const Polynomial& a);
Polynomial poly_derivative(const Polynomial& a);
Polynomial poly_pow(const Polynomial& a, u64 e);
// base^e mod m
Polynomial poly_powmod(const Polynomial& base, u64 e, const Polynomial& m);
u32 poly_eval(const Polynomial& a, u32 x);

// Ordering used everywhere a deterministic polynomial sequence is needed:
// by degree, then by coefficient tuple starting from the constant term.
bool poly_less(const Polynomial& a, const Polynomial& b);

struct PolyFactor {
    Polynomial f;  // monic irreducible
    int multiplicity = 0;
};

// pre: f nonzero, deg f >= 1. Decided by gcd with x^(p^i) - x for i <= deg/2.
bool is_irreducible(const Polynomial& f);

// Complete factorization into monic irreducibles, sorted by poly_less.
// The leading unit is discarded (result is the factorization of the monic
// normalization).
std::vector<PolyFactor> factorize(const Polynomial& f);

// Least e with x^e = 1 mod f. pre: f monic irreducible, f != x.
u64 multiplicative_order(const Polynomial& f);

// Lexicographically least monic irreducible of degree j over F_p whose root
// generates the full multiplicative group (order p^j - 1). pre: p^j <= 2^40.
Polynomial primitive_poly(u32 p, u32 j);

// Enumerate all monic irreducibles of the given degree, sorted by poly_less.
std::vector<Polynomial> irreducibles_of_degree(u32 p, u32 deg);

std::string poly_to_string(const Polynomial& a);
// Accepts forms like "x^3+x+1", "2*x^2+1", "x^4+2x+2"; throws
// std::invalid_argument with an offset-bearing message on bad input.
Polynomial parse_poly(const std::string& text, u32 p);

}  // namespace afftool
