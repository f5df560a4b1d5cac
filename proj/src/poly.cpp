#include "afftool/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace afftool {

u32 fp_inv(u32 p, u32 a) {
    if (a == 0) throw std::domain_error("division by zero in F_p");
    // extended Euclid on (a, p)
    long long t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        long long q = r / newr;
        long long tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += p;
    return u32(t);
}

u32 fp_pow(u32 p, u32 a, u64 e) {
    u64 r = 1, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return u32(r);
}

Polynomial::Polynomial(u32 p_, std::vector<u32> coeffs) : p(p_), c(std::move(coeffs)) {
    for (auto& v : c) v %= p;
    trim();
}

void Polynomial::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

static void require_same_modulus(const Polynomial& a, const Polynomial& b) {
    if (a.p != b.p) throw std::invalid_argument("polynomial modulus mismatch");
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    require_same_modulus(a, b);
    Polynomial r;
    r.p = a.p;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = fp_add(a.p, a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    require_same_modulus(a, b);
    Polynomial r;
    r.p = a.p;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = fp_sub(a.p, a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

Polynomial poly_scale(const Polynomial& a, u32 s) {
    Polynomial r = a;
    for (auto& v : r.c) v = fp_mul(a.p, v, s);
    r.trim();
    return r;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    require_same_modulus(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial::zero(a.p);
    Polynomial r;
    r.p = a.p;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = u32((r.c[i + j] + u64(a.c[i]) * b.c[j]) % a.p);
    }
    r.trim();
    return r;
}

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b) {
    require_same_modulus(a, b);
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Polynomial q = Polynomial::zero(a.p);
    Polynomial r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.c.assign(a.degree() - b.degree() + 1, 0);
    u32 linv = fp_inv(a.p, b.lead());
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        if (int(r.c.size()) - 1 != k + b.degree()) continue;
        u32 coef = fp_mul(a.p, r.c.back(), linv);
        q.c[k] = coef;
        for (int j = 0; j <= b.degree(); ++j)
            r.c[k + j] = fp_sub(a.p, r.c[k + j], fp_mul(a.p, coef, b.c[j]));
        r.trim();
    }
    q.trim();
    return {q, r};
}

Polynomial poly_mod(const Polynomial& a, const Polynomial& b) { return poly_divmod(a, b).second; }

Polynomial poly_make_monic(const Polynomial& a) {
    if (a.is_zero() || a.lead() == 1) return a;
    return poly_scale(a, fp_inv(a.p, a.lead()));
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
    require_same_modulus(a, b);
    while (!b.is_zero()) {
        Polynomial r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_make_monic(a);
}

Polynomial poly_derivative(const Polynomial& a) {
    Polynomial r;
    r.p = a.p;
    if (a.degree() < 1) return r;
    r.c.resize(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = u32(u64(a.c[i]) * (i % a.p) % a.p);
    r.trim();
    return r;
}

Polynomial poly_pow(const Polynomial& a, u64 e) {
    Polynomial r = Polynomial::one(a.p), b = a;
    while (e) {
        if (e & 1) r = poly_mul(r, b);
        b = poly_mul(b, b);
        e >>= 1;
    }
    return r;
}

Polynomial poly_powmod(const Polynomial& base, u64 e, const Polynomial& m) {
    Polynomial r = Polynomial::one(base.p), b = poly_mod(base, m);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, b), m);
        b = poly_mod(poly_mul(b, b), m);
        e >>= 1;
    }
    return r;
}

u32 poly_eval(const Polynomial& a, u32 x) {
    u64 r = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) r = (r * x + a.c[i]) % a.p;
    return u32(r);
}

bool poly_less(const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

bool is_irreducible(const Polynomial& f) {
    if (f.degree() < 1) throw std::invalid_argument("irreducibility asked of a constant");
    if (f.degree() == 1) return true;
    Polynomial w = Polynomial::x(f.p);
    for (int i = 1; 2 * i <= f.degree(); ++i) {
        w = poly_powmod(w, f.p, f);  // now w = x^(p^i) mod f
        Polynomial g = poly_gcd(f, poly_sub(w, Polynomial::x(f.p)));
        if (g.degree() != 0) return false;
    }
    return true;
}

// f(x) = h(x^p) over F_p: pull back to h (p-th roots of coefficients are
// the coefficients themselves over a prime field).
static Polynomial contract_pth_power(const Polynomial& f) {
    Polynomial h;
    h.p = f.p;
    h.c.resize(f.c.size() / f.p + 1, 0);
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        if (i % f.p != 0) throw std::logic_error("contract_pth_power: derivative was not zero");
        h.c[i / f.p] = f.c[i];
    }
    h.trim();
    return h;
}

// Split a squarefree product of irreducibles of a single degree e by
// deterministic search over monic candidates in canonical order.
static void equal_degree_split(Polynomial g, int e, std::vector<Polynomial>& out) {
    u32 p = g.p;
    while (g.degree() > e) {
        if (e == 1) {
            for (u32 a = 0; a < p && g.degree() > 1; ++a) {
                Polynomial lin = Polynomial::x_minus(p, a);
                auto [q, r] = poly_divmod(g, lin);
                if (r.is_zero()) {
                    out.push_back(lin);
                    g = q;
                }
            }
            break;
        }
        u64 space = ipow_checked(p, u64(e), u64(1) << 24);
        bool found = false;
        for (u64 n = 0; n < space; ++n) {
            Polynomial cand;
            cand.p = p;
            cand.c.resize(std::size_t(e) + 1, 0);
            u64 t = n;
            for (int i = 0; i < e; ++i) {
                cand.c[i] = u32(t % p);
                t /= p;
            }
            cand.c[e] = 1;
            auto [q, r] = poly_divmod(g, cand);
            if (r.is_zero()) {
                // any monic degree-e divisor of g is one of its irreducible factors
                out.push_back(cand);
                g = q;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("equal_degree_split: no factor found");
    }
    if (g.degree() == e) out.push_back(poly_make_monic(g));
}

// Irreducible factors (without multiplicity) of a squarefree polynomial.
static void distinct_degree_split(Polynomial q, std::vector<Polynomial>& out) {
    u32 p = q.p;
    Polynomial w = Polynomial::x(p);
    for (int e = 1; 2 * e <= q.degree(); ++e) {
        w = poly_powmod(w, p, q);
        Polynomial g = poly_gcd(q, poly_sub(w, Polynomial::x(p)));
        if (g.degree() > 0) {
            equal_degree_split(g, e, out);
            q = poly_divmod(q, g).first;
            w = poly_mod(w, q);
        }
    }
    if (q.degree() > 0) out.push_back(q);
}

static void irreducible_factor_set(const Polynomial& f, std::vector<Polynomial>& out) {
    if (f.degree() < 1) return;
    Polynomial fp = poly_derivative(f);
    if (fp.is_zero()) {
        irreducible_factor_set(contract_pth_power(f), out);
        return;
    }
    Polynomial s = poly_gcd(f, fp);
    Polynomial q = poly_divmod(f, s).first;  // squarefree part
    distinct_degree_split(poly_make_monic(q), out);
    irreducible_factor_set(s, out);
}

std::vector<PolyFactor> factorize(const Polynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("factorize(0)");
    Polynomial g = poly_make_monic(f);
    std::vector<Polynomial> irr;
    irreducible_factor_set(g, irr);
    std::sort(irr.begin(), irr.end(), poly_less);
    irr.erase(std::unique(irr.begin(), irr.end()), irr.end());
    std::vector<PolyFactor> out;
    for (const auto& q : irr) {
        int m = 0;
        while (true) {
            auto [quo, rem] = poly_divmod(g, q);
            if (!rem.is_zero()) break;
            g = quo;
            ++m;
        }
        if (m > 0) out.push_back({q, m});
    }
    if (g.degree() != 0) throw std::logic_error("factorize: incomplete factorization");
    return out;
}

u64 multiplicative_order(const Polynomial& f) {
    if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("order needs a monic nonconstant polynomial");
    if (f.degree() == 1 && f.c[0] == 0) throw std::invalid_argument("order of x is undefined");
    if (!is_irreducible(f)) throw std::invalid_argument("order needs an irreducible polynomial");
    u64 m = ipow_checked(f.p, u64(f.degree())) - 1;
    u64 e = m;
    for (auto [q, mult] : factor_u64(m)) {
        (void)mult;
        while (e % q == 0) {
            Polynomial t = poly_powmod(Polynomial::x(f.p), e / q, f);
            if (t == Polynomial::one(f.p))
                e /= q;
            else
                break;
        }
    }
    return e;
}

Polynomial primitive_poly(u32 p, u32 j) {
    if (j == 0) throw std::invalid_argument("primitive_poly needs degree >= 1");
    u64 space = ipow_checked(p, j);  // also enforces the p^j cap
    u64 target = space - 1;
    for (u64 n = 0; n < space; ++n) {
        Polynomial cand;
        cand.p = p;
        cand.c.resize(std::size_t(j) + 1, 0);
        u64 t = n;
        for (u32 i = 0; i < j; ++i) {
            cand.c[i] = u32(t % p);
            t /= p;
        }
        cand.c[j] = 1;
        if (cand.c[0] == 0) continue;  // divisible by x
        if (!is_irreducible(cand)) continue;
        if (multiplicative_order(cand) == target) return cand;
    }
    throw std::logic_error("no primitive polynomial found");
}

std::vector<Polynomial> irreducibles_of_degree(u32 p, u32 deg) {
    std::vector<Polynomial> out;
    u64 space = ipow_checked(p, deg, u64(1) << 26);
    for (u64 n = 0; n < space; ++n) {
        Polynomial cand;
        cand.p = p;
        cand.c.resize(std::size_t(deg) + 1, 0);
        u64 t = n;
        for (u32 i = 0; i < deg; ++i) {
            cand.c[i] = u32(t % p);
            t /= p;
        }
        cand.c[deg] = 1;
        if (deg > 1 && cand.c[0] == 0) continue;
        if (is_irreducible(cand)) out.push_back(cand);
    }
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

std::string poly_to_string(const Polynomial& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (int i = a.degree(); i >= 0; --i) {
        u32 v = a.c[i];
        if (v == 0) continue;
        if (!s.empty()) s += '+';
        if (i == 0) {
            s += std::to_string(v);
        } else {
            if (v != 1) s += std::to_string(v);
            s += 'x';
            if (i > 1) {
                s += '^';
                s += std::to_string(i);
            }
        }
    }
    return s;
}

Polynomial parse_poly(const std::string& text, u32 p) {
    Polynomial acc = Polynomial::zero(p);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("polynomial syntax error at offset " + std::to_string(i) + ": " + what);
    };
    bool first = true;
    while (true) {
        skip_ws();
        if (i >= text.size()) {
            if (first) fail("empty polynomial");
            break;
        }
        u32 sign = 1;
        if (!first) {
            if (text[i] == '+')
                ++i;
            else if (text[i] == '-') {
                sign = p - 1;
                ++i;
            } else
                fail("expected '+' or '-'");
        } else if (text[i] == '-') {
            sign = p - 1;
            ++i;
        }
        skip_ws();
        u64 coef = 1;
        bool saw_num = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coef = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                coef = coef * 10 + (text[i++] - '0');
            saw_num = true;
        }
        skip_ws();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
        }
        u64 expn = 0;
        if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
            ++i;
            expn = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected exponent");
                expn = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                    expn = expn * 10 + (text[i++] - '0');
            }
        } else if (!saw_num) {
            fail("expected term");
        }
        if (expn > 4096) fail("exponent too large");
        Polynomial term;
        term.p = p;
        term.c.assign(std::size_t(expn) + 1, 0);
        term.c[std::size_t(expn)] = fp_mul(p, u32(coef % p), sign);
        term.trim();
        acc = poly_add(acc, term);
        first = false;
    }
    return acc;
}

}  // namespace afftool
