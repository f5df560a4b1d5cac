#pragma once

#include "afftool/matrix.hpp"

namespace afftool {

// g = t_v . h acting as x -> (x + v) h, translation first.
struct AffineMap {
    Matrix h;  // nonsingular linear part
    Vec v;     // translation part, length h.rows

    u32 p() const { return h.p; }
    u32 d() const { return h.rows; }
    Vec apply(const Vec& x) const { return vec_mat(vec_add(h.p, x, v), h); }
};

AffineMap make_affine(Matrix h, Vec v);

// I + h + ... + h^{r-1}, by binary splitting.
Matrix geometric_sum(const Matrix& h, u64 r);

// g^n acts as x -> x M + w; returns (w, M) with M = h^n and
// w = v (h + h^2 + ... + h^n).
std::pair<Vec, Matrix> affine_power(const AffineMap& g, u64 n);

struct OrderProfile {
    u64 k = 1;        // order of h
    int delta = 0;    // |g| = p^delta * k
    u64 k_p = 1;      // p-part of k
    u32 a = 0;        // dim of the (x-1)-primary component U
    u32 c = 0;        // |h restricted to U| = p^c
    int u_delta = 0;  // order of g restricted to U is p^(c + u_delta)
    u64 t = 0;        // number of g-cycles in U (after translation reduction)
};

struct AffineOrder {
    u64 order = 1;
    OrderProfile profile;
};

// Order of g with the profile fields populated; O(log) matrix work plus a
// fixed-point count per p-power for t. pre: p^d <= 2^40.
AffineOrder affine_order(const AffineMap& g);

// True iff some translation doubles the order of h: multiplicity of (x-1)
// in the minimal polynomial of h equals the p-part of |h|; equivalently
// h(k) != 0.
bool order_doubling_exists(const Matrix& h);

struct PrimarySplit {
    std::vector<Vec> u_basis;  // (x-1)-primary component U
    std::vector<Vec> w_basis;  // sum of the other primary components
};

PrimarySplit primary_split(const Matrix& h);

struct TranslationReduction {
    AffineMap reduced;  // t_u . h with u in U
    Vec conjugator;     // w' in W with t_{w'}^{-1} g t_{w'} = reduced
};

// Lemma-style conjugacy reduction: g is conjugate to t_u h with u in U.
TranslationReduction reduce_translation(const AffineMap& g);

struct CycleStructure {
    std::vector<u64> lengths;  // ascending
    u64 count = 0;

    u64 total() const {
        u64 s = 0;
        for (u64 l : lengths) s += l;
        return s;
    }
    u64 lcm() const {
        u64 m = 1;
        for (u64 l : lengths) m = lcm_u64(m, l);
        return m;
    }
};

// Exact orbit-length multiset over all p^d vectors, zero vector included.
// pre: p^d <= cap (default 2^22).
CycleStructure cycle_structure(const AffineMap& g, u64 space_cap = kOrbitSpaceCap);

// The g-orbit of v0, listed as v0 h^{r-1} + v h(r) - v for r = 1, 2, ...
std::vector<Vec> cycle_of(const AffineMap& g, const Vec& v0, u64 space_cap = kOrbitSpaceCap);

struct SubspaceCycleBound {
    u64 t = 0;              // g-cycles in U
    u64 r = 0;              // h-cycles in W' (zero vector counted)
    u64 cycles_on_sum = 0;  // g-cycles in U + W'; always >= t*r
};

// pre: v in U, W' an h-invariant subspace of W.
SubspaceCycleBound subspace_cycle_bound(const AffineMap& g, const std::vector<Vec>& w_sub,
                                     u64 space_cap = kOrbitSpaceCap);

// True iff the (x-1)-primary component forms a single g-orbit. pre: v in U.
bool u_single_cycle(const AffineMap& g, u64 space_cap = kOrbitSpaceCap);

// Number of g-orbits on the subspace spanned by `basis` (g must stabilize
// it); counts the zero vector's orbit like any other.
u64 orbit_count_on_subspace(const AffineMap& g, const std::vector<Vec>& basis, u64 space_cap = kOrbitSpaceCap);

}  // namespace afftool
