#include "afftool/affine.hpp"

#include <algorithm>
#include <stdexcept>

namespace afftool {

AffineMap make_affine(Matrix h, Vec v) {
    if (!h.square()) throw std::invalid_argument("affine map needs a square linear part");
    if (v.size() != h.rows) throw std::invalid_argument("translation length does not match dimension");
    AffineMap g;
    g.h = std::move(h);
    g.v = std::move(v);
    for (auto& x : g.v) x %= g.h.p;
    return g;
}

// returns (I + h + ... + h^{r-1}, h^r)
static std::pair<Matrix, Matrix> geom_pair(const Matrix& h, u64 r) {
    if (r == 1) return {Matrix::identity(h.p, h.rows), h};
    if (r % 2 == 0) {
        auto [s, hp] = geom_pair(h, r / 2);
        // S(2m) = S(m) + S(m) h^m
        return {mat_add(s, mat_mul(s, hp)), mat_mul(hp, hp)};
    }
    auto [s, hp] = geom_pair(h, r - 1);
    return {mat_add(s, hp), mat_mul(hp, h)};
}

Matrix geometric_sum(const Matrix& h, u64 r) {
    if (!h.square()) throw std::invalid_argument("geometric_sum needs a square matrix");
    if (r < 1) throw std::invalid_argument("geometric_sum needs r >= 1");
    return geom_pair(h, r).first;
}

std::pair<Vec, Matrix> affine_power(const AffineMap& g, u64 n) {
    if (n == 0) return {Vec(g.d(), 0), Matrix::identity(g.p(), g.d())};
    auto [s, hp] = geom_pair(g.h, n);
    return {vec_mat(vec_mat(g.v, s), g.h), hp};
}

bool order_doubling_exists(const Matrix& h) {
    ClassInvariant inv = class_invariant(h);
    u64 k = order_from_invariant(inv);
    u64 kp = p_part(k, h.p);
    u64 mult = 0;
    for (const auto& b : inv.blocks)
        if (b.f.degree() == 1 && b.f.c[0] == fp_neg(h.p, 1)) mult = b.partition.front();
    bool by_minpoly = (mult == kp);
    bool by_sum = !geometric_sum(h, k).is_zero();
    if (by_minpoly != by_sum) throw std::logic_error("order doubling criteria disagree");
    return by_sum;
}

PrimarySplit primary_split(const Matrix& h) {
    if (!h.square()) throw std::invalid_argument("primary_split needs a square matrix");
    u32 p = h.p, d = h.rows;
    PrimarySplit out;
    if (d == 0) return out;
    Polynomial xm1 = Polynomial::x_minus(p, 1);
    Polynomial cp = char_poly(h);
    int mult = 0;
    Polynomial rest = cp;
    while (true) {
        auto [q, r] = poly_divmod(rest, xm1);
        if (!r.is_zero()) break;
        rest = q;
        ++mult;
    }
    if (mult > 0) {
        Matrix n = mat_sub(h, Matrix::identity(p, d));
        out.u_basis = left_kernel(mat_pow(n, mult));
    }
    if (rest.degree() > 0)
        out.w_basis = left_kernel(poly_at_matrix(rest, h));
    return out;
}

static Matrix rows_matrix(u32 p, u32 d, const std::vector<Vec>& rows) {
    Matrix B(p, u32(rows.size()), d);
    for (u32 i = 0; i < rows.size(); ++i)
        for (u32 j = 0; j < d; ++j) B.at(i, j) = rows[i][j];
    return B;
}

TranslationReduction reduce_translation(const AffineMap& g) {
    u32 p = g.p(), d = g.d();
    PrimarySplit sp = primary_split(g.h);
    u32 a = u32(sp.u_basis.size());
    u32 r = u32(sp.w_basis.size());
    std::vector<Vec> all = sp.u_basis;
    all.insert(all.end(), sp.w_basis.begin(), sp.w_basis.end());
    TranslationReduction out;
    out.conjugator = Vec(d, 0);
    if (r == 0) {  // V = U, nothing to move
        out.reduced = g;
        return out;
    }
    Matrix B = rows_matrix(p, d, all);
    auto coords = solve_left(B, g.v);
    if (!coords) throw std::logic_error("reduce_translation: U + W does not span V");
    Vec u(d, 0), w(d, 0);
    for (u32 i = 0; i < a; ++i)
        for (u32 j = 0; j < d; ++j) u[j] = fp_add(p, u[j], fp_mul(p, (*coords)[i], sp.u_basis[i][j]));
    for (u32 i = 0; i < r; ++i)
        for (u32 j = 0; j < d; ++j) w[j] = fp_add(p, w[j], fp_mul(p, (*coords)[a + i], sp.w_basis[i][j]));
    // find w' in W with w' (I - h^{-1}) = w; I - h^{-1} is invertible on W
    Matrix m = mat_sub(Matrix::identity(p, d), mat_inverse(g.h));
    Matrix wb = rows_matrix(p, d, sp.w_basis);
    Matrix img = mat_mul(wb, m);  // rows: images of the W basis, still in W
    // express w in terms of the rows of img
    auto y = solve_left(img, w);
    if (!y) throw std::logic_error("reduce_translation: I - h^{-1} not invertible on W");
    Vec wp(d, 0);
    for (u32 i = 0; i < r; ++i)
        for (u32 j = 0; j < d; ++j) wp[j] = fp_add(p, wp[j], fp_mul(p, (*y)[i], sp.w_basis[i][j]));
    out.reduced = make_affine(g.h, u);
    out.conjugator = wp;
    return out;
}

// --- indexing of F_p^d by base-p digits, e_1 the lowest digit ---

namespace {

struct SpaceWalker {
    u32 p, d;
    u64 n;
    bool packed;                     // p == 2 fast path
    std::vector<u64> row_mask;      // packed rows of h
    u64 v_mask = 0;
    const AffineMap* g;

    SpaceWalker(const AffineMap& gg, u64 cap) : p(gg.p()), d(gg.d()), g(&gg) {
        n = 1;
        for (u32 i = 0; i < d; ++i) {
            if (n > cap / p) throw cap_exceeded("orbit space exceeds cap");
            n *= p;
        }
        packed = (p == 2) && d <= 63;
        if (packed) {
            row_mask.assign(d, 0);
            for (u32 i = 0; i < d; ++i)
                for (u32 j = 0; j < d; ++j)
                    if (gg.h.at(i, j)) row_mask[i] |= u64(1) << j;
            for (u32 j = 0; j < d; ++j)
                if (gg.v[j]) v_mask |= u64(1) << j;
        }
    }

    u64 step(u64 idx) const {
        if (packed) {
            u64 x = idx ^ v_mask;
            u64 y = 0;
            while (x) {
                u32 i = u32(__builtin_ctzll(x));
                y ^= row_mask[i];
                x &= x - 1;
            }
            return y;
        }
        Vec x(d);
        u64 t = idx;
        for (u32 i = 0; i < d; ++i) {
            x[i] = u32(t % p);
            t /= p;
        }
        Vec y = g->apply(x);
        u64 out = 0;
        for (u32 i = d; i-- > 0;) out = out * p + y[i];
        return out;
    }
};

}  // namespace

CycleStructure cycle_structure(const AffineMap& g, u64 space_cap) {
    SpaceWalker walker(g, space_cap);
    std::vector<bool> visited(walker.n, false);
    CycleStructure cs;
    for (u64 start = 0; start < walker.n; ++start) {
        if (visited[start]) continue;
        u64 len = 0, cur = start;
        do {
            visited[cur] = true;
            cur = walker.step(cur);
            ++len;
        } while (cur != start);
        cs.lengths.push_back(len);
    }
    std::sort(cs.lengths.begin(), cs.lengths.end());
    cs.count = cs.lengths.size();
    return cs;
}

std::vector<Vec> cycle_of(const AffineMap& g, const Vec& v0, u64 space_cap) {
    u32 p = g.p(), d = g.d();
    u64 n = 1;
    for (u32 i = 0; i < d; ++i) {
        if (n > space_cap / p) throw cap_exceeded("orbit space exceeds cap");
        n *= p;
    }
    // r-th element is v0 h^{r-1} + v h(r) - v
    std::vector<Vec> orbit;
    Vec pow_v0 = v0;              // v0 h^{r-1}
    Vec vh_r = g.v;               // v h(r)
    Vec vh_pow = vec_mat(g.v, g.h);  // v h^r
    for (u64 r = 1; r <= n + 1; ++r) {
        Vec e = vec_sub(p, vec_add(p, pow_v0, vh_r), g.v);
        if (r > 1 && e == v0) return orbit;
        orbit.push_back(e);
        pow_v0 = vec_mat(pow_v0, g.h);
        vh_r = vec_add(p, vh_r, vh_pow);
        vh_pow = vec_mat(vh_pow, g.h);
    }
    throw std::logic_error("cycle_of: orbit did not close");
}

// Reduced-basis walker over an invariant subspace.
u64 orbit_count_on_subspace(const AffineMap& g, const std::vector<Vec>& basis, u64 space_cap) {
    u32 p = g.p(), d = g.d();
    u32 r = u32(basis.size());
    if (r == 0) {
        // the zero subspace: one orbit iff g fixes 0
        if (!vec_is_zero(g.apply(Vec(d, 0)))) throw std::invalid_argument("subspace not g-invariant");
        return 1;
    }
    // row-reduce the basis; pivot coordinates then give subspace coordinates
    Matrix B = rows_matrix(p, d, basis);
    if (mat_rank(B) != r) throw std::invalid_argument("subspace basis is dependent");
    Matrix R = B;
    {
        // eliminate to RREF via rank computation side effect
        Matrix tmp = B;
        u32 rank = 0;
        for (u32 col = 0; col < d && rank < r; ++col) {
            u32 piv = rank;
            while (piv < r && tmp.at(piv, col) == 0) ++piv;
            if (piv == r) continue;
            if (piv != rank)
                for (u32 j = 0; j < d; ++j) std::swap(tmp.at(piv, j), tmp.at(rank, j));
            u32 inv = fp_inv(p, tmp.at(rank, col));
            for (u32 j = 0; j < d; ++j) tmp.at(rank, j) = fp_mul(p, tmp.at(rank, j), inv);
            for (u32 i = 0; i < r; ++i) {
                if (i == rank || tmp.at(i, col) == 0) continue;
                u32 f = tmp.at(i, col);
                for (u32 j = 0; j < d; ++j) tmp.at(i, j) = fp_sub(p, tmp.at(i, j), fp_mul(p, f, tmp.at(rank, j)));
            }
            ++rank;
        }
        R = tmp;
    }
    std::vector<u32> piv;
    for (u32 i = 0; i < r; ++i) {
        u32 lead = d;
        for (u32 j = 0; j < d; ++j)
            if (R.at(i, j) != 0) {
                lead = j;
                break;
            }
        if (lead == d) throw std::logic_error("subspace basis reduction failed");
        piv.push_back(lead);
    }
    u64 n = 1;
    for (u32 i = 0; i < r; ++i) {
        if (n > space_cap / p) throw cap_exceeded("subspace orbit space exceeds cap");
        n *= p;
    }
    auto decode = [&](u64 idx) {
        Vec x(d, 0);
        u64 t = idx;
        for (u32 i = 0; i < r; ++i) {
            u32 ci = u32(t % p);
            t /= p;
            if (ci)
                for (u32 j = 0; j < d; ++j) x[j] = fp_add(p, x[j], fp_mul(p, ci, R.at(i, j)));
        }
        return x;
    };
    auto encode = [&](const Vec& y) {
        u64 idx = 0;
        for (u32 i = r; i-- > 0;) idx = idx * p + y[piv[i]];
        // membership check: the pivot coordinates must reconstruct y
        Vec chk(d, 0);
        u64 t = idx;
        for (u32 i = 0; i < r; ++i) {
            u32 ci = u32(t % p);
            t /= p;
            if (ci)
                for (u32 j = 0; j < d; ++j) chk[j] = fp_add(p, chk[j], fp_mul(p, ci, R.at(i, j)));
        }
        if (chk != y) throw std::invalid_argument("subspace not g-invariant");
        return idx;
    };
    std::vector<bool> visited(n, false);
    u64 orbits = 0;
    for (u64 start = 0; start < n; ++start) {
        if (visited[start]) continue;
        ++orbits;
        u64 cur = start;
        do {
            visited[cur] = true;
            cur = encode(g.apply(decode(cur)));
        } while (cur != start);
    }
    return orbits;
}

// number of fixed points of x -> x M + w on its full space (0 if none)
static u64 affine_fixed_count(const Matrix& M, const Vec& w) {
    u32 p = M.p, n = M.rows;
    if (n == 0) return 1;
    Matrix im = mat_sub(Matrix::identity(p, n), M);
    if (!solve_left(im, w)) return 0;
    u64 cnt = 1;
    u64 nullity = left_kernel(im).size();
    for (u64 i = 0; i < nullity; ++i) cnt *= p;
    return cnt;
}

AffineOrder affine_order(const AffineMap& g) {
    u32 p = g.p(), d = g.d();
    u64 space = 1;
    for (u32 i = 0; i < d; ++i) {
        if (space > kOrderSpaceCap / p) throw cap_exceeded("p^d exceeds the order cap");
        space *= p;
    }
    AffineOrder out;
    OrderProfile& pr = out.profile;
    if (d == 0) {
        out.order = 1;
        pr.t = 1;
        return out;
    }
    ClassInvariant inv = class_invariant(g.h);
    pr.k = order_from_invariant(inv);
    pr.k_p = p_part(pr.k, p);
    Matrix hk = geometric_sum(g.h, pr.k);
    pr.delta = vec_is_zero(vec_mat(g.v, hk)) ? 0 : 1;
    out.order = pr.delta ? u64(p) * pr.k : pr.k;

    u32 b_max = 0;
    for (const auto& blk : inv.blocks)
        if (blk.f.degree() == 1 && blk.f.c[0] == fp_neg(p, 1)) b_max = blk.partition.front();
    pr.c = b_max ? ceil_log(p, b_max) : 0;

    PrimarySplit sp = primary_split(g.h);
    pr.a = u32(sp.u_basis.size());
    if (pr.a == 0) {
        pr.u_delta = 0;
        pr.t = 1;
        return out;
    }
    // restriction of the reduced map to U, in U coordinates
    TranslationReduction red = reduce_translation(g);
    Matrix ub = rows_matrix(p, d, sp.u_basis);
    Matrix img = mat_mul(ub, g.h);
    Matrix hu(p, pr.a, pr.a);
    for (u32 i = 0; i < pr.a; ++i) {
        auto coords = solve_left(ub, [&] {
            Vec row(d);
            for (u32 j = 0; j < d; ++j) row[j] = img.at(i, j);
            return row;
        }());
        if (!coords) throw std::logic_error("U is not h-invariant");
        for (u32 j = 0; j < pr.a; ++j) hu.at(i, j) = (*coords)[j];
    }
    auto ucoords = solve_left(ub, red.reduced.v);
    if (!ucoords) throw std::logic_error("reduced translation is not in U");
    u64 ku = ipow(p, pr.c);
    Matrix su = geometric_sum(hu, ku);
    pr.u_delta = vec_is_zero(vec_mat(*ucoords, su)) ? 0 : 1;
    // orbit count on U via fixed points of successive p-th powers
    AffineMap gu = make_affine(hu, *ucoords);
    u64 prev = 0, t = 0, pj = 1;
    for (u32 j = 0; j <= pr.c + u32(pr.u_delta); ++j) {
        auto [wj, mj] = affine_power(gu, pj);
        u64 fj = affine_fixed_count(mj, wj);
        t += (fj - prev) / pj;
        prev = fj;
        pj *= p;
    }
    pr.t = t;
    return out;
}

SubspaceCycleBound subspace_cycle_bound(const AffineMap& g, const std::vector<Vec>& w_sub, u64 space_cap) {
    PrimarySplit sp = primary_split(g.h);
    SubspaceCycleBound out;
    out.t = orbit_count_on_subspace(g, sp.u_basis, space_cap);
    AffineMap h_only = make_affine(g.h, Vec(g.d(), 0));
    out.r = orbit_count_on_subspace(h_only, w_sub, space_cap);
    std::vector<Vec> sum = sp.u_basis;
    sum.insert(sum.end(), w_sub.begin(), w_sub.end());
    out.cycles_on_sum = orbit_count_on_subspace(g, sum, space_cap);
    return out;
}

bool u_single_cycle(const AffineMap& g, u64 space_cap) {
    PrimarySplit sp = primary_split(g.h);
    return orbit_count_on_subspace(g, sp.u_basis, space_cap) == 1;
}

}  // namespace afftool
