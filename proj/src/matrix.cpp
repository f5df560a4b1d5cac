#include "afftool/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace afftool {

Matrix Matrix::identity(u32 p, u32 n) {
    Matrix m(p, n, n);
    for (u32 i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool Matrix::is_identity() const {
    if (!square()) return false;
    for (u32 i = 0; i < rows; ++i)
        for (u32 j = 0; j < cols; ++j)
            if (at(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

bool Matrix::is_zero() const {
    for (u32 v : a)
        if (v) return false;
    return true;
}

static void require_same(const Matrix& A, const Matrix& B) {
    if (A.p != B.p) throw std::invalid_argument("matrix modulus mismatch");
}

Matrix mat_add(const Matrix& A, const Matrix& B) {
    require_same(A, B);
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("matrix shape mismatch");
    Matrix R = A;
    for (std::size_t i = 0; i < R.a.size(); ++i) R.a[i] = fp_add(A.p, A.a[i], B.a[i]);
    return R;
}

Matrix mat_sub(const Matrix& A, const Matrix& B) {
    require_same(A, B);
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("matrix shape mismatch");
    Matrix R = A;
    for (std::size_t i = 0; i < R.a.size(); ++i) R.a[i] = fp_sub(A.p, A.a[i], B.a[i]);
    return R;
}

Matrix mat_mul(const Matrix& A, const Matrix& B) {
    require_same(A, B);
    if (A.cols != B.rows) throw std::invalid_argument("matrix shape mismatch");
    Matrix R(A.p, A.rows, B.cols);
    for (u32 i = 0; i < A.rows; ++i)
        for (u32 k = 0; k < A.cols; ++k) {
            u64 v = A.at(i, k);
            if (!v) continue;
            for (u32 j = 0; j < B.cols; ++j)
                R.at(i, j) = u32((R.at(i, j) + v * B.at(k, j)) % A.p);
        }
    return R;
}

Matrix mat_pow(const Matrix& A, u64 e) {
    if (!A.square()) throw std::invalid_argument("pow needs a square matrix");
    Matrix r = Matrix::identity(A.p, A.rows), b = A;
    while (e) {
        if (e & 1) r = mat_mul(r, b);
        b = mat_mul(b, b);
        e >>= 1;
    }
    return r;
}

Matrix mat_transpose(const Matrix& A) {
    Matrix R(A.p, A.cols, A.rows);
    for (u32 i = 0; i < A.rows; ++i)
        for (u32 j = 0; j < A.cols; ++j) R.at(j, i) = A.at(i, j);
    return R;
}

Vec vec_mat(const Vec& x, const Matrix& M) {
    if (x.size() != M.rows) throw std::invalid_argument("vector/matrix shape mismatch");
    Vec r(M.cols, 0);
    for (u32 i = 0; i < M.rows; ++i) {
        u64 v = x[i];
        if (!v) continue;
        for (u32 j = 0; j < M.cols; ++j) r[j] = u32((r[j] + v * M.at(i, j)) % M.p);
    }
    return r;
}

Vec vec_add(u32 p, const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = fp_add(p, x[i], y[i]);
    return r;
}

Vec vec_sub(u32 p, const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = fp_sub(p, x[i], y[i]);
    return r;
}

bool vec_is_zero(const Vec& x) {
    for (u32 v : x)
        if (v) return false;
    return true;
}

// Row echelon elimination; returns rank, optionally tracking determinant.
static u32 eliminate(Matrix& A, u32* det_out) {
    u32 p = A.p;
    u32 rank = 0;
    u64 det = 1;
    for (u32 col = 0; col < A.cols && rank < A.rows; ++col) {
        u32 piv = rank;
        while (piv < A.rows && A.at(piv, col) == 0) ++piv;
        if (piv == A.rows) {
            det = 0;
            continue;
        }
        if (piv != rank) {
            for (u32 j = 0; j < A.cols; ++j) std::swap(A.at(piv, j), A.at(rank, j));
            det = det * (p - 1) % p;
        }
        det = det * A.at(rank, col) % p;
        u32 inv = fp_inv(p, A.at(rank, col));
        for (u32 j = col; j < A.cols; ++j) A.at(rank, j) = fp_mul(p, A.at(rank, j), inv);
        for (u32 i = 0; i < A.rows; ++i) {
            if (i == rank || A.at(i, col) == 0) continue;
            u32 f = A.at(i, col);
            for (u32 j = col; j < A.cols; ++j)
                A.at(i, j) = fp_sub(p, A.at(i, j), fp_mul(p, f, A.at(rank, j)));
        }
        ++rank;
    }
    if (det_out) *det_out = (rank == A.rows && A.square()) ? u32(det) : 0;
    return rank;
}

u32 mat_rank(Matrix A) { return eliminate(A, nullptr); }

u32 mat_det(Matrix A) {
    if (!A.square()) throw std::invalid_argument("det needs a square matrix");
    u32 det = 0;
    eliminate(A, &det);
    return det;
}

Matrix mat_inverse(const Matrix& A) {
    if (!A.square()) throw std::invalid_argument("inverse needs a square matrix");
    if (mat_rank(A) != A.rows) throw std::domain_error("singular matrix");
    u32 n = A.rows, p = A.p;
    Matrix aug(p, n, 2 * n);
    for (u32 i = 0; i < n; ++i) {
        for (u32 j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n + i) = 1;
    }
    eliminate(aug, nullptr);
    Matrix R(p, n, n);
    for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j) R.at(i, j) = aug.at(i, n + j);
    return R;
}

std::optional<Vec> solve_left(const Matrix& A, const Vec& b) {
    // x*A = b  <=>  A^T x^T = b^T
    Matrix T = mat_transpose(A);
    u32 p = A.p;
    Matrix aug(p, T.rows, T.cols + 1);
    for (u32 i = 0; i < T.rows; ++i) {
        for (u32 j = 0; j < T.cols; ++j) aug.at(i, j) = T.at(i, j);
        aug.at(i, T.cols) = i < b.size() ? b[i] : 0;
    }
    if (b.size() != T.rows) throw std::invalid_argument("solve shape mismatch");
    eliminate(aug, nullptr);
    Vec x(A.rows, 0);
    // back-read the reduced system
    for (u32 i = 0; i < aug.rows; ++i) {
        u32 lead = aug.cols;
        for (u32 j = 0; j + 1 < aug.cols; ++j)
            if (aug.at(i, j) != 0) {
                lead = j;
                break;
            }
        if (lead == aug.cols) {
            if (aug.at(i, aug.cols - 1) != 0) return std::nullopt;
            continue;
        }
        x[lead] = aug.at(i, aug.cols - 1);
    }
    return x;
}

std::vector<Vec> left_kernel(const Matrix& A) {
    Matrix T = mat_transpose(A);  // kernel of x*A = 0 is column kernel of A^T
    u32 p = A.p;
    u32 n = A.rows;
    Matrix R = T;
    eliminate(R, nullptr);
    std::vector<int> pivot_of_col(n, -1);
    u32 r = 0;
    for (u32 i = 0; i < R.rows; ++i) {
        u32 lead = R.cols;
        for (u32 j = 0; j < R.cols; ++j)
            if (R.at(i, j) != 0) {
                lead = j;
                break;
            }
        if (lead < R.cols) {
            pivot_of_col[lead] = int(i);
            ++r;
        }
    }
    std::vector<Vec> basis;
    for (u32 j = 0; j < n; ++j) {
        if (pivot_of_col[j] != -1) continue;
        Vec v(n, 0);
        v[j] = 1;
        for (u32 jj = 0; jj < n; ++jj) {
            int pi = pivot_of_col[jj];
            if (pi >= 0) v[jj] = fp_neg(p, R.at(u32(pi), j));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

Matrix jordan_block(u32 p, u32 j) {
    Matrix m = Matrix::identity(p, j);
    for (u32 i = 0; i + 1 < j; ++i) m.at(i, i + 1) = 1;
    return m;
}

Matrix companion(const Polynomial& f) {
    if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("companion needs a monic nonconstant polynomial");
    u32 n = u32(f.degree());
    Matrix m(f.p, n, n);
    for (u32 i = 0; i + 1 < n; ++i) m.at(i, i + 1) = 1;
    for (u32 j = 0; j < n; ++j) m.at(n - 1, j) = fp_neg(f.p, f.c[j]);
    return m;
}

Matrix singer(u32 p, u32 j, u64 i) {
    if (j == 0 || i == 0) throw std::invalid_argument("singer needs j >= 1, i >= 1");
    return mat_pow(companion(primitive_poly(p, j)), i);
}

Matrix direct_sum(u32 p, const std::vector<Matrix>& parts) {
    u32 n = 0;
    for (const auto& m : parts) {
        if (m.p != p) throw std::invalid_argument("matrix modulus mismatch");
        if (!m.square()) throw std::invalid_argument("direct_sum needs square parts");
        n += m.rows;
    }
    Matrix R(p, n, n);
    u32 off = 0;
    for (const auto& m : parts) {
        for (u32 i = 0; i < m.rows; ++i)
            for (u32 j = 0; j < m.cols; ++j) R.at(off + i, off + j) = m.at(i, j);
        off += m.rows;
    }
    return R;
}

Matrix kronecker(const Matrix& A, const Matrix& B) {
    require_same(A, B);
    Matrix R(A.p, A.rows * B.rows, A.cols * B.cols);
    for (u32 i = 0; i < A.rows; ++i)
        for (u32 j = 0; j < A.cols; ++j) {
            u32 v = A.at(i, j);
            if (!v) continue;
            for (u32 k = 0; k < B.rows; ++k)
                for (u32 l = 0; l < B.cols; ++l)
                    R.at(i * B.rows + k, j * B.cols + l) = fp_mul(A.p, v, B.at(k, l));
        }
    return R;
}

// Characteristic polynomial via Hessenberg reduction and the leading-minor
// recurrence; exact over F_p.
Polynomial char_poly(const Matrix& A) {
    if (!A.square()) throw std::invalid_argument("char_poly needs a square matrix");
    u32 n = A.rows, p = A.p;
    if (n == 0) return Polynomial::one(p);
    Matrix H = A;
    for (u32 col = 0; col + 2 < n; ++col) {
        u32 piv = col + 1;
        while (piv < n && H.at(piv, col) == 0) ++piv;
        if (piv == n) continue;
        if (piv != col + 1) {
            for (u32 j = 0; j < n; ++j) std::swap(H.at(piv, j), H.at(col + 1, j));
            for (u32 i = 0; i < n; ++i) std::swap(H.at(i, piv), H.at(i, col + 1));
        }
        u32 inv = fp_inv(p, H.at(col + 1, col));
        for (u32 i = col + 2; i < n; ++i) {
            u32 f = fp_mul(p, H.at(i, col), inv);
            if (!f) continue;
            // row_i -= f * row_{col+1}; col_{col+1} += f * col_i  (similarity)
            for (u32 j = 0; j < n; ++j) H.at(i, j) = fp_sub(p, H.at(i, j), fp_mul(p, f, H.at(col + 1, j)));
            for (u32 i2 = 0; i2 < n; ++i2)
                H.at(i2, col + 1) = fp_add(p, H.at(i2, col + 1), fp_mul(p, f, H.at(i2, i)));
        }
    }
    std::vector<Polynomial> pk(n + 1, Polynomial::one(p));
    for (u32 k = 1; k <= n; ++k) {
        Polynomial t = poly_mul(Polynomial::x_minus(p, H.at(k - 1, k - 1)), pk[k - 1]);
        u32 prod = 1;
        for (u32 m = k - 1; m >= 1; --m) {
            prod = fp_mul(p, prod, H.at(m, m - 1));
            if (!prod) break;
            u32 coef = fp_mul(p, H.at(m - 1, k - 1), prod);
            if (coef) t = poly_sub(t, poly_scale(pk[m - 1], coef));
        }
        pk[k] = std::move(t);
    }
    return pk[n];
}

Matrix poly_at_matrix(const Polynomial& f, const Matrix& A) {
    if (!A.square()) throw std::invalid_argument("poly_at_matrix needs a square matrix");
    Matrix R(A.p, A.rows, A.rows);
    for (int i = f.degree(); i >= 0; --i) {
        R = mat_mul(R, A);
        for (u32 k = 0; k < A.rows; ++k) R.at(k, k) = fp_add(A.p, R.at(k, k), f.c[std::size_t(i)]);
    }
    return R;
}

bool ClassInvariant::operator==(const ClassInvariant& o) const {
    if (p != o.p || d != o.d || blocks.size() != o.blocks.size()) return false;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].f != o.blocks[i].f || blocks[i].partition != o.blocks[i].partition) return false;
    return true;
}

ClassInvariant class_invariant(const Matrix& A) {
    if (!A.square()) throw std::invalid_argument("class_invariant needs a square matrix");
    ClassInvariant inv;
    inv.p = A.p;
    inv.d = A.rows;
    Polynomial cp = char_poly(A);
    for (const auto& [f, mult] : factorize(cp)) {
        if (f.degree() == 1 && f.c[0] == 0)
            throw std::domain_error("class_invariant needs a nonsingular matrix");
        u32 degf = u32(f.degree());
        // kernel-dimension jumps of f(A)^k give the conjugate partition
        Matrix B = poly_at_matrix(f, A);
        Matrix C = B;
        std::vector<u32> jumps;
        u32 prev = 0;
        u32 target = degf * u32(mult);
        while (prev < target) {
            u32 ker = A.rows - mat_rank(C);
            u32 j = (ker - prev) / degf;
            if (j == 0) throw std::logic_error("class_invariant: kernel jump stalled");
            jumps.push_back(j);
            prev = ker;
            if (prev < target) C = mat_mul(C, B);
        }
        std::vector<u32> partition;
        for (u32 part = 1; part <= jumps[0]; ++part) {
            u32 cnt = 0;
            for (u32 j : jumps)
                if (j >= part) ++cnt;
            partition.push_back(cnt);
        }
        // partition entries are the counts ordered largest first
        std::sort(partition.begin(), partition.end(), std::greater<u32>());
        inv.blocks.push_back({f, partition});
    }
    std::sort(inv.blocks.begin(), inv.blocks.end(),
              [](const InvBlock& x, const InvBlock& y) { return poly_less(x.f, y.f); });
    return inv;
}

Polynomial min_poly_of(const ClassInvariant& inv) {
    Polynomial m = Polynomial::one(inv.p);
    for (const auto& b : inv.blocks) m = poly_mul(m, poly_pow(b.f, b.partition.front()));
    return m;
}

Polynomial min_poly(const Matrix& A) { return min_poly_of(class_invariant(A)); }

u64 order_from_invariant(const ClassInvariant& inv) {
    u64 ord = 1;
    for (const auto& b : inv.blocks) {
        u64 base = (b.f.degree() == 1 && b.f.c[0] == fp_neg(inv.p, 1))
                       ? 1  // f = x - 1
                       : multiplicative_order(b.f);
        u64 unip = ipow_checked(inv.p, ceil_log(inv.p, b.partition.front()));
        ord = lcm_u64(ord, base * unip);
    }
    return ord;
}

u64 order_of(const Matrix& A) {
    ClassInvariant inv = class_invariant(A);
    u64 e = order_from_invariant(inv);
    // powering witness: A^e = I and A^{e/q} != I for every prime q | e
    if (!mat_pow(A, e).is_identity()) throw std::logic_error("order_of: formula order is not annihilating");
    for (auto [q, m] : factor_u64(e)) {
        (void)m;
        if (mat_pow(A, e / q).is_identity()) throw std::logic_error("order_of: formula order is not minimal");
    }
    return e;
}

u32 det_from_invariant(const ClassInvariant& inv) {
    u32 det = 1;
    for (const auto& b : inv.blocks) {
        u32 dsum = 0;
        for (u32 part : b.partition) dsum += part;
        // det(companion(g)) = (-1)^deg(g) * g(0)
        u32 base = fp_mul(inv.p, fp_pow(inv.p, fp_neg(inv.p, 1), b.f.degree()), b.f.c[0]);
        det = fp_mul(inv.p, det, fp_pow(inv.p, base, dsum));
    }
    return det;
}

std::vector<Vec> primary_component(const Matrix& A, const Polynomial& f) {
    Matrix B = mat_pow(poly_at_matrix(f, A), A.rows);
    return left_kernel(B);
}

std::vector<std::vector<u32>> partitions_of(u32 n) {
    std::vector<std::vector<u32>> out;
    std::vector<u32> cur;
    // reverse-lex: largest first part first
    auto rec = [&](auto&& self, u32 rem, u32 maxpart) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (u32 k = std::min(rem, maxpart); k >= 1; --k) {
            cur.push_back(k);
            self(self, rem - k, k);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

std::vector<ClassInvariant> enumerate_class_invariants(u32 p, u32 d, u64 cap) {
    // irreducibles of each degree up to d, excluding x, in canonical order
    std::vector<Polynomial> irr;
    for (u32 deg = 1; deg <= d; ++deg) {
        for (auto& f : irreducibles_of_degree(p, deg)) {
            if (deg == 1 && f.c[0] == 0) continue;
            irr.push_back(std::move(f));
        }
    }
    std::vector<ClassInvariant> out;
    std::vector<InvBlock> cur;
    auto rec = [&](auto&& self, std::size_t idx, u32 rem) -> void {
        if (rem == 0) {
            ClassInvariant inv;
            inv.p = p;
            inv.d = d;
            inv.blocks = cur;
            out.push_back(std::move(inv));
            if (out.size() > cap) throw cap_exceeded("conjugacy class count cap exceeded");
            return;
        }
        if (idx == irr.size()) return;
        u32 degf = u32(irr[idx].degree());
        self(self, idx + 1, rem);  // skip this irreducible
        for (u32 w = 1; w * degf <= rem; ++w) {
            for (auto& part : partitions_of(w)) {
                cur.push_back({irr[idx], part});
                self(self, idx + 1, rem - w * degf);
                cur.pop_back();
            }
        }
    };
    rec(rec, 0, d);
    // canonical block order inside each invariant is already by poly_less
    for (auto& inv : out)
        std::sort(inv.blocks.begin(), inv.blocks.end(),
                  [](const InvBlock& x, const InvBlock& y) { return poly_less(x.f, y.f); });
    return out;
}

Matrix rep_matrix(const ClassInvariant& inv) {
    std::vector<Matrix> parts;
    for (const auto& b : inv.blocks)
        for (u32 part : b.partition) parts.push_back(companion(poly_pow(b.f, part)));
    return direct_sum(inv.p, parts);
}

std::vector<u32> rep_unipotent_coords(const ClassInvariant& inv) {
    std::vector<u32> coords;
    u32 off = 0;
    for (const auto& b : inv.blocks) {
        bool is_xm1 = b.f.degree() == 1 && b.f.c[0] == fp_neg(inv.p, 1);
        for (u32 part : b.partition) {
            u32 dim = u32(b.f.degree()) * part;
            if (is_xm1)
                for (u32 i = 0; i < dim; ++i) coords.push_back(off + i);
            off += dim;
        }
    }
    return coords;
}

std::string invariant_to_string(const ClassInvariant& inv) {
    std::string s;
    for (const auto& b : inv.blocks) {
        if (!s.empty()) s += " ";
        s += "(" + poly_to_string(b.f) + ")[";
        for (std::size_t i = 0; i < b.partition.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(b.partition[i]);
        }
        s += "]";
    }
    return s;
}

std::string matrix_to_string(const Matrix& A) {
    std::string s = "[";
    for (u32 i = 0; i < A.rows; ++i) {
        if (i) s += ";";
        for (u32 j = 0; j < A.cols; ++j) {
            if (j) s += ",";
            s += std::to_string(A.at(i, j));
        }
    }
    s += "]";
    return s;
}

Matrix parse_matrix(const std::string& text, u32 p) {
    std::size_t i = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("matrix syntax error at offset " + std::to_string(i) + ": " + what);
    };
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i >= text.size() || text[i] != '[') fail("expected '['");
    ++i;
    std::vector<std::vector<u32>> rows;
    std::vector<u32> cur;
    while (true) {
        skip_ws();
        if (i >= text.size()) fail("unterminated matrix literal");
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            u64 v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                v = v * 10 + (text[i++] - '0');
            cur.push_back(u32(v % p));
            skip_ws();
        }
        if (i >= text.size()) fail("unterminated matrix literal");
        if (text[i] == ',') {
            ++i;
        } else if (text[i] == ';') {
            rows.push_back(cur);
            cur.clear();
            ++i;
        } else if (text[i] == ']') {
            ++i;
            if (!cur.empty() || rows.empty()) rows.push_back(cur);
            break;
        } else {
            fail("expected ',', ';' or ']'");
        }
    }
    u32 n = u32(rows.size());
    for (const auto& r : rows)
        if (r.size() != n) fail("matrix literal must be square");
    Matrix M(p, n, n);
    for (u32 r = 0; r < n; ++r)
        for (u32 c = 0; c < n; ++c) M.at(r, c) = rows[r][c];
    return M;
}

std::string vec_to_string(const Vec& v) {
    if (vec_is_zero(v)) return "0";
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

Vec parse_vec(const std::string& text, u32 p, u32 d) {
    Vec v(d, 0);
    if (text == "0") return v;
    if (!text.empty() && (text[0] == 'e' || text[0] == 'E')) {
        u64 idx = 0;
        for (std::size_t i = 1; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw std::invalid_argument("bad basis vector: " + text);
            idx = idx * 10 + (text[i] - '0');
        }
        if (idx < 1 || idx > d) throw std::invalid_argument("basis vector index out of range: " + text);
        v[std::size_t(idx - 1)] = 1;
        return v;
    }
    std::size_t i = 0, k = 0;
    while (i < text.size()) {
        if (k >= d) throw std::invalid_argument("vector has too many coordinates");
        u64 val = 0;
        bool any = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            val = val * 10 + (text[i++] - '0');
            any = true;
        }
        if (!any) throw std::invalid_argument("vector syntax error at offset " + std::to_string(i));
        v[k++] = u32(val % p);
        if (i < text.size()) {
            if (text[i] != ',') throw std::invalid_argument("vector syntax error at offset " + std::to_string(i));
            ++i;
        }
    }
    if (k != d) throw std::invalid_argument("vector has wrong length");
    return v;
}

}  // namespace afftool
