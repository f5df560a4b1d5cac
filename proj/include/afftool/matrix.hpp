#pragma once

#include <optional>
#include <string>
#include <vector>

#include "afftool/poly.hpp"

namespace afftool {

using Vec = std::vector<u32>;  // row vector over F_p, modulus carried by context

// Dense matrix over F_p, row-major. Vectors are rows and act on the right:
// x -> x*M, so row i of M is the image of e_{i+1}. d = 0 is allowed and
// stands for the identity on the zero space.
struct Matrix {
    u32 p = 2;
    u32 rows = 0, cols = 0;
    std::vector<u32> a;

    Matrix() = default;
    Matrix(u32 p_, u32 r, u32 c) : p(p_), rows(r), cols(c), a(std::size_t(r) * c, 0) {}

    static Matrix identity(u32 p, u32 n);

    u32& at(u32 i, u32 j) { return a[std::size_t(i) * cols + j]; }
    u32 at(u32 i, u32 j) const { return a[std::size_t(i) * cols + j]; }
    bool square() const { return rows == cols; }
    bool is_identity() const;
    bool is_zero() const;

    bool operator==(const Matrix& o) const {
        return p == o.p && rows == o.rows && cols == o.cols && a == o.a;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }
};

Matrix mat_add(const Matrix& A, const Matrix& B);
Matrix mat_sub(const Matrix& A, const Matrix& B);
Matrix mat_mul(const Matrix& A, const Matrix& B);
Matrix mat_pow(const Matrix& A, u64 e);
Matrix mat_transpose(const Matrix& A);
Vec vec_mat(const Vec& x, const Matrix& M);
Vec vec_add(u32 p, const Vec& x, const Vec& y);
Vec vec_sub(u32 p, const Vec& x, const Vec& y);
bool vec_is_zero(const Vec& x);

u32 mat_rank(Matrix A);
u32 mat_det(Matrix A);
// throws std::domain_error on a singular input
Matrix mat_inverse(const Matrix& A);
// Solve x*A = b for a row vector x; empty optional when inconsistent.
std::optional<Vec> solve_left(const Matrix& A, const Vec& b);
// Basis (as rows, reduced) of { x : x*A = 0 }.
std::vector<Vec> left_kernel(const Matrix& A);

// Unipotent cyclic block: e_i -> e_i + e_{i+1} for i < j, e_j fixed.
Matrix jordan_block(u32 p, u32 j);
// Companion matrix of a monic polynomial, acting on row vectors.
Matrix companion(const Polynomial& f);
// i-th power of the companion matrix of primitive_poly(p, j).
Matrix singer(u32 p, u32 j, u64 i);
Matrix direct_sum(u32 p, const std::vector<Matrix>& parts);
Matrix kronecker(const Matrix& A, const Matrix& B);

Polynomial char_poly(const Matrix& A);
// f evaluated at A (matrix Horner).
Matrix poly_at_matrix(const Polynomial& f, const Matrix& A);

// One (irreducible polynomial, partition) entry of the conjugacy invariant.
struct InvBlock {
    Polynomial f;                // monic irreducible, never x
    std::vector<u32> partition;  // weakly decreasing, positive
};

// The generalized-Jordan conjugacy invariant of a nonsingular matrix: two
// matrices are conjugate in GL_d(p) iff these agree.
struct ClassInvariant {
    u32 p = 2;
    u32 d = 0;
    std::vector<InvBlock> blocks;  // sorted by poly_less on f

    bool operator==(const ClassInvariant& o) const;
};

ClassInvariant class_invariant(const Matrix& A);
Polynomial min_poly_of(const ClassInvariant& inv);
Polynomial min_poly(const Matrix& A);

u64 order_from_invariant(const ClassInvariant& inv);
// lcm formula cross-checked against a binary-powering witness.
u64 order_of(const Matrix& A);
u32 det_from_invariant(const ClassInvariant& inv);

// Basis of ker f(A)^d, the f-primary component of the row space.
std::vector<Vec> primary_component(const Matrix& A, const Polynomial& f);

// Exactly one representative invariant per conjugacy class of GL_d(p),
// deterministic order (irreducibles by poly_less, partitions reverse-lex).
std::vector<ClassInvariant> enumerate_class_invariants(u32 p, u32 d,
                                                       u64 cap = kClassCountCap);
// Block-diagonal representative: one companion(f^m) block per partition part.
Matrix rep_matrix(const ClassInvariant& inv);
// Coordinates (0-based) spanned by the (x-1)-blocks of rep_matrix(inv).
std::vector<u32> rep_unipotent_coords(const ClassInvariant& inv);

std::vector<std::vector<u32>> partitions_of(u32 n);

std::string invariant_to_string(const ClassInvariant& inv);
std::string matrix_to_string(const Matrix& A);
// "[1,1;0,1]" with rows separated by ';'
Matrix parse_matrix(const std::string& text, u32 p);
std::string vec_to_string(const Vec& v);
// "0" | "e3" | "1,0,2"
Vec parse_vec(const std::string& text, u32 p, u32 d);

}  // namespace afftool
