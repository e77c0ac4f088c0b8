// Exact linear algebra over the prime field F_p (odd p < 2^16).
//
// The prime is a runtime parameter passed alongside the data; one binary
// serves p = 3, 5, 7, ...  All elimination routines use the lowest-index
// pivot rule, so every output is deterministic and safe to hash.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace caminalab {

// Vector over F_p, entries reduced to [0, p).
using FpVec = std::vector<uint32_t>;

// Dense row-major matrix over F_p.
struct FpMat {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<uint32_t> a;

    FpMat() = default;
    FpMat(uint32_t r, uint32_t c) : rows(r), cols(c), a(size_t(r) * c, 0) {}

    uint32_t& at(uint32_t r, uint32_t c) { return a[size_t(r) * cols + c]; }
    uint32_t at(uint32_t r, uint32_t c) const { return a[size_t(r) * cols + c]; }

    static FpMat identity(uint32_t d);

    FpVec row(uint32_t r) const;
    FpVec col(uint32_t c) const;

    bool operator==(const FpMat&) const = default;
};

bool is_prime_u32(uint32_t v);
bool is_odd_prime(uint32_t v);

inline uint32_t fp_add(uint32_t x, uint32_t y, uint32_t p) {
    uint32_t s = x + y;
    return s >= p ? s - p : s;
}
inline uint32_t fp_sub(uint32_t x, uint32_t y, uint32_t p) {
    return x >= y ? x - y : x + p - y;
}
inline uint32_t fp_mul(uint32_t x, uint32_t y, uint32_t p) {
    return uint32_t(uint64_t(x) * y % p);
}
inline uint32_t fp_neg(uint32_t x, uint32_t p) { return x == 0 ? 0 : p - x; }

// Inverse of a nonzero residue (Fermat).
uint32_t fp_inv(uint32_t x, uint32_t p);

// Smallest generator of (Z/p)^x.
uint32_t least_primitive_root(uint32_t p);

FpVec vec_add(const FpVec& x, const FpVec& y, uint32_t p);
FpVec vec_sub(const FpVec& x, const FpVec& y, uint32_t p);
FpVec vec_scale(uint32_t c, const FpVec& x, uint32_t p);
void vec_add_scaled_inplace(FpVec& acc, uint32_t c, const FpVec& x, uint32_t p);
uint32_t vec_dot(const FpVec& x, const FpVec& y, uint32_t p);
bool vec_is_zero(const FpVec& x);

FpMat mat_mul(const FpMat& x, const FpMat& y, uint32_t p);
FpVec mat_apply(const FpMat& m, const FpVec& v, uint32_t p);

// In-place reduced row echelon form; returns the pivot columns in order.
std::vector<uint32_t> rref(FpMat& m, uint32_t p);

uint32_t mat_rank(FpMat m, uint32_t p);

// Basis of the right null space, one vector per free column (ascending),
// each scaled so its first nonzero coordinate is 1.
std::vector<FpVec> kernel_basis(const FpMat& m, uint32_t p);

// One solution of m x = b with free variables set to 0, or nullopt.
// Throws std::invalid_argument on dimension mismatch.
std::optional<FpVec> solve(const FpMat& m, const FpVec& b, uint32_t p);

std::optional<FpMat> mat_inverse(const FpMat& m, uint32_t p);

// Generating set of GL(d, p): all elementary transvections E_ij(1) plus
// diag(g, 1, ..., 1) with g the least primitive root mod p.
std::vector<FpMat> gl_generators(uint32_t d, uint32_t p);

// |GL(d, p)| = prod_{i<d} (p^d - p^i).
uint64_t gl_order(uint32_t d, uint32_t p);

// One representative per projective class of nonzero functionals on F_p^n,
// normalized so the first nonzero coordinate is 1, lexicographically sorted.
// Size (p^n - 1)/(p - 1).
std::vector<FpVec> projective_functionals(uint32_t n, uint32_t p);

// Incremental echelon basis; used for rank pruning and span tests.
class SpanTracker {
  public:
    SpanTracker(uint32_t dim, uint32_t p) : p_(p), dim_(dim) {}

    // Reduces v against the basis; returns true (and grows) if independent.
    bool add(FpVec v);
    bool contains(FpVec v) const;
    uint32_t rank() const { return uint32_t(rows_.size()); }
    uint32_t dim() const { return dim_; }

  private:
    uint32_t p_;
    uint32_t dim_;
    std::vector<FpVec> rows_;      // echelonized, leading coefficient 1
    std::vector<uint32_t> pivots_; // pivot column of rows_[i]

    void reduce(FpVec& v) const;
    friend class LinearSystem;
};

// Incremental linear system A x = b over F_p with multiple right-hand sides,
// maintained in echelon form. Supports consistency checks and extraction of
// the deterministic solution (free variables zero).
class LinearSystem {
  public:
    LinearSystem(uint32_t unknowns, uint32_t rhs_width, uint32_t p)
        : p_(p), unknowns_(unknowns), rhs_width_(rhs_width) {}

    // Adds one equation row; returns false if it makes the system inconsistent.
    bool add_equation(FpVec coeffs, FpVec rhs);

    bool determined() const { return rank_ == unknowns_; }
    uint32_t rank() const { return rank_; }

    // Solution per right-hand side, free unknowns zero. Columns of the
    // returned matrix are the solutions (unknowns x rhs_width).
    FpMat solution() const;

  private:
    uint32_t p_;
    uint32_t unknowns_;
    uint32_t rhs_width_;
    uint32_t rank_ = 0;
    std::vector<FpVec> rows_;      // width unknowns_ + rhs_width_
    std::vector<uint32_t> pivots_;
};

} // namespace caminalab
