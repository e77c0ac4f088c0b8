#include "caminalab/fp.hpp"

#include <algorithm>
#include <stdexcept>

namespace caminalab {

FpMat FpMat::identity(uint32_t d) {
    FpMat m(d, d);
    for (uint32_t i = 0; i < d; ++i) m.at(i, i) = 1;
    return m;
}

FpVec FpMat::row(uint32_t r) const {
    return FpVec(a.begin() + size_t(r) * cols, a.begin() + size_t(r + 1) * cols);
}

FpVec FpMat::col(uint32_t c) const {
    FpVec v(rows);
    for (uint32_t i = 0; i < rows; ++i) v[i] = at(i, c);
    return v;
}

bool is_prime_u32(uint32_t v) {
    if (v < 2) return false;
    for (uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

bool is_odd_prime(uint32_t v) { return v >= 3 && v % 2 == 1 && is_prime_u32(v); }

uint32_t fp_inv(uint32_t x, uint32_t p) {
    if (x == 0) throw std::invalid_argument("fp_inv: zero is not invertible");
    uint32_t result = 1, base = x % p;
    uint32_t e = p - 2;
    while (e > 0) {
        if (e & 1) result = fp_mul(result, base, p);
        base = fp_mul(base, base, p);
        e >>= 1;
    }
    return result;
}

uint32_t least_primitive_root(uint32_t p) {
    // p - 1 is small here (p < 2^16); factor it directly.
    std::vector<uint32_t> prime_factors;
    uint32_t m = p - 1;
    for (uint32_t d = 2; uint64_t(d) * d <= m; ++d) {
        if (m % d == 0) {
            prime_factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) prime_factors.push_back(m);

    auto pow_mod = [p](uint32_t b, uint32_t e) {
        uint32_t r = 1;
        while (e > 0) {
            if (e & 1) r = fp_mul(r, b, p);
            b = fp_mul(b, b, p);
            e >>= 1;
        }
        return r;
    };
    for (uint32_t g = 2; g < p; ++g) {
        bool ok = true;
        for (uint32_t q : prime_factors)
            if (pow_mod(g, (p - 1) / q) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw std::logic_error("least_primitive_root: no generator found");
}

FpVec vec_add(const FpVec& x, const FpVec& y, uint32_t p) {
    FpVec z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = fp_add(x[i], y[i], p);
    return z;
}

FpVec vec_sub(const FpVec& x, const FpVec& y, uint32_t p) {
    FpVec z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = fp_sub(x[i], y[i], p);
    return z;
}

FpVec vec_scale(uint32_t c, const FpVec& x, uint32_t p) {
    FpVec z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = fp_mul(c, x[i], p);
    return z;
}

void vec_add_scaled_inplace(FpVec& acc, uint32_t c, const FpVec& x, uint32_t p) {
    for (size_t i = 0; i < x.size(); ++i) acc[i] = fp_add(acc[i], fp_mul(c, x[i], p), p);
}

uint32_t vec_dot(const FpVec& x, const FpVec& y, uint32_t p) {
    uint64_t s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += uint64_t(x[i]) * y[i];
    return uint32_t(s % p);
}

bool vec_is_zero(const FpVec& x) {
    return std::all_of(x.begin(), x.end(), [](uint32_t v) { return v == 0; });
}

FpMat mat_mul(const FpMat& x, const FpMat& y, uint32_t p) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    FpMat z(x.rows, y.cols);
    for (uint32_t i = 0; i < x.rows; ++i)
        for (uint32_t k = 0; k < x.cols; ++k) {
            uint32_t xv = x.at(i, k);
            if (xv == 0) continue;
            for (uint32_t j = 0; j < y.cols; ++j)
                z.at(i, j) = fp_add(z.at(i, j), fp_mul(xv, y.at(k, j), p), p);
        }
    return z;
}

FpVec mat_apply(const FpMat& m, const FpVec& v, uint32_t p) {
    if (m.cols != v.size()) throw std::invalid_argument("mat_apply: shape mismatch");
    FpVec z(m.rows, 0);
    for (uint32_t i = 0; i < m.rows; ++i) {
        uint64_t s = 0;
        for (uint32_t j = 0; j < m.cols; ++j) s += uint64_t(m.at(i, j)) * v[j];
        z[i] = uint32_t(s % p);
    }
    return z;
}

std::vector<uint32_t> rref(FpMat& m, uint32_t p) {
    std::vector<uint32_t> pivots;
    uint32_t row = 0;
    for (uint32_t col = 0; col < m.cols && row < m.rows; ++col) {
        uint32_t pr = row;
        while (pr < m.rows && m.at(pr, col) == 0) ++pr;
        if (pr == m.rows) continue;
        if (pr != row)
            for (uint32_t j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(row, j));
        uint32_t inv = fp_inv(m.at(row, col), p);
        for (uint32_t j = col; j < m.cols; ++j) m.at(row, j) = fp_mul(inv, m.at(row, j), p);
        for (uint32_t i = 0; i < m.rows; ++i) {
            if (i == row) continue;
            uint32_t f = m.at(i, col);
            if (f == 0) continue;
            for (uint32_t j = col; j < m.cols; ++j)
                m.at(i, j) = fp_sub(m.at(i, j), fp_mul(f, m.at(row, j), p), p);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

uint32_t mat_rank(FpMat m, uint32_t p) { return uint32_t(rref(m, p).size()); }

std::vector<FpVec> kernel_basis(const FpMat& m, uint32_t p) {
    FpMat e = m;
    std::vector<uint32_t> pivots = rref(e, p);
    std::vector<bool> is_pivot(m.cols, false);
    for (uint32_t c : pivots) is_pivot[c] = true;

    std::vector<FpVec> basis;
    for (uint32_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        FpVec v(m.cols, 0);
        v[free] = 1;
        for (size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = fp_neg(e.at(uint32_t(k), free), p);
        // normalize: first nonzero coordinate 1
        for (uint32_t j = 0; j < m.cols; ++j) {
            if (v[j] != 0) {
                if (v[j] != 1) v = vec_scale(fp_inv(v[j], p), v, p);
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<FpVec> solve(const FpMat& m, const FpVec& b, uint32_t p) {
    if (b.size() != m.rows) throw std::invalid_argument("solve: rhs dimension mismatch");
    FpMat aug(m.rows, m.cols + 1);
    for (uint32_t i = 0; i < m.rows; ++i) {
        for (uint32_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i] % p;
    }
    std::vector<uint32_t> pivots = rref(aug, p);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
    FpVec x(m.cols, 0);
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(uint32_t(k), m.cols);
    return x;
}

std::optional<FpMat> mat_inverse(const FpMat& m, uint32_t p) {
    if (m.rows != m.cols) return std::nullopt;
    uint32_t d = m.rows;
    FpMat aug(d, 2 * d);
    for (uint32_t i = 0; i < d; ++i) {
        for (uint32_t j = 0; j < d; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, d + i) = 1;
    }
    std::vector<uint32_t> pivots = rref(aug, p);
    if (pivots.size() != d || pivots.back() != d - 1) return std::nullopt;
    FpMat inv(d, d);
    for (uint32_t i = 0; i < d; ++i)
        for (uint32_t j = 0; j < d; ++j) inv.at(i, j) = aug.at(i, d + j);
    return inv;
}

std::vector<FpMat> gl_generators(uint32_t d, uint32_t p) {
    if (d < 1) throw std::invalid_argument("gl_generators: d must be positive");
    std::vector<FpMat> gens;
    for (uint32_t i = 0; i < d; ++i)
        for (uint32_t j = 0; j < d; ++j) {
            if (i == j) continue;
            FpMat t = FpMat::identity(d);
            t.at(i, j) = 1;
            gens.push_back(std::move(t));
        }
    FpMat diag = FpMat::identity(d);
    diag.at(0, 0) = least_primitive_root(p);
    gens.push_back(std::move(diag));
    return gens;
}

uint64_t gl_order(uint32_t d, uint32_t p) {
    uint64_t pd = 1;
    for (uint32_t i = 0; i < d; ++i) pd *= p;
    uint64_t order = 1, pi = 1;
    for (uint32_t i = 0; i < d; ++i) {
        order *= pd - pi;
        pi *= p;
    }
    return order;
}

std::vector<FpVec> projective_functionals(uint32_t n, uint32_t p) {
    if (n < 1) throw std::invalid_argument("projective_functionals: n must be positive");
    // first nonzero coordinate is 1 at position k; later coordinates free
    std::vector<FpVec> out;
    for (uint32_t k = 0; k < n; ++k) {
        uint32_t tail = n - k - 1;
        uint64_t count = 1;
        for (uint32_t i = 0; i < tail; ++i) count *= p;
        for (uint64_t code = 0; code < count; ++code) {
            FpVec v(n, 0);
            v[k] = 1;
            uint64_t c = code;
            for (uint32_t i = tail; i > 0; --i) {
                v[k + i] = uint32_t(c % p);
                c /= p;
            }
            out.push_back(std::move(v));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void SpanTracker::reduce(FpVec& v) const {
    for (size_t k = 0; k < rows_.size(); ++k) {
        uint32_t c = v[pivots_[k]];
        if (c == 0) continue;
        for (uint32_t j = 0; j < dim_; ++j)
            v[j] = fp_sub(v[j], fp_mul(c, rows_[k][j], p_), p_);
    }
}

bool SpanTracker::add(FpVec v) {
    reduce(v);
    uint32_t pivot = dim_;
    for (uint32_t j = 0; j < dim_; ++j)
        if (v[j] != 0) { pivot = j; break; }
    if (pivot == dim_) return false;
    uint32_t inv = fp_inv(v[pivot], p_);
    for (uint32_t j = 0; j < dim_; ++j) v[j] = fp_mul(inv, v[j], p_);
    // keep existing rows reduced against the new one
    for (size_t k = 0; k < rows_.size(); ++k) {
        uint32_t c = rows_[k][pivot];
        if (c == 0) continue;
        for (uint32_t j = 0; j < dim_; ++j)
            rows_[k][j] = fp_sub(rows_[k][j], fp_mul(c, v[j], p_), p_);
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
}

bool SpanTracker::contains(FpVec v) const {
    reduce(v);
    return vec_is_zero(v);
}

bool LinearSystem::add_equation(FpVec coeffs, FpVec rhs) {
    FpVec row(unknowns_ + rhs_width_);
    std::copy(coeffs.begin(), coeffs.end(), row.begin());
    std::copy(rhs.begin(), rhs.end(), row.begin() + unknowns_);

    for (size_t k = 0; k < rows_.size(); ++k) {
        uint32_t c = row[pivots_[k]];
        if (c == 0) continue;
        for (size_t j = 0; j < row.size(); ++j)
            row[j] = fp_sub(row[j], fp_mul(c, rows_[k][j], p_), p_);
    }
    uint32_t pivot = unknowns_;
    for (uint32_t j = 0; j < unknowns_; ++j)
        if (row[j] != 0) { pivot = j; break; }
    if (pivot == unknowns_) {
        // coefficient part vanished: consistent only if the rhs did too
        for (uint32_t j = unknowns_; j < row.size(); ++j)
            if (row[j] != 0) return false;
        return true;
    }
    uint32_t inv = fp_inv(row[pivot], p_);
    for (size_t j = 0; j < row.size(); ++j) row[j] = fp_mul(inv, row[j], p_);
    for (size_t k = 0; k < rows_.size(); ++k) {
        uint32_t c = rows_[k][pivot];
        if (c == 0) continue;
        for (size_t j = 0; j < row.size(); ++j)
            rows_[k][j] = fp_sub(rows_[k][j], fp_mul(c, row[j], p_), p_);
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(pivot);
    ++rank_;
    return true;
}

FpMat LinearSystem::solution() const {
    FpMat x(unknowns_, rhs_width_);
    for (size_t k = 0; k < rows_.size(); ++k)
        for (uint32_t t = 0; t < rhs_width_; ++t)
            x.at(pivots_[k], t) = rows_[k][unknowns_ + t];
    return x;
}

} // namespace caminalab
