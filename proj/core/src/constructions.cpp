#include "caminalab/constructions.hpp"

#include <stdexcept>
#include <string>

namespace caminalab {

GroupDatum extraspecial(uint32_t p, uint32_t m, ExtraspecialVariant variant) {
    if (!is_odd_prime(p)) throw std::invalid_argument("extraspecial: p must be an odd prime");
    if (m < 1) throw std::invalid_argument("extraspecial: m must be positive");
    GroupDatum g;
    g.p = p;
    g.r = 2 * m;
    g.n = 1;
    g.b.assign(g.pair_count(), FpVec(1, 0));
    for (uint32_t i = 0; i < m; ++i)
        g.b[GroupDatum::pair_index(m + i, i)] = FpVec{1};
    g.mu = FpMat(1, g.r);
    if (variant == ExtraspecialVariant::ExponentP2) g.mu.at(0, 0) = 1;
    return g;
}

namespace {

// polynomial multiplication mod (x^m + modulus), coefficients mod p
uint32_t poly_mul_mod(uint32_t a, uint32_t b, uint32_t p, uint32_t m, const FpVec& modulus) {
    std::vector<uint32_t> av(m), bv(m), prod(2 * m - 1, 0);
    for (uint32_t i = 0; i < m; ++i) {
        av[i] = a % p;
        a /= p;
        bv[i] = b % p;
        b /= p;
    }
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j)
            prod[i + j] = fp_add(prod[i + j], fp_mul(av[i], bv[j], p), p);
    // reduce x^k = -modulus * x^(k-m) from the top down
    for (uint32_t k = 2 * m - 2; k + 1 > m; --k) {
        uint32_t c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (uint32_t j = 0; j < m; ++j)
            prod[k - m + j] = fp_sub(prod[k - m + j], fp_mul(c, modulus[j], p), p);
    }
    uint32_t code = 0;
    for (uint32_t i = m; i > 0; --i) code = code * p + prod[i - 1];
    return code;
}

bool has_root(const FpVec& modulus, uint32_t p, uint32_t m) {
    for (uint32_t x = 0; x < p; ++x) {
        uint32_t v = 1, val = 0;
        for (uint32_t i = 0; i < m; ++i) {
            val = fp_add(val, fp_mul(modulus[i], v, p), p);
            v = fp_mul(v, x, p);
        }
        val = fp_add(val, v, p); // monic leading term
        if (val == 0) return true;
    }
    return false;
}

} // namespace

FieldTable make_field_table(uint32_t p, uint32_t m) {
    if (!is_odd_prime(p)) throw std::invalid_argument("make_field_table: p must be an odd prime");
    if (m < 1 || m > 3) throw std::invalid_argument("make_field_table: degree out of supported range 1..3");

    FieldTable f;
    f.p = p;
    f.m = m;
    f.size = 1;
    for (uint32_t i = 0; i < m; ++i) f.size *= p;

    // lexicographically least monic irreducible, coefficients (c_0, ..., c_{m-1});
    // for m <= 3 irreducibility is exactly the absence of roots (plus c_0 != 0).
    bool found = false;
    for (uint64_t code = 0; code < f.size && !found; ++code) {
        FpVec cand(m);
        uint64_t c = code;
        for (uint32_t i = m; i > 0; --i) {
            cand[i - 1] = uint32_t(c % p);
            c /= p;
        }
        if (m == 1) {
            // x + c_0 is always irreducible; least is x
            f.modulus = cand;
            found = true;
            break;
        }
        if (cand[0] == 0) continue;
        if (!has_root(cand, p, m)) {
            f.modulus = cand;
            found = true;
        }
    }
    if (!found) throw std::logic_error("make_field_table: no irreducible polynomial found");

    f.mul.resize(size_t(f.size) * f.size);
    for (uint32_t a = 0; a < f.size; ++a)
        for (uint32_t b = 0; b < f.size; ++b)
            f.mul[size_t(a) * f.size + b] = poly_mul_mod(a, b, p, m, f.modulus);
    return f;
}

GroupDatum field_camina(uint32_t p, uint32_t m) {
    if (m < 1 || m > 3) throw std::invalid_argument("field_camina: m out of supported range 1..3");
    FieldTable f = make_field_table(p, m);

    GroupDatum g;
    g.p = p;
    g.r = 2 * m;
    g.n = m;
    g.b.assign(g.pair_count(), FpVec(m, 0));
    // basis element t^i has code p^i
    auto basis_code = [&](uint32_t i) {
        uint32_t c = 1;
        for (uint32_t k = 0; k < i; ++k) c *= p;
        return c;
    };
    for (uint32_t j = 0; j < m; ++j)
        for (uint32_t i = 0; i < m; ++i) {
            uint32_t prod = f.mul_at(basis_code(i), basis_code(j));
            FpVec v(m);
            for (uint32_t t = 0; t < m; ++t) {
                v[t] = prod % p;
                prod /= p;
            }
            g.b[GroupDatum::pair_index(m + j, i)] = std::move(v);
        }
    g.mu = FpMat(m, g.r);
    return g;
}

GroupDatum with_mu(const GroupDatum& g, FpMat m) {
    if (m.rows != g.n || m.cols != g.r)
        throw std::invalid_argument("with_mu: matrix must be n x r");
    for (uint32_t c : m.a)
        if (c >= g.p) throw std::invalid_argument("with_mu: entries must be reduced mod p");
    GroupDatum out = g;
    out.mu = std::move(m);
    return out;
}

FpMat canonical_mu(uint32_t n, uint32_t r, uint32_t rank) {
    if (rank > n || rank > r) throw std::invalid_argument("canonical_mu: rank too large");
    FpMat m(n, r);
    for (uint32_t i = 0; i < rank; ++i) m.at(i, i) = 1;
    return m;
}

GroupDatum random_datum(uint32_t p, uint32_t r, uint32_t n, uint64_t seed,
                        bool require_camina) {
    if (!is_odd_prime(p)) throw std::invalid_argument("random_datum: p must be an odd prime");
    if (r < 1) throw std::invalid_argument("random_datum: r must be positive");

    Splitmix64 rng;
    rng.state = seed;
    // fold the parameters into the stream
    rng.state ^= rng.next() + p;
    rng.state ^= rng.next() + r;
    rng.state ^= rng.next() + n;

    constexpr int kMaxRetries = 10000;
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        GroupDatum g;
        g.p = p;
        g.r = r;
        g.n = n;
        g.b.resize(g.pair_count());
        for (uint32_t i = 1; i < r; ++i)
            for (uint32_t j = 0; j < i; ++j) {
                FpVec v(n);
                for (uint32_t t = 0; t < n; ++t) v[t] = rng.below(p);
                g.b[GroupDatum::pair_index(i, j)] = std::move(v);
            }
        g.mu = FpMat(n, r);
        for (uint32_t c = 0; c < r; ++c)
            for (uint32_t t = 0; t < n; ++t) g.mu.at(t, c) = rng.below(p);
        if (!require_camina || is_camina(g)) return g;
    }
    throw std::runtime_error("random_datum: no Camina datum found in " +
                             std::to_string(kMaxRetries) + " draws for p=" +
                             std::to_string(p) + " r=" + std::to_string(r) +
                             " n=" + std::to_string(n));
}

} // namespace caminalab
