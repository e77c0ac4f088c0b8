// Canonical families of Camina data: extraspecial groups, Heisenberg groups
// over GF(p^m), mu-rank variants, and seeded random data.

#pragma once

#include <cstdint>

#include "caminalab/group.hpp"

namespace caminalab {

enum class ExtraspecialVariant { ExponentP, ExponentP2 };

// Extraspecial group of order p^(2m+1): r = 2m, n = 1, standard symplectic
// commutator table; mu = 0 for exponent p, mu = [1 0 ... 0] for exponent p^2.
GroupDatum extraspecial(uint32_t p, uint32_t m, ExtraspecialVariant variant);

// Multiplication table of GF(p^m) on the polynomial basis 1, t, ..., t^(m-1)
// modulo the lexicographically least monic irreducible of degree m.
struct FieldTable {
    uint32_t p = 0;
    uint32_t m = 0;
    uint32_t size = 0;     // p^m
    FpVec modulus;         // monic: coefficients c_0..c_{m-1} of x^m + ... + c_0
    std::vector<uint32_t> mul; // size x size, element codes sum coeff_i p^i

    uint32_t mul_at(uint32_t a, uint32_t b) const { return mul[size_t(a) * size + b]; }
};

FieldTable make_field_table(uint32_t p, uint32_t m);

// Heisenberg group over GF(p^m): r = 2m, n = m, exponent p, order p^(3m).
// Generators a_1..a_m, b_1..b_m; [b_j, a_i] is the field product of the
// corresponding basis elements in coordinates; mu = 0. Supported m: 1..3.
GroupDatum field_camina(uint32_t p, uint32_t m);

// Same commutator table, replacement power data.
GroupDatum with_mu(const GroupDatum& g, FpMat m);

// Rank-k block map e_i -> z_i for i < k, else 0 (n x r).
FpMat canonical_mu(uint32_t n, uint32_t r, uint32_t rank);

// splitmix64; the documented stream behind all seeded randomness here.
struct Splitmix64 {
    uint64_t state = 0;
    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    uint32_t below(uint32_t bound) { return uint32_t(next() % bound); }
};

// Random datum with entries drawn from a splitmix64 stream seeded by
// (seed, p, r, n); draw order is B pairs in table order, then mu
// column-major. With require_camina, rejection-samples up to a bounded
// retry count and throws (with rejection statistics) if exhausted.
GroupDatum random_datum(uint32_t p, uint32_t r, uint32_t n, uint64_t seed,
                        bool require_camina);

} // namespace caminalab
