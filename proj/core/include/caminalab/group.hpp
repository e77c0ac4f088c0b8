// Finite p-groups of nilpotence class <= 2 with elementary abelian central
// part, presented by commutator and power data.
//
// A datum (p, r, n, B, mu) describes the group on pairs (e, z) with
// e in F_p^r, z in F_p^n and multiplication
//
//   (e, z)(e', z') = ((e + e') mod p, z + z' + f(e, e'))
//   f(e, e') = sum_{i>j} e_i e'_j B(i, j) + sum_i carry_i(e, e') mu_i
//
// where carry_i = 1 iff e_i + e'_i >= p. The bilinear part and the
// per-coordinate carry part are both 2-cocycles, so every reduced datum
// defines a group: generator g_i has g_i^p = mu_i central and
// [g_i, g_j] = B(i, j) for i > j.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "caminalab/fp.hpp"

namespace caminalab {

struct GroupDatum {
    uint32_t p = 3;
    uint32_t r = 0; // rank of G/G'
    uint32_t n = 0; // rank of the central part
    std::vector<FpVec> b; // commutator table, entry pair_index(i,j) for i > j
    FpMat mu;             // n x r, column i is the value of g_i^p

    // Index of the (i, j) entry, 0-based, i > j; pairs ordered
    // (1,0), (2,0), (2,1), (3,0), ...
    static size_t pair_index(uint32_t i, uint32_t j) {
        return size_t(i) * (i - 1) / 2 + j;
    }
    size_t pair_count() const { return size_t(r) * (r - 1) / 2; }

    const FpVec& b_at(uint32_t i, uint32_t j) const { return b[pair_index(i, j)]; }

    // Commutator pairing on F_p^r: beta(u, v) = sum_{i>j} (u_i v_j - u_j v_i) B(i,j).
    FpVec beta(const FpVec& u, const FpVec& v) const;

    // Full multiplication cocycle (bilinear part plus carries).
    FpVec cocycle(const FpVec& e1, const FpVec& e2) const;

    uint64_t order() const;

    bool operator==(const GroupDatum&) const = default;
};

struct Element {
    FpVec e;
    FpVec z;
    bool operator==(const Element&) const = default;
};

struct ValidationResult {
    bool ok = true;
    std::string error;
    explicit operator bool() const { return ok; }
};

// Checks p odd prime, consistent dimensions, entries reduced mod p.
// On failure names the first violated field.
ValidationResult validate(const GroupDatum& g);

Element identity_element(const GroupDatum& g);
bool is_identity(const Element& x);

Element multiply(const GroupDatum& g, const Element& x, const Element& y);

// x^k via square-and-multiply; exponents reduced mod p^2 (x^(p^2) = 1).
Element power(const GroupDatum& g, const Element& x, int64_t k);

Element inverse(const GroupDatum& g, const Element& x);

// x^{-1} y^{-1} x y, evaluated by the closed form (0, beta(x.e, y.e)).
Element commutator(const GroupDatum& g, const Element& x, const Element& y);

// The p-power map on exponent vectors: nu(x) = mu . e = power(x, p).z.
FpVec nu(const GroupDatum& g, const Element& x);

// 1, p, or p^2.
uint32_t element_order(const GroupDatum& g, const Element& x);

struct SubgroupReport {
    uint32_t derived_dim = 0;      // log_p |G'|
    uint32_t center_dim = 0;       // log_p |Z(G)|
    uint32_t mho1_dim = 0;         // log_p |{x^p}| = rank(mu)
    uint32_t omega1_log_order = 0; // log_p |{x : x^p = 1}|
    bool omega1_abelian = true;
    uint32_t exponent = 0; // p or p^2
};

SubgroupReport subgroup_report(const GroupDatum& g);

// Mixed-radix element codes: e digits (most significant first), then z digits.
uint32_t encode_element(const GroupDatum& g, const Element& x);
Element decode_element(const GroupDatum& g, uint32_t code);

// Exact partition of all p^(r+n) elements into conjugacy classes, each class
// sorted ascending, classes ordered by minimal element code.
// Throws when the order exceeds the exhaustive-search guard (10^6).
std::vector<std::vector<uint32_t>> conjugacy_classes_oracle(const GroupDatum& g);

// Camina predicate via linear algebra: the commutator table spans F_p^n and
// lambda o beta is nondegenerate for every projective functional lambda.
bool is_camina(const GroupDatum& g);

// Independent check straight from the definition: nilpotence class exactly 2
// and class(g) = gG' for every g outside G'. Exhaustive; guard as above.
bool is_camina_oracle(const GroupDatum& g);

// Push the datum forward along a basis change: the result Q satisfies
// beta_Q(u, v) = C beta(A^{-1} u, A^{-1} v) and mu_Q = C mu A^{-1}.
// Throws if A or C is singular.
GroupDatum apply_transform(const GroupDatum& g, const FpMat& a, const FpMat& c);

constexpr uint64_t kExhaustiveGuard = 1000000;

} // namespace caminalab
