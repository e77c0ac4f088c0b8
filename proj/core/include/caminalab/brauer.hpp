// Deciding whether two Camina data of class 2 form a Brauer pair, by three
// independent routes, each producing a replayable witness:
//
//   * the invariant-triple criterion (|P:P'|, |P'|, |mho_1(P)|),
//   * Nenciu's homomorphism condition nu_Q o alpha = beta o nu_P, realized
//     as invertible matrices (A, C) with C mu_P = mu_Q A,
//   * a direct backtracking match of the two character tables together with
//     all power maps.
//
// Also houses datum-level isomorphism search and the central correction that
// upgrades a linear equivalence (A, C) to an explicit group isomorphism.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "caminalab/char_table.hpp"
#include "caminalab/group.hpp"

namespace caminalab {

struct InvariantTriple {
    uint64_t index_derived = 0; // |P : P'| = p^r
    uint64_t derived_order = 0; // |P'| = p^n
    uint64_t mho1_order = 0;    // |mho_1(P)| = p^rank(mu)

    bool operator==(const InvariantTriple&) const = default;
};

// Throws unless is_camina(g).
InvariantTriple invariant_triple(const GroupDatum& g);

// The Brauer-pair condition on invariants. Both data Camina, same prime
// (throws otherwise). Isomorphism is excluded separately by the caller.
bool check_invariant_triple(const GroupDatum& p, const GroupDatum& q);

struct NenciuWitness {
    FpMat a; // r x r invertible, the induced map P/P' -> Q/Q'
    FpMat c; // n x n invertible, the induced map Z(P) -> Z(Q)
};

// Constructs (A, C) with C mu_P = mu_Q A by splitting F_p^r into the kernel
// of mu and a complement on each side, matching complements so the mu-images
// correspond, and extending C from the image to all of F_p^n. Returns
// nullopt exactly when rank(mu_P) != rank(mu_Q). Requires both data Camina
// with the same (p, r, n); throws on parameter mismatch.
std::optional<NenciuWitness> check_nenciu(const GroupDatum& p, const GroupDatum& q);

bool verify_nenciu_witness(const GroupDatum& p, const GroupDatum& q, const NenciuWitness& w);

// The projection-map compatibility from the general VZ criterion. For these
// groups the center equals the derived subgroup, so both projections are
// trivial and the condition holds identically; the check only confirms that
// degeneracy.
bool phi_compatibility_trivial(const GroupDatum& p, const GroupDatum& q);

struct DirectWitness {
    std::vector<uint32_t> rho; // class index in P-table -> class index in Q-table
    std::vector<uint32_t> tau; // character index in P-table -> index in Q-table
};

// Label-agnostic backtracking search for a simultaneous bijection of classes
// and characters carrying one table to the other entrywise, preserving class
// sizes, and (if use_power_maps) commuting with every power map k < p^2.
// Classes and characters are pre-partitioned by invariant fingerprints and
// refined after every assignment; candidates are tried in canonical order
// and the first witness is returned.
std::optional<DirectWitness> match_tables(const CharacterTable& tp, const CharacterTable& tq,
                                          bool use_power_maps);

std::optional<DirectWitness> check_direct(const GroupDatum& p, const GroupDatum& q,
                                          bool use_power_maps);

bool verify_direct_witness(const CharacterTable& tp, const CharacterTable& tq,
                           const DirectWitness& w, bool use_power_maps);

struct IsoWitness {
    FpMat a; // r x r invertible
    FpMat c; // n x n invertible
    // correction[code(e)] makes (e, z) -> (Ae, Cz + q(e)) a group isomorphism
    std::optional<std::vector<FpVec>> correction;
};

// Datum equivalence: invertible (A, C) with C B_P(u, v) = B_Q(Au, Av) on all
// pairs and C mu_P = mu_Q A. Backtracks over the columns of A with rank
// pruning while an incremental linear system pins C; once the placed pairs
// span F_p^n every remaining equation is a pruning check. Requires equal
// (p, r, n) and valid data (throws otherwise). With complete_correction, a
// successful witness is upgraded via solve_coboundary.
std::optional<IsoWitness> is_isomorphic(const GroupDatum& p, const GroupDatum& q,
                                        bool complete_correction = false);

bool verify_iso_witness(const GroupDatum& p, const GroupDatum& q, const IsoWitness& w);

// Solves q(e + e') - q(e) - q(e') = C f_P(e, e') - f_Q(Ae, Ae') over all
// pairs of exponent vectors (f = full multiplication cocycle with carries),
// with q(0) = 0 and free unknowns zero, then verifies that
// (e, z) -> (Ae, Cz + q(e)) is a bijective homomorphism by a full
// multiplication-table sweep. Returns nullopt if the linear system is
// inconsistent. Guard-limited to |G| <= 1000.
std::optional<std::vector<FpVec>> solve_coboundary(const GroupDatum& p, const GroupDatum& q,
                                                   const FpMat& a, const FpMat& c);

} // namespace caminalab
