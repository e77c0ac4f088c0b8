// Classification of Camina data for small parameters up to isomorphism:
// exhaustive scan of commutator tables, orbit BFS under the change-of-basis
// action of GL(r, p) x GL(n, p), stabilizer computation, and orbits of power
// data under the stabilizer. Deterministic output for any worker count.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "caminalab/brauer.hpp"
#include "caminalab/group.hpp"

namespace caminalab {

// Base-p packing of a commutator table in serialization order (pairs
// (2,1), (3,1), (3,2), ..., most significant digit first, n coordinates per
// pair), so numeric order equals lexicographic order of the datum text.
uint64_t encode_b(const std::vector<FpVec>& b, uint32_t p, uint32_t n);
std::vector<FpVec> decode_b(uint64_t code, uint32_t p, uint32_t r, uint32_t n);

uint64_t encode_mu(const FpMat& mu, uint32_t p);
FpMat decode_mu(uint64_t code, uint32_t p, uint32_t r, uint32_t n);

// All commutator tables whose datum is Camina (for any mu), ascending codes.
// Guard: at most 10^9 candidates.
std::vector<uint64_t> scan_camina_b(uint32_t p, uint32_t r, uint32_t n, unsigned jobs = 1);

// Partition of the survivors into orbits under (A, C) . B = C o B o (A^-1 x A^-1),
// by BFS over generator images. Each orbit sorted ascending; orbits ordered by
// representative (= least member). Guard: code space at most 10^8.
std::vector<std::vector<uint64_t>> b_orbits(const std::vector<uint64_t>& survivors,
                                            uint32_t p, uint32_t r, uint32_t n);

// All pairs (A, C) fixing the table: C o B o (A^-1 x A^-1) = B. Scans the whole
// of GL(r, p) column by column with rank pruning; C is determined on a spanning
// pair set and verified on the rest. Guard: |GL(r, p)| <= 3*10^7.
std::vector<std::pair<FpMat, FpMat>> stabilizer(const std::vector<FpVec>& b,
                                                uint32_t p, uint32_t r, uint32_t n,
                                                unsigned jobs = 1);

struct ClassRecord {
    GroupDatum representative; // lexicographically least serialized member
    uint64_t b_orbit_size = 0;
    uint64_t mu_orbit_size = 0;
    uint64_t orbit_size = 0; // b_orbit_size * mu_orbit_size
    SubgroupReport report;
    InvariantTriple triple;
    uint64_t class_count = 0; // conjugacy classes: p^n + p^r - 1
};

struct ClassificationReport {
    uint32_t p = 0, r = 0, n = 0;
    uint64_t b_candidates = 0;
    uint64_t b_survivors = 0;
    uint64_t b_orbit_count = 0;
    std::vector<ClassRecord> classes; // sorted by (mho1_dim, omega1 flag, text)
    // indices into classes meeting the Brauer-pair condition, i < j
    std::vector<std::pair<size_t, size_t>> brauer_pairs;
};

// Full classification: B-orbits, then mu-orbits under each stabilizer by
// direct application over all p^(rn) power data. Throws (with a resource
// estimate) when a guard is exceeded.
ClassificationReport classify(uint32_t p, uint32_t r, uint32_t n, unsigned jobs = 1);

std::string format_report_text(const ClassificationReport& rep);
// one line per class:
// p r n mho1 omega1 omega1_abelian exponent classes orbit_size
std::string format_report_tsv(const ClassificationReport& rep);

} // namespace caminalab
