// Exact character tables of Camina groups of class 2, over Z[zeta_p].
//
// For a Camina datum with parameters (p, r, n), r = 2m, the classes are the
// identity, the p^n - 1 nonidentity central elements (singletons), and one
// class per nonzero coset representative e (the full coset, size p^n):
// p^n + p^r - 1 classes. The characters are the p^r linear ones inflated
// from G/G' and, for each nonzero central functional lambda, one character
// of degree p^m supported on the center.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "caminalab/cyclotomic.hpp"
#include "caminalab/group.hpp"

namespace caminalab {

struct ClassLabel {
    enum class Kind { Identity, Central, Noncentral };
    Kind kind = Kind::Identity;
    FpVec vec; // z for Central (dim n), e for Noncentral (dim r)

    bool operator==(const ClassLabel&) const = default;
    std::string to_string() const;
};

struct CharLabel {
    enum class Kind { Linear, Nonlinear };
    Kind kind = Kind::Linear;
    FpVec vec; // sigma on G/G' (dim r) or lambda on G' (dim n)

    bool operator==(const CharLabel&) const = default;
    std::string to_string() const;
};

struct CharacterTable {
    uint32_t p = 0, r = 0, n = 0, m = 0;
    uint64_t group_order = 0;
    std::vector<ClassLabel> classes; // identity, central lex, noncentral lex
    std::vector<CharLabel> chars;    // linear lex (incl. trivial), nonlinear lex
    std::vector<std::vector<Cyclotomic>> values; // [char][class]
    std::vector<uint64_t> class_sizes;
    // power_maps[k][c] = index of the class of x^k for x in class c, k < p^2
    std::vector<std::vector<uint32_t>> power_maps;

    size_t num_classes() const { return classes.size(); }
    Element class_representative(size_t c, const GroupDatum& g) const;
};

// Throws std::invalid_argument unless is_camina(g).
CharacterTable build_table(const GroupDatum& g);

// Exact first and second orthogonality relations in Z[zeta_p]. On failure
// returns false and, if given, names the first failing pair.
bool check_orthogonality(const CharacterTable& t, std::string* first_failure = nullptr);

// Induction of the central linear character z -> zeta^(lambda.z) to the whole
// group, computed by the textbook sum over the explicit conjugacy classes of
// the concrete group. Returned in the class order of build_table; equals
// p^m times the Nonlinear(lambda) row. Exhaustive-guard limited.
std::vector<Cyclotomic> induced_from_center_oracle(const GroupDatum& g, const FpVec& lambda);

// Exact inner product (1/|G|) sum size(c) x(c) conj(y(c)) — a rational
// integer for the rows handled here; throws if the sum is not divisible.
int64_t inner_product(const std::vector<Cyclotomic>& x, const std::vector<Cyclotomic>& y,
                      const std::vector<uint64_t>& sizes, uint64_t group_order);

} // namespace caminalab
