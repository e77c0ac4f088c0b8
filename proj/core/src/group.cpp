#include "caminalab/group.hpp"

#include <algorithm>
#include <stdexcept>

namespace caminalab {

FpVec GroupDatum::beta(const FpVec& u, const FpVec& v) const {
    FpVec w(n, 0);
    for (uint32_t i = 1; i < r; ++i)
        for (uint32_t j = 0; j < i; ++j) {
            uint32_t c = fp_sub(fp_mul(u[i], v[j], p), fp_mul(u[j], v[i], p), p);
            if (c == 0) continue;
            vec_add_scaled_inplace(w, c, b[pair_index(i, j)], p);
        }
    return w;
}

FpVec GroupDatum::cocycle(const FpVec& e1, const FpVec& e2) const {
    FpVec w(n, 0);
    for (uint32_t i = 1; i < r; ++i) {
        if (e1[i] == 0) continue;
        for (uint32_t j = 0; j < i; ++j) {
            uint32_t c = fp_mul(e1[i], e2[j], p);
            if (c == 0) continue;
            vec_add_scaled_inplace(w, c, b[pair_index(i, j)], p);
        }
    }
    for (uint32_t i = 0; i < r; ++i)
        if (e1[i] + e2[i] >= p)
            for (uint32_t t = 0; t < n; ++t) w[t] = fp_add(w[t], mu.at(t, i), p);
    return w;
}

uint64_t GroupDatum::order() const {
    uint64_t o = 1;
    for (uint32_t i = 0; i < r + n; ++i) o *= p;
    return o;
}

ValidationResult validate(const GroupDatum& g) {
    if (!is_odd_prime(g.p) || g.p >= (1u << 16))
        return {false, "p: must be an odd prime below 2^16"};
    if (g.r < 1) return {false, "r: must be positive"};
    if (g.b.size() != g.pair_count())
        return {false, "B: expected one entry per pair i > j"};
    for (uint32_t i = 1; i < g.r; ++i)
        for (uint32_t j = 0; j < i; ++j) {
            const FpVec& v = g.b[GroupDatum::pair_index(i, j)];
            if (v.size() != g.n) return {false, "B: entry dimension must equal n"};
            for (uint32_t c : v)
                if (c >= g.p) return {false, "B: entry not reduced mod p"};
        }
    if (g.mu.rows != g.n || g.mu.cols != g.r)
        return {false, "mu: must be an n x r matrix"};
    for (uint32_t c : g.mu.a)
        if (c >= g.p) return {false, "mu: entry not reduced mod p"};
    return {true, ""};
}

Element identity_element(const GroupDatum& g) {
    return {FpVec(g.r, 0), FpVec(g.n, 0)};
}

bool is_identity(const Element& x) { return vec_is_zero(x.e) && vec_is_zero(x.z); }

Element multiply(const GroupDatum& g, const Element& x, const Element& y) {
    if (x.e.size() != g.r || y.e.size() != g.r || x.z.size() != g.n || y.z.size() != g.n)
        throw std::invalid_argument("multiply: element dimension mismatch");
    Element out;
    out.e.resize(g.r);
    for (uint32_t i = 0; i < g.r; ++i) out.e[i] = fp_add(x.e[i], y.e[i], g.p);
    out.z = vec_add(x.z, y.z, g.p);
    FpVec f = g.cocycle(x.e, y.e);
    out.z = vec_add(out.z, f, g.p);
    return out;
}

Element power(const GroupDatum& g, const Element& x, int64_t k) {
    int64_t p2 = int64_t(g.p) * g.p;
    uint32_t e = uint32_t(((k % p2) + p2) % p2);
    Element acc = identity_element(g);
    Element base = x;
    while (e > 0) {
        if (e & 1) acc = multiply(g, acc, base);
        base = multiply(g, base, base);
        e >>= 1;
    }
    return acc;
}

Element inverse(const GroupDatum& g, const Element& x) {
    return power(g, x, int64_t(g.p) * g.p - 1);
}

Element commutator(const GroupDatum& g, const Element& x, const Element& y) {
    return {FpVec(g.r, 0), g.beta(x.e, y.e)};
}

FpVec nu(const GroupDatum& g, const Element& x) {
    return mat_apply(g.mu, x.e, g.p);
}

uint32_t element_order(const GroupDatum& g, const Element& x) {
    if (is_identity(x)) return 1;
    if (vec_is_zero(nu(g, x))) return g.p;
    return g.p * g.p;
}

SubgroupReport subgroup_report(const GroupDatum& g) {
    SubgroupReport rep;

    // derived subgroup: span of the commutator table
    FpMat derived(uint32_t(g.b.size()), g.n);
    for (uint32_t k = 0; k < g.b.size(); ++k)
        for (uint32_t t = 0; t < g.n; ++t) derived.at(k, t) = g.b[k][t];
    rep.derived_dim = g.b.empty() ? 0 : mat_rank(derived, g.p);

    // center: radical of beta, plus the whole z-part
    FpMat radical(g.r * g.n, g.r);
    for (uint32_t j = 0; j < g.r; ++j) {
        FpVec ej(g.r, 0);
        ej[j] = 1;
        for (uint32_t i = 0; i < g.r; ++i) {
            FpVec ei(g.r, 0);
            ei[i] = 1;
            FpVec v = g.beta(ei, ej);
            for (uint32_t t = 0; t < g.n; ++t) radical.at(j * g.n + t, i) = v[t];
        }
    }
    rep.center_dim = g.n + (g.r - mat_rank(radical, g.p));

    rep.mho1_dim = mat_rank(g.mu, g.p);
    rep.omega1_log_order = g.r - rep.mho1_dim + g.n;

    rep.omega1_abelian = true;
    std::vector<FpVec> ker = kernel_basis(g.mu, g.p);
    for (size_t i = 0; i < ker.size() && rep.omega1_abelian; ++i)
        for (size_t j = i + 1; j < ker.size(); ++j)
            if (!vec_is_zero(g.beta(ker[i], ker[j]))) {
                rep.omega1_abelian = false;
                break;
            }

    rep.exponent = vec_is_zero(g.mu.a) ? g.p : g.p * g.p;
    return rep;
}

uint32_t encode_element(const GroupDatum& g, const Element& x) {
    uint64_t code = 0;
    for (uint32_t i = 0; i < g.r; ++i) code = code * g.p + x.e[i];
    for (uint32_t t = 0; t < g.n; ++t) code = code * g.p + x.z[t];
    return uint32_t(code);
}

Element decode_element(const GroupDatum& g, uint32_t code) {
    Element x{FpVec(g.r), FpVec(g.n)};
    for (uint32_t t = g.n; t > 0; --t) {
        x.z[t - 1] = code % g.p;
        code /= g.p;
    }
    for (uint32_t i = g.r; i > 0; --i) {
        x.e[i - 1] = code % g.p;
        code /= g.p;
    }
    return x;
}

static void require_oracle_size(const GroupDatum& g, const char* what) {
    if (g.order() > kExhaustiveGuard)
        throw std::runtime_error(std::string(what) + ": group order " +
                                 std::to_string(g.order()) +
                                 " exceeds the exhaustive-search guard " +
                                 std::to_string(kExhaustiveGuard));
}

std::vector<std::vector<uint32_t>> conjugacy_classes_oracle(const GroupDatum& g) {
    require_oracle_size(g, "conjugacy_classes_oracle");
    uint32_t order = uint32_t(g.order());

    std::vector<Element> elems(order);
    std::vector<Element> invs(order);
    for (uint32_t c = 0; c < order; ++c) {
        elems[c] = decode_element(g, c);
        invs[c] = inverse(g, elems[c]);
    }

    std::vector<bool> seen(order, false);
    std::vector<std::vector<uint32_t>> classes;
    for (uint32_t c = 0; c < order; ++c) {
        if (seen[c]) continue;
        std::vector<uint32_t> cls;
        for (uint32_t h = 0; h < order; ++h) {
            Element conj = multiply(g, invs[h], multiply(g, elems[c], elems[h]));
            uint32_t cc = encode_element(g, conj);
            if (!seen[cc]) {
                seen[cc] = true;
                cls.push_back(cc);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    return classes;
}

bool is_camina(const GroupDatum& g) {
    if (g.n < 1 || g.r < 2 || g.r % 2 != 0) return false;

    FpMat derived(uint32_t(g.b.size()), g.n);
    for (uint32_t k = 0; k < g.b.size(); ++k)
        for (uint32_t t = 0; t < g.n; ++t) derived.at(k, t) = g.b[k][t];
    if (mat_rank(derived, g.p) != g.n) return false;

    for (const FpVec& lambda : projective_functionals(g.n, g.p)) {
        FpMat m(g.r, g.r);
        for (uint32_t i = 1; i < g.r; ++i)
            for (uint32_t j = 0; j < i; ++j) {
                uint32_t v = vec_dot(lambda, g.b[GroupDatum::pair_index(i, j)], g.p);
                m.at(i, j) = v;
                m.at(j, i) = fp_neg(v, g.p);
            }
        if (mat_rank(std::move(m), g.p) != g.r) return false;
    }
    return true;
}

bool is_camina_oracle(const GroupDatum& g) {
    require_oracle_size(g, "is_camina_oracle");
    uint32_t order = uint32_t(g.order());

    // derived subgroup from word-level generator commutators
    SpanTracker derived(g.n, g.p);
    for (uint32_t i = 0; i < g.r; ++i)
        for (uint32_t j = 0; j < g.r; ++j) {
            if (i == j) continue;
            Element gi = identity_element(g), gj = identity_element(g);
            gi.e[i] = 1;
            gj.e[j] = 1;
            Element word = multiply(g, inverse(g, gi),
                                    multiply(g, inverse(g, gj), multiply(g, gi, gj)));
            if (!vec_is_zero(word.e)) return false; // commutator not central
            derived.add(word.z);
        }
    if (derived.rank() == 0) return false; // abelian: class 1, not 2

    // class exactly 2: derived inside the center
    for (uint32_t t = 0; t < g.n; ++t) {
        Element central = identity_element(g);
        central.z[t] = 1;
        for (uint32_t i = 0; i < g.r; ++i) {
            Element gi = identity_element(g);
            gi.e[i] = 1;
            if (!(multiply(g, central, gi) == multiply(g, gi, central))) return false;
        }
    }

    uint64_t derived_order = 1;
    for (uint32_t i = 0; i < derived.rank(); ++i) derived_order *= g.p;

    std::vector<Element> elems(order);
    std::vector<Element> invs(order);
    for (uint32_t c = 0; c < order; ++c) {
        elems[c] = decode_element(g, c);
        invs[c] = inverse(g, elems[c]);
    }

    for (uint32_t c = 0; c < order; ++c) {
        const Element& x = elems[c];
        bool in_derived = vec_is_zero(x.e) && derived.contains(x.z);
        if (in_derived) continue;

        // class(x) must be exactly the coset x G'
        std::vector<bool> hit(order, false);
        uint64_t count = 0;
        for (uint32_t h = 0; h < order; ++h) {
            Element conj = multiply(g, invs[h], multiply(g, x, elems[h]));
            if (!(conj.e == x.e)) return false;
            FpVec diff = vec_sub(conj.z, x.z, g.p);
            if (!derived.contains(diff)) return false; // conjugate left the coset xG'
            uint32_t cc = encode_element(g, conj);
            if (!hit[cc]) {
                hit[cc] = true;
                ++count;
            }
        }
        if (count != derived_order) return false; // class smaller than the coset
    }
    return true;
}

GroupDatum apply_transform(const GroupDatum& g, const FpMat& a, const FpMat& c) {
    auto a_inv = mat_inverse(a, g.p);
    if (!a_inv || c.rows != g.n || c.cols != g.n || !mat_inverse(c, g.p))
        throw std::invalid_argument("apply_transform: (A, C) must be invertible of shape r, n");

    GroupDatum out;
    out.p = g.p;
    out.r = g.r;
    out.n = g.n;
    out.b.resize(g.pair_count());
    for (uint32_t i = 1; i < g.r; ++i)
        for (uint32_t j = 0; j < i; ++j) {
            FpVec v = g.beta(a_inv->col(i), a_inv->col(j));
            out.b[GroupDatum::pair_index(i, j)] = mat_apply(c, v, g.p);
        }
    out.mu = mat_mul(mat_mul(c, g.mu, g.p), *a_inv, g.p);
    return out;
}

} // namespace caminalab
