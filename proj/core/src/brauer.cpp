#include "caminalab/brauer.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace caminalab {

namespace {

uint64_t pow_u64(uint64_t base, uint32_t e) {
    uint64_t v = 1;
    for (uint32_t i = 0; i < e; ++i) v *= base;
    return v;
}

void require_camina_pair(const GroupDatum& p, const GroupDatum& q, const char* who) {
    if (!is_camina(p) || !is_camina(q))
        throw std::invalid_argument(std::string(who) + ": both data must be Camina");
    if (p.p != q.p)
        throw std::invalid_argument(std::string(who) + ": prime mismatch");
}

} // namespace

InvariantTriple invariant_triple(const GroupDatum& g) {
    if (!is_camina(g)) throw std::invalid_argument("invariant_triple: datum is not Camina");
    InvariantTriple t;
    t.index_derived = pow_u64(g.p, g.r);
    t.derived_order = pow_u64(g.p, g.n);
    t.mho1_order = pow_u64(g.p, mat_rank(g.mu, g.p));
    return t;
}

bool check_invariant_triple(const GroupDatum& p, const GroupDatum& q) {
    require_camina_pair(p, q, "check_invariant_triple");
    return invariant_triple(p) == invariant_triple(q);
}

bool phi_compatibility_trivial(const GroupDatum& p, const GroupDatum& q) {
    // z -> zP' is the trivial map exactly when the center equals the derived
    // subgroup, which the Camina property forces on both sides.
    SubgroupReport rp = subgroup_report(p), rq = subgroup_report(q);
    return rp.center_dim == p.n && rp.derived_dim == p.n && rq.center_dim == q.n &&
           rq.derived_dim == q.n;
}

bool verify_nenciu_witness(const GroupDatum& p, const GroupDatum& q, const NenciuWitness& w) {
    if (!mat_inverse(w.a, p.p) || !mat_inverse(w.c, p.p)) return false;
    return mat_mul(w.c, p.mu, p.p) == mat_mul(q.mu, w.a, p.p);
}

std::optional<NenciuWitness> check_nenciu(const GroupDatum& p, const GroupDatum& q) {
    require_camina_pair(p, q, "check_nenciu");
    if (p.r != q.r || p.n != q.n)
        throw std::invalid_argument("check_nenciu: parameter mismatch, need equal (p, r, n)");
    if (!phi_compatibility_trivial(p, q))
        throw std::logic_error("check_nenciu: projection maps unexpectedly nontrivial");

    // pivot columns of mu give a complement of the kernel with independent images
    auto split = [](const GroupDatum& g) {
        FpMat e = g.mu;
        std::vector<uint32_t> pivots = rref(e, g.p);
        std::vector<FpVec> complement, images;
        for (uint32_t c : pivots) {
            FpVec unit(g.r, 0);
            unit[c] = 1;
            complement.push_back(std::move(unit));
            images.push_back(g.mu.col(c));
        }
        return std::tuple(complement, images, kernel_basis(g.mu, g.p));
    };
    auto [comp_p, img_p, ker_p] = split(p);
    auto [comp_q, img_q, ker_q] = split(q);
    if (comp_p.size() != comp_q.size()) return std::nullopt; // rank differs

    uint32_t pr = p.p;
    auto basis_matrix = [pr](const std::vector<FpVec>& head, const std::vector<FpVec>& tail,
                             uint32_t dim) {
        FpMat m(dim, dim);
        uint32_t col = 0;
        for (const FpVec& v : head) {
            for (uint32_t i = 0; i < dim; ++i) m.at(i, col) = v[i];
            ++col;
        }
        for (const FpVec& v : tail) {
            for (uint32_t i = 0; i < dim; ++i) m.at(i, col) = v[i];
            ++col;
        }
        return m;
    };

    // A: complement basis -> complement basis, kernel basis -> kernel basis
    FpMat bp = basis_matrix(comp_p, ker_p, p.r);
    FpMat bq = basis_matrix(comp_q, ker_q, q.r);
    FpMat a = mat_mul(bq, *mat_inverse(bp, pr), pr);

    // C: image basis -> image basis, completed to a basis of F_p^n on each side
    auto complete = [pr](const std::vector<FpVec>& img, uint32_t n) {
        SpanTracker span(n, pr);
        for (const FpVec& v : img) span.add(v);
        std::vector<FpVec> extra;
        for (uint32_t i = 0; i < n && span.rank() < n; ++i) {
            FpVec unit(n, 0);
            unit[i] = 1;
            if (span.add(unit)) extra.push_back(std::move(unit));
        }
        return extra;
    };
    std::vector<FpVec> ext_p = complete(img_p, p.n);
    std::vector<FpVec> ext_q = complete(img_q, q.n);
    FpMat wp = basis_matrix(img_p, ext_p, p.n);
    FpMat wq = basis_matrix(img_q, ext_q, q.n);
    FpMat c = mat_mul(wq, *mat_inverse(wp, pr), pr);

    NenciuWitness w{std::move(a), std::move(c)};
    if (!verify_nenciu_witness(p, q, w))
        throw std::logic_error("check_nenciu: constructed witness failed verification");
    return w;
}

// ---------------------------------------------------------------------------
// direct character-table matching
// ---------------------------------------------------------------------------

namespace {

struct TableView {
    const CharacterTable* t;
    std::vector<std::vector<uint32_t>> valcode; // [char][class]
};

struct Coloring {
    std::vector<uint32_t> cls_p, cls_q;  // class colors per side
    std::vector<uint32_t> chr_p, chr_q;  // character colors per side
};

// joint recoloring: map identical signatures (across both sides) to one color
class ColorBook {
  public:
    uint32_t id(const std::vector<uint64_t>& sig) {
        auto [it, _] = book_.try_emplace(sig, uint32_t(book_.size()));
        return it->second;
    }
    size_t size() const { return book_.size(); }

  private:
    std::map<std::vector<uint64_t>, uint32_t> book_;
};

bool counts_balanced(const std::vector<uint32_t>& cp, const std::vector<uint32_t>& cq) {
    std::map<uint32_t, int> delta;
    for (uint32_t c : cp) ++delta[c];
    for (uint32_t c : cq) --delta[c];
    for (auto& [_, d] : delta)
        if (d != 0) return false;
    return true;
}

constexpr uint32_t kFixedBase = 1u << 24;

// refine colors to a stable partition; false on a count mismatch
bool refine(const TableView& tp, const TableView& tq, bool use_power_maps, Coloring& col) {
    size_t nclass = tp.t->classes.size();
    size_t nchar = tp.t->chars.size();

    auto pack = [](uint32_t color, uint32_t code) {
        return (uint64_t(color) << 32) | code;
    };

    while (true) {
        size_t before = 0;
        {
            std::map<uint32_t, int> all;
            for (uint32_t c : col.cls_p) all[c];
            for (uint32_t c : col.chr_p) all[c];
            before = all.size();
        }

        // characters against class cells
        {
            ColorBook book;
            auto sig_of = [&](const TableView& tv, const std::vector<uint32_t>& cls_colors,
                              const std::vector<uint32_t>& chr_colors, size_t x) {
                std::vector<uint64_t> sig;
                sig.reserve(nclass + 1);
                sig.push_back(chr_colors[x]);
                std::vector<uint64_t> body(nclass);
                for (size_t c = 0; c < nclass; ++c)
                    body[c] = pack(cls_colors[c], tv.valcode[x][c]);
                std::sort(body.begin(), body.end());
                sig.insert(sig.end(), body.begin(), body.end());
                return sig;
            };
            std::vector<uint32_t> np(nchar), nq(nchar);
            for (size_t x = 0; x < nchar; ++x) np[x] = book.id(sig_of(tp, col.cls_p, col.chr_p, x));
            for (size_t x = 0; x < nchar; ++x) nq[x] = book.id(sig_of(tq, col.cls_q, col.chr_q, x));
            // keep individualized characters distinct
            for (size_t x = 0; x < nchar; ++x) {
                if (col.chr_p[x] >= kFixedBase) np[x] = col.chr_p[x];
                if (col.chr_q[x] >= kFixedBase) nq[x] = col.chr_q[x];
            }
            col.chr_p = std::move(np);
            col.chr_q = std::move(nq);
            if (!counts_balanced(col.chr_p, col.chr_q)) return false;
        }

        // classes against character cells and power-map images
        {
            ColorBook book;
            auto sig_of = [&](const TableView& tv, const std::vector<uint32_t>& cls_colors,
                              const std::vector<uint32_t>& chr_colors, size_t c) {
                std::vector<uint64_t> sig;
                sig.push_back(cls_colors[c]);
                sig.push_back(tv.t->class_sizes[c]);
                std::vector<uint64_t> body(nchar);
                for (size_t x = 0; x < nchar; ++x)
                    body[x] = pack(chr_colors[x], tv.valcode[x][c]);
                std::sort(body.begin(), body.end());
                sig.insert(sig.end(), body.begin(), body.end());
                if (use_power_maps)
                    for (const std::vector<uint32_t>& pm : tv.t->power_maps)
                        sig.push_back(cls_colors[pm[c]]);
                return sig;
            };
            std::vector<uint32_t> np(nclass), nq(nclass);
            for (size_t c = 0; c < nclass; ++c) np[c] = book.id(sig_of(tp, col.cls_p, col.chr_p, c));
            for (size_t c = 0; c < nclass; ++c) nq[c] = book.id(sig_of(tq, col.cls_q, col.chr_q, c));
            for (size_t c = 0; c < nclass; ++c) {
                if (col.cls_p[c] >= kFixedBase) np[c] = col.cls_p[c];
                if (col.cls_q[c] >= kFixedBase) nq[c] = col.cls_q[c];
            }
            col.cls_p = std::move(np);
            col.cls_q = std::move(nq);
            if (!counts_balanced(col.cls_p, col.cls_q)) return false;
        }

        size_t after = 0;
        {
            std::map<uint32_t, int> all;
            for (uint32_t c : col.cls_p) all[c];
            for (uint32_t c : col.chr_p) all[c];
            after = all.size();
        }
        if (after == before) return true;
    }
}

struct Matcher {
    const TableView& tp;
    const TableView& tq;
    bool use_power_maps;
    uint32_t next_fixed = kFixedBase;

    std::optional<DirectWitness> search(Coloring col) {
        if (!refine(tp, tq, use_power_maps, col)) return std::nullopt;

        size_t nclass = tp.t->classes.size();
        size_t nchar = tp.t->chars.size();

        // smallest non-singleton class cell, then character cell
        auto pick_cell = [](const std::vector<uint32_t>& colors) -> std::optional<uint32_t> {
            std::map<uint32_t, uint32_t> count;
            for (uint32_t c : colors) ++count[c];
            std::optional<uint32_t> best;
            uint32_t best_size = 0;
            for (auto& [color, cnt] : count)
                if (cnt > 1 && (!best || cnt < best_size)) {
                    best = color;
                    best_size = cnt;
                }
            return best;
        };

        std::optional<uint32_t> cls_cell = pick_cell(col.cls_p);
        std::optional<uint32_t> chr_cell = cls_cell ? std::nullopt : pick_cell(col.chr_p);

        if (!cls_cell && !chr_cell) {
            // everything singleton: read the bijections off the colors
            DirectWitness w;
            w.rho.assign(nclass, 0);
            w.tau.assign(nchar, 0);
            std::map<uint32_t, uint32_t> qcls, qchr;
            for (size_t c = 0; c < nclass; ++c) qcls[col.cls_q[c]] = uint32_t(c);
            for (size_t x = 0; x < nchar; ++x) qchr[col.chr_q[x]] = uint32_t(x);
            for (size_t c = 0; c < nclass; ++c) w.rho[c] = qcls.at(col.cls_p[c]);
            for (size_t x = 0; x < nchar; ++x) w.tau[x] = qchr.at(col.chr_p[x]);
            if (!verify_direct_witness(*tp.t, *tq.t, w, use_power_maps)) return std::nullopt;
            return w;
        }

        bool on_classes = cls_cell.has_value();
        uint32_t cell = on_classes ? *cls_cell : *chr_cell;
        const std::vector<uint32_t>& side_p = on_classes ? col.cls_p : col.chr_p;
        const std::vector<uint32_t>& side_q = on_classes ? col.cls_q : col.chr_q;

        size_t pi = 0;
        while (side_p[pi] != cell) ++pi;
        for (size_t qi = 0; qi < side_q.size(); ++qi) {
            if (side_q[qi] != cell) continue;
            Coloring branch = col;
            uint32_t fixed = next_fixed++;
            (on_classes ? branch.cls_p : branch.chr_p)[pi] = fixed;
            (on_classes ? branch.cls_q : branch.chr_q)[qi] = fixed;
            if (auto w = search(std::move(branch))) return w;
        }
        return std::nullopt;
    }
};

} // namespace

bool verify_direct_witness(const CharacterTable& tp, const CharacterTable& tq,
                           const DirectWitness& w, bool use_power_maps) {
    size_t nclass = tp.classes.size();
    size_t nchar = tp.chars.size();
    if (tq.classes.size() != nclass || tq.chars.size() != nchar) return false;
    if (w.rho.size() != nclass || w.tau.size() != nchar) return false;

    auto is_bijection = [](const std::vector<uint32_t>& f, size_t size) {
        std::vector<bool> hit(size, false);
        for (uint32_t v : f) {
            if (v >= size || hit[v]) return false;
            hit[v] = true;
        }
        return true;
    };
    if (!is_bijection(w.rho, nclass) || !is_bijection(w.tau, nchar)) return false;

    for (size_t c = 0; c < nclass; ++c)
        if (tp.class_sizes[c] != tq.class_sizes[w.rho[c]]) return false;

    for (size_t x = 0; x < nchar; ++x)
        for (size_t c = 0; c < nclass; ++c)
            if (!(tp.values[x][c] == tq.values[w.tau[x]][w.rho[c]])) return false;

    if (use_power_maps) {
        if (tp.power_maps.size() != tq.power_maps.size()) return false;
        for (size_t k = 0; k < tp.power_maps.size(); ++k)
            for (size_t c = 0; c < nclass; ++c)
                if (w.rho[tp.power_maps[k][c]] != tq.power_maps[k][w.rho[c]]) return false;
    }
    return true;
}

std::optional<DirectWitness> match_tables(const CharacterTable& tp, const CharacterTable& tq,
                                          bool use_power_maps) {
    if (tp.p != tq.p || tp.classes.size() != tq.classes.size() ||
        tp.chars.size() != tq.chars.size() || tp.group_order != tq.group_order)
        return std::nullopt;

    // shared dictionary of exact values -> small codes
    std::map<std::vector<int64_t>, uint32_t> dict;
    auto encode = [&](const CharacterTable& t) {
        TableView tv{&t, {}};
        tv.valcode.assign(t.chars.size(), std::vector<uint32_t>(t.classes.size(), 0));
        for (size_t x = 0; x < t.chars.size(); ++x)
            for (size_t c = 0; c < t.classes.size(); ++c) {
                auto [it, _] = dict.try_emplace(t.values[x][c].coeffs(), uint32_t(dict.size()));
                tv.valcode[x][c] = it->second;
            }
        return tv;
    };
    TableView vp = encode(tp);
    TableView vq = encode(tq);

    Coloring col;
    col.cls_p.assign(tp.classes.size(), 0);
    col.cls_q.assign(tq.classes.size(), 0);
    col.chr_p.assign(tp.chars.size(), 0);
    col.chr_q.assign(tq.chars.size(), 0);

    Matcher m{vp, vq, use_power_maps};
    return m.search(std::move(col));
}

std::optional<DirectWitness> check_direct(const GroupDatum& p, const GroupDatum& q,
                                          bool use_power_maps) {
    require_camina_pair(p, q, "check_direct");
    CharacterTable tp = build_table(p);
    CharacterTable tq = build_table(q);
    return match_tables(tp, tq, use_power_maps);
}

// ---------------------------------------------------------------------------
// datum isomorphism
// ---------------------------------------------------------------------------

namespace {

struct IsoSearch {
    const GroupDatum& p;
    const GroupDatum& q;
    std::vector<FpVec> all_vecs; // candidate columns, ascending code

    std::vector<FpVec> columns; // placed columns of A
    SpanTracker a_span;
    LinearSystem c_system;

    IsoSearch(const GroupDatum& p_, const GroupDatum& q_)
        : p(p_), q(q_), a_span(p_.r, p_.p), c_system(p_.n, p_.n, p_.p) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < p.r; ++i) count *= p.p;
        all_vecs.reserve(count);
        for (uint64_t code = 0; code < count; ++code) {
            FpVec v(p.r);
            uint64_t c = code;
            for (uint32_t i = p.r; i > 0; --i) {
                v[i - 1] = uint32_t(c % p.p);
                c /= p.p;
            }
            all_vecs.push_back(std::move(v));
        }
    }

    FpMat assemble_a() const {
        FpMat a(p.r, p.r);
        for (uint32_t k = 0; k < p.r; ++k)
            for (uint32_t i = 0; i < p.r; ++i) a.at(i, k) = columns[k][i];
        return a;
    }

    std::optional<FpMat> extract_c() const {
        if (!c_system.determined()) return std::nullopt;
        FpMat sol = c_system.solution(); // column t solves row t of C
        FpMat c(p.n, p.n);
        for (uint32_t t = 0; t < p.n; ++t)
            for (uint32_t s = 0; s < p.n; ++s) c.at(t, s) = sol.at(s, t);
        return c;
    }

    std::optional<IsoWitness> dfs(uint32_t k) {
        if (k == p.r) return finish();
        for (const FpVec& v : all_vecs) {
            SpanTracker span_copy = a_span;
            if (!span_copy.add(v)) continue;
            LinearSystem sys_copy = c_system;
            bool ok = true;
            for (uint32_t i = 0; i < k && ok; ++i)
                ok = sys_copy.add_equation(p.b_at(k, i), q.beta(v, columns[i]));
            if (ok) ok = sys_copy.add_equation(p.mu.col(k), mat_apply(q.mu, v, p.p));
            if (!ok) continue;
            if (sys_copy.determined()) {
                // C pinned: prune singular C early
                LinearSystem probe = sys_copy;
                FpMat sol = probe.solution();
                FpMat c(p.n, p.n);
                for (uint32_t t = 0; t < p.n; ++t)
                    for (uint32_t s = 0; s < p.n; ++s) c.at(t, s) = sol.at(s, t);
                if (!mat_inverse(c, p.p)) continue;
            }
            columns.push_back(v);
            std::swap(a_span, span_copy);
            std::swap(c_system, sys_copy);
            auto res = dfs(k + 1);
            std::swap(c_system, sys_copy);
            std::swap(a_span, span_copy);
            columns.pop_back();
            if (res) return res;
        }
        return std::nullopt;
    }

    std::optional<IsoWitness> finish() {
        // every pair and mu equation is already in the system; any solution
        // satisfies them, so only invertibility of C remains.
        FpMat a = assemble_a();
        if (c_system.determined()) {
            FpMat c = *extract_c();
            if (!mat_inverse(c, p.p)) return std::nullopt;
            return IsoWitness{std::move(a), std::move(c), std::nullopt};
        }
        // underdetermined system: walk the affine solution space
        FpMat particular = c_system.solution();
        FpMat coeffs(0, p.n);
        {
            // homogeneous directions = kernel of the accumulated coefficient rows;
            // rebuild them from the pair table and mu directly
            std::vector<FpVec> rows;
            for (uint32_t i = 1; i < p.r; ++i)
                for (uint32_t j = 0; j < i; ++j) rows.push_back(p.b_at(i, j));
            for (uint32_t c = 0; c < p.r; ++c) rows.push_back(p.mu.col(c));
            coeffs = FpMat(uint32_t(rows.size()), p.n);
            for (uint32_t i = 0; i < rows.size(); ++i)
                for (uint32_t t = 0; t < p.n; ++t) coeffs.at(i, t) = rows[i][t];
        }
        std::vector<FpVec> null_basis = kernel_basis(coeffs, p.p);
        uint32_t d = uint32_t(null_basis.size());
        uint64_t combos = 1;
        for (uint32_t i = 0; i < d * p.n; ++i) {
            combos *= p.p;
            if (combos > 65536)
                throw std::runtime_error("is_isomorphic: C solution space too large to enumerate");
        }
        for (uint64_t code = 0; code < combos; ++code) {
            FpMat c(p.n, p.n);
            uint64_t rest = code;
            for (uint32_t t = 0; t < p.n; ++t) {
                FpVec row(p.n);
                for (uint32_t s = 0; s < p.n; ++s) row[s] = particular.at(s, t);
                for (uint32_t b = 0; b < d; ++b) {
                    uint32_t w = uint32_t(rest % p.p);
                    rest /= p.p;
                    if (w) vec_add_scaled_inplace(row, w, null_basis[b], p.p);
                }
                for (uint32_t s = 0; s < p.n; ++s) c.at(t, s) = row[s];
            }
            if (!mat_inverse(c, p.p)) continue;
            return IsoWitness{assemble_a(), std::move(c), std::nullopt};
        }
        return std::nullopt;
    }
};

} // namespace

bool verify_iso_witness(const GroupDatum& p, const GroupDatum& q, const IsoWitness& w) {
    if (!mat_inverse(w.a, p.p) || !mat_inverse(w.c, p.p)) return false;
    for (uint32_t i = 1; i < p.r; ++i)
        for (uint32_t j = 0; j < i; ++j) {
            FpVec lhs = mat_apply(w.c, p.b_at(i, j), p.p);
            FpVec rhs = q.beta(w.a.col(i), w.a.col(j));
            if (!(lhs == rhs)) return false;
        }
    if (!(mat_mul(w.c, p.mu, p.p) == mat_mul(q.mu, w.a, p.p))) return false;
    return true;
}

std::optional<IsoWitness> is_isomorphic(const GroupDatum& p, const GroupDatum& q,
                                        bool complete_correction) {
    if (!validate(p) || !validate(q))
        throw std::invalid_argument("is_isomorphic: invalid datum");
    if (p.p != q.p || p.r != q.r || p.n != q.n)
        throw std::invalid_argument("is_isomorphic: parameter mismatch, need equal (p, r, n)");

    IsoSearch search(p, q);
    std::optional<IsoWitness> w = search.dfs(0);
    if (!w) return std::nullopt;
    if (!verify_iso_witness(p, q, *w))
        throw std::logic_error("is_isomorphic: witness failed verification");
    if (complete_correction) {
        w->correction = solve_coboundary(p, q, w->a, w->c);
        if (!w->correction)
            throw std::logic_error("is_isomorphic: datum equivalence admitted no correction");
    }
    return w;
}

std::optional<std::vector<FpVec>> solve_coboundary(const GroupDatum& p, const GroupDatum& q,
                                                   const FpMat& a, const FpMat& c) {
    if (!verify_iso_witness(p, q, IsoWitness{a, c, std::nullopt}))
        throw std::invalid_argument("solve_coboundary: (A, C) do not satisfy the datum equations");
    if (p.order() > 1000)
        throw std::runtime_error("solve_coboundary: group order " + std::to_string(p.order()) +
                                 " exceeds the multiplication-table guard 1000");

    uint32_t pr = p.p;
    uint64_t ecount = 1;
    for (uint32_t i = 0; i < p.r; ++i) ecount *= pr;
    uint32_t e_total = uint32_t(ecount);

    std::vector<FpVec> evec(e_total);
    for (uint32_t code = 0; code < e_total; ++code) {
        FpVec v(p.r);
        uint32_t cc = code;
        for (uint32_t i = p.r; i > 0; --i) {
            v[i - 1] = cc % pr;
            cc /= pr;
        }
        evec[code] = std::move(v);
    }
    auto ecode = [&](const FpVec& v) {
        uint32_t code = 0;
        for (uint32_t i = 0; i < p.r; ++i) code = code * pr + v[i];
        return code;
    };

    // unknowns q(e) for e != 0; q(0) = 0
    LinearSystem sys(e_total - 1, p.n, pr);
    for (uint32_t c1 = 0; c1 < e_total; ++c1)
        for (uint32_t c2 = 0; c2 < e_total; ++c2) {
            FpVec sum(p.r);
            for (uint32_t i = 0; i < p.r; ++i) sum[i] = fp_add(evec[c1][i], evec[c2][i], pr);
            uint32_t cs = ecode(sum);

            FpVec coeff(e_total - 1, 0);
            if (cs != 0) coeff[cs - 1] = fp_add(coeff[cs - 1], 1, pr);
            if (c1 != 0) coeff[c1 - 1] = fp_sub(coeff[c1 - 1], 1, pr);
            if (c2 != 0) coeff[c2 - 1] = fp_sub(coeff[c2 - 1], 1, pr);

            FpVec rhs = vec_sub(mat_apply(c, p.cocycle(evec[c1], evec[c2]), pr),
                                q.cocycle(mat_apply(a, evec[c1], pr), mat_apply(a, evec[c2], pr)),
                                pr);
            if (vec_is_zero(coeff) && vec_is_zero(rhs)) continue;
            if (!sys.add_equation(std::move(coeff), std::move(rhs))) return std::nullopt;
        }

    FpMat sol = sys.solution(); // (e_total - 1) x n
    std::vector<FpVec> correction(e_total, FpVec(p.n, 0));
    for (uint32_t code = 1; code < e_total; ++code)
        for (uint32_t t = 0; t < p.n; ++t) correction[code][t] = sol.at(code - 1, t);

    // assemble and make the full multiplication-table check
    auto phi = [&](const Element& x) {
        Element y;
        y.e = mat_apply(a, x.e, pr);
        y.z = vec_add(mat_apply(c, x.z, pr), correction[ecode(x.e)], pr);
        return y;
    };
    uint32_t order = uint32_t(p.order());
    std::vector<bool> image_seen(order, false);
    for (uint32_t xc = 0; xc < order; ++xc) {
        uint32_t ic = encode_element(q, phi(decode_element(p, xc)));
        if (image_seen[ic]) return std::nullopt; // not injective
        image_seen[ic] = true;
    }
    for (uint32_t xc = 0; xc < order; ++xc) {
        Element x = decode_element(p, xc);
        Element fx = phi(x);
        for (uint32_t yc = 0; yc < order; ++yc) {
            Element y = decode_element(p, yc);
            if (!(phi(multiply(p, x, y)) == multiply(q, fx, phi(y)))) return std::nullopt;
        }
    }
    return correction;
}

} // namespace caminalab
