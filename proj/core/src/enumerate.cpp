#include "caminalab/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "caminalab/datum_io.hpp"

namespace caminalab {

namespace {

uint64_t pow_u64(uint64_t base, uint32_t e) {
    uint64_t v = 1;
    for (uint32_t i = 0; i < e; ++i) v *= base;
    return v;
}

unsigned clamp_jobs(unsigned jobs) {
    return jobs == 0 ? 1 : std::min(jobs, 64u);
}

// run fn(chunk_index) over [0, chunks) on `jobs` workers; chunk order is
// reassembled by index afterwards, so results are schedule-independent
void parallel_chunks(uint64_t chunks, unsigned jobs, const std::function<void(uint64_t)>& fn) {
    jobs = clamp_jobs(jobs);
    if (jobs == 1 || chunks <= 1) {
        for (uint64_t i = 0; i < chunks; ++i) fn(i);
        return;
    }
    std::atomic<uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w)
        pool.emplace_back([&]() {
            for (uint64_t i = next.fetch_add(1); i < chunks; i = next.fetch_add(1)) fn(i);
        });
    for (std::thread& t : pool) t.join();
}

} // namespace

uint64_t encode_b(const std::vector<FpVec>& b, uint32_t p, uint32_t n) {
    uint64_t code = 0;
    for (const FpVec& v : b)
        for (uint32_t t = 0; t < n; ++t) code = code * p + v[t];
    return code;
}

std::vector<FpVec> decode_b(uint64_t code, uint32_t p, uint32_t r, uint32_t n) {
    size_t pairs = size_t(r) * (r - 1) / 2;
    std::vector<FpVec> b(pairs, FpVec(n));
    for (size_t k = pairs; k > 0; --k)
        for (uint32_t t = n; t > 0; --t) {
            b[k - 1][t - 1] = uint32_t(code % p);
            code /= p;
        }
    return b;
}

uint64_t encode_mu(const FpMat& mu, uint32_t p) {
    // column-major, matching the serialization's mu lines
    uint64_t code = 0;
    for (uint32_t c = 0; c < mu.cols; ++c)
        for (uint32_t t = 0; t < mu.rows; ++t) code = code * p + mu.at(t, c);
    return code;
}

FpMat decode_mu(uint64_t code, uint32_t p, uint32_t r, uint32_t n) {
    FpMat mu(n, r);
    for (uint32_t c = r; c > 0; --c)
        for (uint32_t t = n; t > 0; --t) {
            mu.at(t - 1, c - 1) = uint32_t(code % p);
            code /= p;
        }
    return mu;
}

namespace {

// Camina test for a bare commutator table: every projective functional makes
// the pairing nondegenerate. Uses the Pfaffian for r = 2, 4; elimination
// otherwise. Spanning F_p^n is implied (a functional killing the span gives
// the zero form).
struct BScanContext {
    uint32_t p, r, n;
    std::vector<FpVec> lambdas;

    bool camina_b(const std::vector<FpVec>& b) const {
        for (const FpVec& l : lambdas) {
            if (r == 2) {
                if (vec_dot(l, b[0], p) == 0) return false;
            } else if (r == 4) {
                // pairs: (1,0)=0 (2,0)=1 (2,1)=2 (3,0)=3 (3,1)=4 (3,2)=5
                uint32_t m10 = vec_dot(l, b[0], p), m20 = vec_dot(l, b[1], p);
                uint32_t m21 = vec_dot(l, b[2], p), m30 = vec_dot(l, b[3], p);
                uint32_t m31 = vec_dot(l, b[4], p), m32 = vec_dot(l, b[5], p);
                // pf = b10 b32 - b20 b31 + b30 b21
                uint32_t pf = fp_add(fp_sub(fp_mul(m10, m32, p), fp_mul(m20, m31, p), p),
                                     fp_mul(m30, m21, p), p);
                if (pf == 0) return false;
            } else {
                FpMat m(r, r);
                for (uint32_t i = 1; i < r; ++i)
                    for (uint32_t j = 0; j < i; ++j) {
                        uint32_t v = vec_dot(l, b[GroupDatum::pair_index(i, j)], p);
                        m.at(i, j) = v;
                        m.at(j, i) = fp_neg(v, p);
                    }
                if (mat_rank(std::move(m), p) != r) return false;
            }
        }
        return true;
    }
};

} // namespace

std::vector<uint64_t> scan_camina_b(uint32_t p, uint32_t r, uint32_t n, unsigned jobs) {
    if (!is_odd_prime(p) || r < 2 || n < 1)
        throw std::invalid_argument("scan_camina_b: need odd prime p, r >= 2, n >= 1");
    uint32_t digits = uint32_t(size_t(r) * (r - 1) / 2 * n);
    long double est = powl((long double)p, (long double)digits);
    if (est > 1e9L)
        throw std::runtime_error("scan_camina_b: " + std::to_string(p) + "^" +
                                 std::to_string(digits) +
                                 " candidates exceed the 10^9 scan guard");
    uint64_t total = pow_u64(p, digits);

    BScanContext ctx{p, r, n, projective_functionals(n, p)};
    if (r % 2 != 0) return {}; // odd-rank alternating forms are always degenerate

    constexpr uint64_t kChunk = 1 << 16;
    uint64_t chunks = (total + kChunk - 1) / kChunk;
    std::vector<std::vector<uint64_t>> found(chunks);
    parallel_chunks(chunks, jobs, [&](uint64_t ci) {
        uint64_t lo = ci * kChunk, hi = std::min(total, lo + kChunk);
        std::vector<FpVec> b = decode_b(lo, p, r, n);
        for (uint64_t code = lo; code < hi; ++code) {
            if (code != lo) {
                // increment the digit vector in place
                size_t k = b.size();
                uint32_t t = n;
                for (;;) {
                    if (t == 0) {
                        --k;
                        t = n;
                        continue;
                    }
                    uint32_t& d = b[k - 1][t - 1];
                    if (++d < p) break;
                    d = 0;
                    --t;
                }
            }
            if (ctx.camina_b(b)) found[ci].push_back(code);
        }
    });

    std::vector<uint64_t> out;
    for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
    return out;
}

namespace {

// B |-> C o B o (A^-1 x A^-1) given the inverse directly
std::vector<FpVec> transform_b(const GroupDatum& shell, const std::vector<FpVec>& b,
                               const FpMat& a_inv, const FpMat& c) {
    GroupDatum g = shell;
    g.b = b;
    std::vector<FpVec> out(b.size());
    for (uint32_t i = 1; i < g.r; ++i)
        for (uint32_t j = 0; j < i; ++j)
            out[GroupDatum::pair_index(i, j)] =
                mat_apply(c, g.beta(a_inv.col(i), a_inv.col(j)), g.p);
    return out;
}

} // namespace

std::vector<std::vector<uint64_t>> b_orbits(const std::vector<uint64_t>& survivors,
                                            uint32_t p, uint32_t r, uint32_t n) {
    uint32_t digits = uint32_t(size_t(r) * (r - 1) / 2 * n);
    uint64_t space = pow_u64(p, digits);
    if (space > 100000000ull)
        throw std::runtime_error("b_orbits: code space " + std::to_string(space) +
                                 " exceeds the 10^8 memory guard");

    GroupDatum shell;
    shell.p = p;
    shell.r = r;
    shell.n = n;
    shell.mu = FpMat(n, r);
    shell.b.assign(shell.pair_count(), FpVec(n, 0));

    // generator actions; applying generators only still closes the orbit
    // because every generator has finite order
    std::vector<std::pair<FpMat, FpMat>> actions;
    for (const FpMat& a : gl_generators(r, p))
        actions.emplace_back(*mat_inverse(a, p), FpMat::identity(n));
    for (const FpMat& c : gl_generators(n, p))
        actions.emplace_back(FpMat::identity(r), c);

    std::vector<uint8_t> visited(space, 0);
    std::vector<std::vector<uint64_t>> orbits;
    for (uint64_t seed : survivors) {
        if (visited[seed]) continue;
        std::vector<uint64_t> orbit;
        std::vector<uint64_t> frontier{seed};
        visited[seed] = 1;
        while (!frontier.empty()) {
            uint64_t code = frontier.back();
            frontier.pop_back();
            orbit.push_back(code);
            std::vector<FpVec> b = decode_b(code, p, r, n);
            for (const auto& [a_inv, c] : actions) {
                uint64_t next = encode_b(transform_b(shell, b, a_inv, c), p, n);
                if (!visited[next]) {
                    visited[next] = 1;
                    frontier.push_back(next);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

std::vector<std::pair<FpMat, FpMat>> stabilizer(const std::vector<FpVec>& b,
                                                uint32_t p, uint32_t r, uint32_t n,
                                                unsigned jobs) {
    if (gl_order(r, p) > 30000000ull)
        throw std::runtime_error("stabilizer: |GL(" + std::to_string(r) + ", " +
                                 std::to_string(p) + ")| = " + std::to_string(gl_order(r, p)) +
                                 " exceeds the 3*10^7 scan guard");

    GroupDatum shell;
    shell.p = p;
    shell.r = r;
    shell.n = n;
    shell.mu = FpMat(n, r);
    shell.b = b;

    // spanning pair subset: n pairs whose B-values are independent
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (uint32_t i = 1; i < r; ++i)
        for (uint32_t j = 0; j < i; ++j) pairs.emplace_back(i, j);
    SpanTracker span(n, p);
    std::vector<size_t> span_pairs;
    for (size_t k = 0; k < pairs.size(); ++k)
        if (span.add(b[k])) span_pairs.push_back(k);
    if (span.rank() != n)
        throw std::invalid_argument("stabilizer: commutator table does not span F_p^n");

    // inverse of the matrix of spanning values: C = [transformed values] * inv
    FpMat span_vals(n, n);
    for (uint32_t c = 0; c < n; ++c)
        for (uint32_t t = 0; t < n; ++t) span_vals.at(t, c) = b[span_pairs[c]][t];
    FpMat span_inv = *mat_inverse(span_vals, p);

    std::vector<FpVec> all_vecs;
    uint64_t vec_count = pow_u64(p, r);
    all_vecs.reserve(vec_count);
    for (uint64_t code = 0; code < vec_count; ++code) {
        FpVec v(r);
        uint64_t cc = code;
        for (uint32_t i = r; i > 0; --i) {
            v[i - 1] = uint32_t(cc % p);
            cc /= p;
        }
        all_vecs.push_back(std::move(v));
    }

    // DFS over columns of A below a fixed first column (one chunk per choice)
    auto scan_first = [&](uint64_t first_code, std::vector<std::pair<FpMat, FpMat>>& out) {
        std::vector<const FpVec*> cols;
        cols.push_back(&all_vecs[first_code]);
        SpanTracker rank_track(r, p);
        if (!rank_track.add(all_vecs[first_code])) return;

        auto beta_cols = [&](uint32_t i, uint32_t j) {
            return shell.beta(*cols[i], *cols[j]);
        };

        std::function<void()> descend = [&]() {
            uint32_t k = uint32_t(cols.size());
            if (k == r) {
                // C from the spanning pairs of transformed values
                FpMat vals(n, n);
                for (uint32_t c = 0; c < n; ++c) {
                    auto [i, j] = pairs[span_pairs[c]];
                    FpVec v = beta_cols(i, j);
                    for (uint32_t t = 0; t < n; ++t) vals.at(t, c) = v[t];
                }
                FpMat cmat = mat_mul(vals, span_inv, p);
                if (!mat_inverse(cmat, p)) return;
                for (size_t pr_idx = 0; pr_idx < pairs.size(); ++pr_idx) {
                    auto [i, j] = pairs[pr_idx];
                    if (!(mat_apply(cmat, b[pr_idx], p) == beta_cols(i, j))) return;
                }
                FpMat a(r, r);
                for (uint32_t c = 0; c < r; ++c)
                    for (uint32_t i = 0; i < r; ++i) a.at(i, c) = (*cols[c])[i];
                out.emplace_back(std::move(a), std::move(cmat));
                return;
            }
            for (const FpVec& v : all_vecs) {
                SpanTracker copy = rank_track;
                if (!copy.add(v)) continue;
                cols.push_back(&v);
                std::swap(rank_track, copy);
                descend();
                std::swap(rank_track, copy);
                cols.pop_back();
            }
        };
        descend();
    };

    std::vector<std::vector<std::pair<FpMat, FpMat>>> found(vec_count);
    parallel_chunks(vec_count, jobs, [&](uint64_t ci) { scan_first(ci, found[ci]); });

    std::vector<std::pair<FpMat, FpMat>> out;
    for (auto& f : found) {
        out.insert(out.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
        f.clear();
    }
    return out;
}

ClassificationReport classify(uint32_t p, uint32_t r, uint32_t n, unsigned jobs) {
    ClassificationReport rep;
    rep.p = p;
    rep.r = r;
    rep.n = n;
    rep.b_candidates = pow_u64(p, uint32_t(size_t(r) * (r - 1) / 2 * n));

    std::vector<uint64_t> survivors = scan_camina_b(p, r, n, jobs);
    rep.b_survivors = survivors.size();

    std::vector<std::vector<uint64_t>> orbits = b_orbits(survivors, p, r, n);
    rep.b_orbit_count = orbits.size();

    uint64_t mu_space = pow_u64(p, r * n);

    for (const std::vector<uint64_t>& orbit : orbits) {
        std::vector<FpVec> b = decode_b(orbit.front(), p, r, n);
        std::vector<std::pair<FpMat, FpMat>> stab = stabilizer(b, p, r, n, jobs);

        // orbit-stabilizer consistency
        if (orbit.size() * stab.size() != gl_order(r, p) * gl_order(n, p))
            throw std::logic_error("classify: orbit-stabilizer identity violated");

        std::vector<FpMat> a_invs;
        a_invs.reserve(stab.size());
        for (const auto& [a, c] : stab) a_invs.push_back(*mat_inverse(a, p));

        std::vector<uint8_t> visited(mu_space, 0);
        for (uint64_t mu_seed = 0; mu_seed < mu_space; ++mu_seed) {
            if (visited[mu_seed]) continue;
            FpMat mu = decode_mu(mu_seed, p, r, n);
            uint64_t orbit_count = 0;
            for (size_t s = 0; s < stab.size(); ++s) {
                uint64_t image = encode_mu(
                    mat_mul(mat_mul(stab[s].second, mu, p), a_invs[s], p), p);
                if (!visited[image]) {
                    visited[image] = 1;
                    ++orbit_count;
                }
            }

            ClassRecord rec;
            rec.representative.p = p;
            rec.representative.r = r;
            rec.representative.n = n;
            rec.representative.b = b;
            rec.representative.mu = std::move(mu);
            rec.b_orbit_size = orbit.size();
            rec.mu_orbit_size = orbit_count;
            rec.orbit_size = rec.b_orbit_size * rec.mu_orbit_size;
            rec.report = subgroup_report(rec.representative);
            rec.triple = invariant_triple(rec.representative);
            rec.class_count = pow_u64(p, n) + pow_u64(p, r) - 1;
            rep.classes.push_back(std::move(rec));
        }
    }

    std::sort(rep.classes.begin(), rep.classes.end(),
              [](const ClassRecord& x, const ClassRecord& y) {
                  if (x.report.mho1_dim != y.report.mho1_dim)
                      return x.report.mho1_dim < y.report.mho1_dim;
                  if (x.report.omega1_abelian != y.report.omega1_abelian)
                      return x.report.omega1_abelian > y.report.omega1_abelian;
                  return serialize_datum(x.representative) < serialize_datum(y.representative);
              });

    for (size_t i = 0; i < rep.classes.size(); ++i)
        for (size_t j = i + 1; j < rep.classes.size(); ++j)
            if (check_invariant_triple(rep.classes[i].representative,
                                       rep.classes[j].representative))
                rep.brauer_pairs.emplace_back(i, j);
    return rep;
}

std::string format_report_text(const ClassificationReport& rep) {
    std::ostringstream out;
    out << "classification p=" << rep.p << " r=" << rep.r << " n=" << rep.n << "\n";
    out << "b_candidates " << rep.b_candidates << "\n";
    out << "b_survivors " << rep.b_survivors << "\n";
    out << "b_orbits " << rep.b_orbit_count << "\n";
    out << "classes " << rep.classes.size() << "\n";
    for (size_t i = 0; i < rep.classes.size(); ++i) {
        const ClassRecord& c = rep.classes[i];
        out << "class " << (i + 1) << ": order " << c.representative.order()
            << " mho1 " << c.triple.mho1_order
            << " omega1 " << (c.representative.order() / c.triple.mho1_order)
            << " omega1_abelian " << (c.report.omega1_abelian ? "yes" : "no")
            << " exponent " << c.report.exponent
            << " conjugacy_classes " << c.class_count
            << " orbit_size " << c.orbit_size << "\n";
    }
    out << "brauer_pairs " << rep.brauer_pairs.size() << "\n";
    for (auto [i, j] : rep.brauer_pairs)
        out << "pair " << (i + 1) << " " << (j + 1) << "\n";
    return out.str();
}

std::string format_report_tsv(const ClassificationReport& rep) {
    std::ostringstream out;
    for (const ClassRecord& c : rep.classes) {
        out << rep.p << "\t" << rep.r << "\t" << rep.n << "\t" << c.triple.mho1_order
            << "\t" << (c.representative.order() / c.triple.mho1_order) << "\t"
            << (c.report.omega1_abelian ? "yes" : "no") << "\t" << c.report.exponent
            << "\t" << c.class_count << "\t" << c.orbit_size << "\n";
    }
    return out.str();
}

} // namespace caminalab
