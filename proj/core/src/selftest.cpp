#include "caminalab/selftest.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "caminalab/brauer.hpp"
#include "caminalab/char_table.hpp"
#include "caminalab/constructions.hpp"
#include "caminalab/datum_io.hpp"
#include "caminalab/enumerate.hpp"
#include "caminalab/group.hpp"

namespace caminalab::selftest {

namespace {

uint64_t pow_u64(uint64_t base, uint32_t e) {
    uint64_t v = 1;
    for (uint32_t i = 0; i < e; ++i) v *= base;
    return v;
}

Element random_element(const GroupDatum& g, Splitmix64& rng) {
    Element x{FpVec(g.r), FpVec(g.n)};
    for (uint32_t i = 0; i < g.r; ++i) x.e[i] = rng.below(g.p);
    for (uint32_t t = 0; t < g.n; ++t) x.z[t] = rng.below(g.p);
    return x;
}

// class index lookup against build_table ordering
size_t table_class_of(const CharacterTable& t, const GroupDatum& g, const Element& x) {
    ClassLabel want;
    if (is_identity(x)) {
        want = {ClassLabel::Kind::Identity, {}};
    } else if (vec_is_zero(x.e)) {
        want = {ClassLabel::Kind::Central, x.z};
    } else {
        want = {ClassLabel::Kind::Noncentral, x.e};
    }
    auto it = std::find(t.classes.begin(), t.classes.end(), want);
    (void)g;
    return size_t(it - t.classes.begin());
}

struct Suite {
    std::vector<CheckLine> lines;

    void check(const std::string& name, bool pass, const std::string& detail = "") {
        lines.push_back({name, pass, detail});
    }
};

// ------------------------------------------------------------------ quick

void quick_field_laws(Suite& s) {
    bool ok = true;
    std::ostringstream why;
    for (uint32_t p : {3u, 5u, 7u}) {
        Splitmix64 rng{p * 977u};
        for (int i = 0; i < 200 && ok; ++i) {
            uint32_t a = rng.below(p), b = rng.below(p), c = rng.below(p);
            if (fp_mul(a, fp_add(b, c, p), p) !=
                fp_add(fp_mul(a, b, p), fp_mul(a, c, p), p)) {
                ok = false;
                why << "distributivity fails mod " << p;
            }
            if (a != 0 && fp_mul(a, fp_inv(a, p), p) != 1) {
                ok = false;
                why << "inverse fails mod " << p;
            }
        }
    }
    s.check("prime-field laws", ok, why.str());
}

void quick_cyclotomic(Suite& s) {
    const uint32_t p = 3;
    Cyclotomic one_plus_z = Cyclotomic::integer(p, 1) + Cyclotomic::zeta_pow(p, 1);
    bool ok = (one_plus_z * one_plus_z == Cyclotomic::zeta_pow(p, 1));
    Cyclotomic conj_z = Cyclotomic::zeta_pow(p, 1).conj();
    Cyclotomic minus_one_minus_z =
        -(Cyclotomic::integer(p, 1) + Cyclotomic::zeta_pow(p, 1));
    ok = ok && (conj_z == minus_one_minus_z);

    Splitmix64 rng{42};
    for (int i = 0; i < 100 && ok; ++i) {
        auto rand_cyc = [&](uint32_t pr) {
            Cyclotomic v = Cyclotomic::integer(pr, int64_t(rng.next() % 21) - 10);
            for (uint32_t k = 1; k + 1 < pr; ++k)
                v = v + Cyclotomic::zeta_pow(pr, k).scaled(int64_t(rng.next() % 21) - 10);
            return v;
        };
        uint32_t pr = (i % 2) ? 3 : 5;
        Cyclotomic x = rand_cyc(pr), y = rand_cyc(pr), z = rand_cyc(pr);
        ok = ok && ((x * y) * z == x * (y * z)) && (x * (y + z) == x * y + x * z) &&
             ((x * y).conj() == x.conj() * y.conj());
    }
    s.check("cyclotomic ring laws", ok);
}

void quick_group_laws(Suite& s) {
    bool ok = true;
    std::ostringstream why;
    std::vector<GroupDatum> data;
    data.push_back(extraspecial(3, 1, ExtraspecialVariant::ExponentP));
    data.push_back(extraspecial(3, 1, ExtraspecialVariant::ExponentP2));
    data.push_back(field_camina(3, 2));
    for (int i = 0; i < 6; ++i) data.push_back(random_datum(3, 3, 2, 100 + i, false));
    for (int i = 0; i < 4; ++i) data.push_back(random_datum(5, 2, 2, 200 + i, false));

    for (const GroupDatum& g : data) {
        if (!validate(g)) {
            ok = false;
            why << "constructed datum failed validation";
            break;
        }
        Splitmix64 rng{g.p + 31 * g.r};
        for (int i = 0; i < 300 && ok; ++i) {
            Element x = random_element(g, rng), y = random_element(g, rng),
                    z = random_element(g, rng);
            if (!(multiply(g, multiply(g, x, y), z) == multiply(g, x, multiply(g, y, z)))) {
                ok = false;
                why << "associativity fails";
            }
            if (!(multiply(g, x, inverse(g, x)) == identity_element(g))) {
                ok = false;
                why << "inverse law fails";
            }
            // closed-form commutator against the word form
            Element word = multiply(
                g, inverse(g, x), multiply(g, inverse(g, y), multiply(g, x, y)));
            if (!(commutator(g, x, y) == word)) {
                ok = false;
                why << "commutator closed form disagrees with the word form";
            }
            // nu laws
            Element xp = power(g, x, g.p);
            if (!vec_is_zero(xp.e) || !(xp.z == nu(g, x))) {
                ok = false;
                why << "p-th power is not (0, mu e)";
            }
            if (!(nu(g, multiply(g, x, y)) == vec_add(nu(g, x), nu(g, y), g.p))) {
                ok = false;
                why << "nu is not additive";
            }
        }
        if (!ok) break;
    }
    s.check("group laws (associativity, inverses, commutators, nu)", ok, why.str());
}

void quick_orthogonality(Suite& s, bool inject_fault) {
    bool ok = true;
    std::string why;
    std::vector<GroupDatum> data;
    data.push_back(extraspecial(3, 1, ExtraspecialVariant::ExponentP));
    data.push_back(extraspecial(3, 1, ExtraspecialVariant::ExponentP2));
    data.push_back(extraspecial(3, 2, ExtraspecialVariant::ExponentP));
    for (size_t i = 0; i < data.size() && ok; ++i) {
        CharacterTable t = build_table(data[i]);
        if (i == 0 && inject_fault)
            t.values[t.chars.size() - 1][1] =
                t.values[t.chars.size() - 1][1] + Cyclotomic::integer(t.p, 1);
        std::string failure;
        if (!check_orthogonality(t, &failure)) {
            ok = false;
            why = failure;
        }
    }
    s.check("orthogonality", ok, why);
}

void quick_induction(Suite& s) {
    GroupDatum g = extraspecial(3, 1, ExtraspecialVariant::ExponentP);
    CharacterTable t = build_table(g);
    FpVec lambda{1};
    std::vector<Cyclotomic> induced = induced_from_center_oracle(g, lambda);
    size_t row = 0;
    for (size_t x = 0; x < t.chars.size(); ++x)
        if (t.chars[x].kind == CharLabel::Kind::Nonlinear && t.chars[x].vec == lambda) row = x;
    bool ok = true;
    for (size_t c = 0; c < t.classes.size() && ok; ++c)
        ok = induced[c] == t.values[row][c].scaled(3);
    ok = ok && inner_product(induced, induced, t.class_sizes, t.group_order) == 9;
    s.check("induced-character oracle", ok);
}

void quick_camina_agreement(Suite& s) {
    bool ok = true;
    std::ostringstream why;
    int tested = 0;
    for (int i = 0; i < 36 && ok; ++i) {
        uint32_t r = 2 + (i % 3);       // 2, 3, 4
        uint32_t n = 1 + (i % 2);       // 1, 2
        if (r + n > 5) n = 1;
        GroupDatum g = random_datum(3, r, n, 5000 + i, false);
        if (is_camina(g) != is_camina_oracle(g)) {
            ok = false;
            why << "disagreement at r=" << r << " n=" << n << " seed=" << (5000 + i);
        }
        ++tested;
    }
    GroupDatum fc = field_camina(3, 2);
    if (ok && (!is_camina(fc) || !is_camina_oracle(fc))) {
        ok = false;
        why << "field datum not recognized";
    }
    s.check("Camina predicate vs oracle (" + std::to_string(tested) + " samples)", ok,
            why.str());
}

void quick_roundtrip(Suite& s) {
    bool ok = true;
    std::vector<GroupDatum> data;
    data.push_back(extraspecial(3, 2, ExtraspecialVariant::ExponentP2));
    data.push_back(field_camina(3, 2));
    data.push_back(random_datum(5, 3, 2, 77, false));
    for (const GroupDatum& g : data) {
        ParseResult back = parse_datum_string(serialize_datum(g));
        ok = ok && back && *back.datum == g &&
             serialize_datum(*back.datum) == serialize_datum(g);
    }
    s.check("datum serialization round-trip", ok);
}

// ------------------------------------------------------------------ full

struct Classifications {
    ClassificationReport c321, c341, c342;
};

void criterion_1(Suite& s, const Classifications& cl) {
    const ClassificationReport& rep = cl.c342;
    std::map<uint64_t, int> mho_dist;
    int nonabelian_9 = 0;
    for (const ClassRecord& c : rep.classes) {
        ++mho_dist[c.triple.mho1_order];
        if (c.triple.mho1_order == 9 && !c.report.omega1_abelian) ++nonabelian_9;
    }
    bool ok = rep.classes.size() == 6 && mho_dist[1] == 1 && mho_dist[3] == 1 &&
              mho_dist[9] == 4 && nonabelian_9 == 1;
    std::ostringstream detail;
    detail << rep.classes.size() << " classes, mho distribution {1:" << mho_dist[1]
           << ", 3:" << mho_dist[3] << ", 9:" << mho_dist[9] << "}, " << nonabelian_9
           << " nonabelian-omega1 class(es) among mho=9";
    s.check("criterion 1: order-3^6 classification (6 classes, {1,3,9x4}, one nonabelian omega1)",
            ok, detail.str());
}

void criterion_2(Suite& s, const Classifications& cl) {
    auto exponents = [](const ClassificationReport& rep) {
        std::multiset<uint32_t> e;
        for (const ClassRecord& c : rep.classes) e.insert(c.report.exponent);
        return e;
    };
    bool ok = cl.c321.classes.size() == 2 && cl.c341.classes.size() == 2 &&
              exponents(cl.c321) == std::multiset<uint32_t>{3, 9} &&
              exponents(cl.c341) == std::multiset<uint32_t>{3, 9};
    std::ostringstream detail;
    detail << "(3,2,1): " << cl.c321.classes.size() << " classes, (3,4,1): "
           << cl.c341.classes.size() << " classes";
    s.check("criterion 2: extraspecial classifications have exactly 2 classes", ok,
            detail.str());
}

void criteria_3_and_4(Suite& s, const Classifications& cl) {
    bool agree = true;       // triple == nenciu == direct(with power maps)
    bool table_only = true;  // direct without power maps always succeeds
    bool pairs_exact = true; // Brauer pairs are exactly the mho=9 quadruple
    std::ostringstream detail;
    int checked_pairs = 0, brauer_found = 0;

    for (const ClassificationReport* rep : {&cl.c321, &cl.c341, &cl.c342}) {
        const auto& cls = rep->classes;
        for (size_t i = 0; i < cls.size(); ++i)
            for (size_t j = i + 1; j < cls.size(); ++j) {
                const GroupDatum& gp = cls[i].representative;
                const GroupDatum& gq = cls[j].representative;
                ++checked_pairs;
                bool triple = check_invariant_triple(gp, gq);
                bool nenciu = check_nenciu(gp, gq).has_value();
                bool direct = check_direct(gp, gq, true).has_value();
                if (triple != nenciu || triple != direct) {
                    agree = false;
                    detail << " disagreement at pair (" << i << "," << j << ") order "
                           << gp.order() << ";";
                }
                if (!check_direct(gp, gq, false).has_value()) table_only = false;
                bool expected_pair = cls[i].triple.mho1_order == 9 &&
                                     cls[j].triple.mho1_order == 9 && rep == &cl.c342;
                if (triple != expected_pair) pairs_exact = false;
                if (triple) {
                    ++brauer_found;
                    if (is_isomorphic(gp, gq).has_value()) pairs_exact = false;
                }
            }
    }
    std::ostringstream d3;
    d3 << checked_pairs << " pairs checked, " << brauer_found
       << " Brauer pairs found (expect 6, all in the mho=9 quadruple)" << detail.str();
    s.check("criterion 3: three methods agree; pairs are exactly the mho=9 quadruple",
            agree && pairs_exact && brauer_found == 6, d3.str());
    s.check("criterion 4: table-only matching succeeds for every same-shape pair",
            table_only, std::to_string(checked_pairs) + " pairs");
}

void criterion_5(Suite& s, const Classifications& cl) {
    bool ok = true;
    std::ostringstream why;
    for (const ClassificationReport* rep : {&cl.c321, &cl.c341, &cl.c342}) {
        for (const ClassRecord& c : rep->classes) {
            const GroupDatum& g = c.representative;
            if (g.order() > 729) continue;
            CharacterTable t = build_table(g);
            std::string failure;
            if (!check_orthogonality(t, &failure)) {
                ok = false;
                why << "orthogonality: " << failure << ";";
                break;
            }
            uint64_t expected = pow_u64(g.p, g.n) + pow_u64(g.p, g.r) - 1;
            if (t.classes.size() != expected ||
                conjugacy_classes_oracle(g).size() != expected) {
                ok = false;
                why << "class count mismatch at order " << g.order() << ";";
                break;
            }
            int64_t degree = int64_t(pow_u64(g.p, g.r / 2));
            for (size_t x = 0; x < t.chars.size() && ok; ++x) {
                if (t.chars[x].kind != CharLabel::Kind::Nonlinear) continue;
                std::vector<Cyclotomic> induced =
                    induced_from_center_oracle(g, t.chars[x].vec);
                for (size_t cc = 0; cc < t.classes.size(); ++cc)
                    if (!(induced[cc] == t.values[x][cc].scaled(degree))) {
                        ok = false;
                        why << "induced row mismatch at order " << g.order() << ";";
                        break;
                    }
                if (ok && inner_product(t.values[x], t.values[x], t.class_sizes,
                                        t.group_order) != 1) {
                    ok = false;
                    why << "nonlinear character has norm != 1;";
                }
            }
            if (!ok) break;
        }
    }
    s.check("criterion 5: orthogonality, induction oracle, and class counts (all reps <= 729)",
            ok, why.str());
}

void criterion_6(Suite& s) {
    bool ok = true;
    std::ostringstream why;
    const std::vector<std::tuple<uint32_t, uint32_t, uint32_t>> params = {
        {3, 2, 1}, {3, 4, 1}, {3, 4, 2}, {5, 2, 1}, {5, 4, 1}, {5, 4, 2}};
    int data_count = 0;
    uint64_t samples = 0;
    for (int round = 0; round < 9 && ok; ++round)
        for (const auto& [p, r, n] : params) {
            GroupDatum g = random_datum(p, r, n, 9000 + round * 31 + p + r + n, true);
            ++data_count;
            Splitmix64 rng{uint64_t(round) * 7919 + p};
            for (int i = 0; i < 100 && ok; ++i) {
                Element x = random_element(g, rng), y = random_element(g, rng);
                Element xp = power(g, x, g.p);
                if (!vec_is_zero(xp.e) || !(xp.z == mat_apply(g.mu, x.e, g.p))) {
                    ok = false;
                    why << "power(x, p) != (0, mu e) at p=" << p;
                }
                if (!(nu(g, multiply(g, x, y)) == vec_add(nu(g, x), nu(g, y), g.p))) {
                    ok = false;
                    why << "nu(xy) != nu(x) + nu(y) at p=" << p;
                }
                samples += 2;
            }
            // index identity |G : Omega_1| = |mho_1| by exhaustive count
            uint64_t order = g.order();
            uint64_t omega = 0;
            std::set<FpVec> mho;
            for (uint64_t code = 0; code < order && ok; ++code) {
                Element x = decode_element(g, uint32_t(code));
                Element xp = power(g, x, g.p);
                if (is_identity(xp)) ++omega;
                mho.insert(xp.z);
            }
            if (ok && order / omega != mho.size()) {
                ok = false;
                why << "index identity fails at p=" << p << " r=" << r << " n=" << n;
            }
        }
    std::ostringstream detail;
    detail << data_count << " Camina data, " << samples << " sampled laws" << why.str();
    s.check("criterion 6: nu-map laws and the index identity on seeded Camina data", ok,
            detail.str());
}

void criterion_7(Suite& s) {
    bool ok = true;
    std::ostringstream why;
    const std::vector<std::pair<uint32_t, uint32_t>> shapes = {
        {2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {2, 3}, {1, 1}, {3, 3}, {2, 4}};
    int tested = 0;
    for (int i = 0; i < 500 && ok; ++i) {
        auto [r, n] = shapes[i % shapes.size()];
        GroupDatum g = random_datum(3, r, n, 40000 + i, false);
        if (is_camina(g) != is_camina_oracle(g)) {
            ok = false;
            why << "disagreement at seed " << (40000 + i) << " r=" << r << " n=" << n;
        }
        ++tested;
    }
    if (ok) {
        std::vector<GroupDatum> families;
        for (uint32_t p : {3u, 5u}) {
            families.push_back(extraspecial(p, 1, ExtraspecialVariant::ExponentP));
            families.push_back(extraspecial(p, 1, ExtraspecialVariant::ExponentP2));
            families.push_back(field_camina(p, 1));
        }
        families.push_back(extraspecial(3, 2, ExtraspecialVariant::ExponentP));
        families.push_back(extraspecial(3, 2, ExtraspecialVariant::ExponentP2));
        families.push_back(field_camina(3, 2));
        families.push_back(with_mu(field_camina(3, 2), canonical_mu(2, 4, 1)));
        families.push_back(with_mu(field_camina(3, 2), canonical_mu(2, 4, 2)));
        for (const GroupDatum& g : families)
            if (!is_camina(g) || !is_camina_oracle(g)) {
                ok = false;
                why << "constructed family not recognized as Camina";
            }
    }
    s.check("criterion 7: is_camina agrees with the exhaustive oracle (" +
                std::to_string(tested) + " random data + families)",
            ok, why.str());
}

void criterion_8(Suite& s, const Classifications& cl) {
    bool ok = true;
    std::ostringstream why;
    for (const ClassificationReport* rep : {&cl.c321, &cl.c341, &cl.c342}) {
        for (const ClassRecord& c : rep->classes) {
            const GroupDatum& g = c.representative;
            if (g.order() > 729) continue;
            CharacterTable t = build_table(g);
            const std::vector<uint32_t>& pi_p = t.power_maps[g.p];

            // structural form of pi_p on the labels
            for (size_t cc = 0; cc < t.classes.size() && ok; ++cc) {
                const ClassLabel& label = t.classes[cc];
                if (label.kind == ClassLabel::Kind::Central) {
                    if (t.classes[pi_p[cc]].kind != ClassLabel::Kind::Identity) {
                        ok = false;
                        why << "pi_p(central) is not the identity class;";
                    }
                } else if (label.kind == ClassLabel::Kind::Noncentral) {
                    FpVec image = mat_apply(g.mu, label.vec, g.p);
                    const ClassLabel& target = t.classes[pi_p[cc]];
                    bool good = vec_is_zero(image)
                                    ? target.kind == ClassLabel::Kind::Identity
                                    : (target.kind == ClassLabel::Kind::Central &&
                                       target.vec == image);
                    if (!good) {
                        ok = false;
                        why << "pi_p(noncentral e) is not the class of (0, mu e);";
                    }
                }
            }

            // elementwise exhaustive powering against the class maps
            for (uint64_t code = 0; code < g.order() && ok; ++code) {
                Element x = decode_element(g, uint32_t(code));
                Element xp = power(g, x, g.p);
                size_t from = table_class_of(t, g, x);
                size_t to = table_class_of(t, g, xp);
                if (pi_p[from] != to) {
                    ok = false;
                    why << "pi_p disagrees with elementwise powering at order "
                        << g.order() << ";";
                }
            }
            if (!ok) break;
        }
    }
    s.check("criterion 8: power map pi_p verified against exhaustive powering", ok,
            why.str());
}

} // namespace

std::vector<CheckLine> run_quick(bool inject_fault) {
    Suite s;
    quick_field_laws(s);
    quick_cyclotomic(s);
    quick_group_laws(s);
    quick_orthogonality(s, inject_fault);
    quick_induction(s);
    quick_camina_agreement(s);
    quick_roundtrip(s);
    return s.lines;
}

std::vector<CheckLine> run_full(unsigned jobs) {
    Suite s;
    Classifications cl{classify(3, 2, 1, jobs), classify(3, 4, 1, jobs),
                       classify(3, 4, 2, jobs)};
    criterion_1(s, cl);
    criterion_2(s, cl);
    criteria_3_and_4(s, cl);
    criterion_5(s, cl);
    criterion_6(s);
    criterion_7(s);
    criterion_8(s, cl);
    return s.lines;
}

int report(const std::vector<CheckLine>& lines, std::ostream& out) {
    int failures = 0;
    for (const CheckLine& line : lines) {
        out << (line.pass ? "[PASS] " : "[FAIL] ") << line.name;
        if (!line.detail.empty()) out << " | " << line.detail;
        out << "\n";
        if (!line.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}

} // namespace caminalab::selftest
