// caminalab: exact computations with Camina p-groups of class 2.
//
// Subcommands: analyze, compare, construct, enumerate, chartable, selftest.
// Exit codes: 0 affirmative/success, 1 negative verdict, 2 usage or
// validation error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "caminalab/brauer.hpp"
#include "caminalab/char_table.hpp"
#include "caminalab/constructions.hpp"
#include "caminalab/datum_io.hpp"
#include "caminalab/enumerate.hpp"
#include "caminalab/selftest.hpp"

namespace {

using namespace caminalab;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;

GroupDatum load_or_exit(const std::string& path) {
    ParseResult res = parse_datum_file(path);
    if (!res) {
        std::cerr << "error: " << path << ": " << res.error << "\n";
        std::exit(kExitUsage);
    }
    return *res.datum;
}

uint64_t pow_u64(uint64_t base, uint32_t e) {
    uint64_t v = 1;
    for (uint32_t i = 0; i < e; ++i) v *= base;
    return v;
}

int cmd_analyze(const std::string& path) {
    GroupDatum g = load_or_exit(path);
    SubgroupReport rep = subgroup_report(g);
    bool camina = is_camina(g);

    std::cout << "p " << g.p << "\n";
    std::cout << "r " << g.r << "\n";
    std::cout << "n " << g.n << "\n";
    std::cout << "order " << g.order() << "\n";
    std::cout << "valid yes\n";
    std::cout << "camina " << (camina ? "yes" : "no") << "\n";
    bool oracle_sized = g.order() <= kExhaustiveGuard && g.order() <= 4096;
    if (oracle_sized)
        std::cout << "camina_oracle " << (is_camina_oracle(g) ? "yes" : "no") << "\n";
    std::cout << "exponent " << rep.exponent << "\n";
    std::cout << "derived_order " << pow_u64(g.p, rep.derived_dim) << "\n";
    std::cout << "center_order " << pow_u64(g.p, rep.center_dim) << "\n";
    std::cout << "mho1_order " << pow_u64(g.p, rep.mho1_dim) << "\n";
    std::cout << "omega1_order " << pow_u64(g.p, rep.omega1_log_order) << "\n";
    std::cout << "omega1_abelian " << (rep.omega1_abelian ? "yes" : "no") << "\n";
    std::cout << "index_omega1 " << pow_u64(g.p, g.r + g.n - rep.omega1_log_order) << "\n";
    if (oracle_sized)
        std::cout << "conjugacy_classes " << conjugacy_classes_oracle(g).size() << "\n";
    else if (camina)
        std::cout << "conjugacy_classes " << (pow_u64(g.p, g.n) + pow_u64(g.p, g.r) - 1)
                  << "\n";
    if (camina) {
        InvariantTriple t = invariant_triple(g);
        std::cout << "triple " << t.index_derived << " " << t.derived_order << " "
                  << t.mho1_order << "\n";
    }
    return kExitYes;
}

void print_bijection(const char* name, const std::vector<uint32_t>& f) {
    std::cout << name << ":";
    for (size_t i = 0; i < f.size(); ++i) std::cout << " " << (i + 1) << "->" << (f[i] + 1);
    std::cout << "\n";
}

struct CompareOutcome {
    bool applicable = true;
    bool verdict = false;
};

CompareOutcome run_triple(const GroupDatum& p, const GroupDatum& q) {
    bool v = check_invariant_triple(p, q);
    InvariantTriple tp = invariant_triple(p), tq = invariant_triple(q);
    std::cout << "triple P: " << tp.index_derived << " " << tp.derived_order << " "
              << tp.mho1_order << "\n";
    std::cout << "triple Q: " << tq.index_derived << " " << tq.derived_order << " "
              << tq.mho1_order << "\n";
    std::cout << "triple verdict: " << (v ? "condition holds" : "condition fails") << "\n";
    return {true, v};
}

CompareOutcome run_nenciu(const GroupDatum& p, const GroupDatum& q) {
    auto w = check_nenciu(p, q);
    if (w) {
        std::cout << "nenciu witness found\n";
        std::cout << "nenciu A " << format_matrix(w->a) << "\n";
        std::cout << "nenciu C " << format_matrix(w->c) << "\n";
    } else {
        std::cout << "nenciu witness: none (mho_1 orders differ)\n";
    }
    return {true, w.has_value()};
}

CompareOutcome run_direct(const GroupDatum& p, const GroupDatum& q, bool power_maps) {
    const char* tag = power_maps ? "direct" : "direct-nopow";
    auto w = check_direct(p, q, power_maps);
    if (w) {
        std::cout << tag << " witness found\n";
        print_bijection("rho", w->rho);
        print_bijection("tau", w->tau);
    } else {
        std::cout << tag << " witness: none\n";
    }
    return {true, w.has_value()};
}

CompareOutcome run_iso(const GroupDatum& p, const GroupDatum& q) {
    bool small = p.order() <= 1000;
    auto w = is_isomorphic(p, q, small);
    if (w) {
        std::cout << "isomorphic: yes\n";
        std::cout << "iso A " << format_matrix(w->a) << "\n";
        std::cout << "iso C " << format_matrix(w->c) << "\n";
        if (w->correction)
            std::cout << "iso correction: verified over " << p.order() << " elements\n";
    } else {
        std::cout << "isomorphic: no\n";
    }
    return {true, w.has_value()};
}

int cmd_compare(const std::string& path_p, const std::string& path_q,
                const std::string& method) {
    GroupDatum p = load_or_exit(path_p);
    GroupDatum q = load_or_exit(path_q);

    try {
        if (method == "triple") return run_triple(p, q).verdict ? kExitYes : kExitNo;
        if (method == "nenciu") return run_nenciu(p, q).verdict ? kExitYes : kExitNo;
        if (method == "direct") return run_direct(p, q, true).verdict ? kExitYes : kExitNo;
        if (method == "direct-nopow")
            return run_direct(p, q, false).verdict ? kExitYes : kExitNo;
        if (method == "iso") return run_iso(p, q).verdict ? kExitYes : kExitNo;

        // method == "all": run everything, cross-check agreement
        bool triple = run_triple(p, q).verdict;
        bool same_shape = p.r == q.r && p.n == q.n;
        bool nenciu = false, iso = false;
        if (same_shape) {
            nenciu = run_nenciu(p, q).verdict;
            iso = run_iso(p, q).verdict;
        } else {
            std::cout << "nenciu: skipped (parameter mismatch)\n";
            std::cout << "iso: skipped (parameter mismatch)\n";
        }
        bool direct = run_direct(p, q, true).verdict;
        bool direct_nopow = run_direct(p, q, false).verdict;

        if (same_shape && (triple != nenciu || triple != direct)) {
            std::cerr << "error: methods disagree (triple=" << triple
                      << " nenciu=" << nenciu << " direct=" << direct << ")\n";
            return kExitUsage;
        }
        if (direct_nopow != same_shape) {
            std::cerr << "error: table-only match disagrees with the shape criterion\n";
            return kExitUsage;
        }
        if (iso && !triple) {
            std::cerr << "error: isomorphic groups failed the invariant condition\n";
            return kExitUsage;
        }
        std::cout << "brauer condition: " << (triple ? "holds" : "fails") << "\n";
        if (triple)
            std::cout << "brauer pair: " << (iso ? "no (isomorphic)" : "yes") << "\n";
        return triple ? kExitYes : kExitNo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_construct(const std::string& family, uint32_t p, uint32_t m, int mu_rank) {
    try {
        GroupDatum g;
        if (family == "extraspecial-p" || family == "extraspecial-p2") {
            if (mu_rank >= 0) {
                std::cerr << "error: --mu-rank applies to --family field only\n";
                return kExitUsage;
            }
            g = extraspecial(p, m,
                             family == "extraspecial-p" ? ExtraspecialVariant::ExponentP
                                                        : ExtraspecialVariant::ExponentP2);
        } else if (family == "field") {
            g = field_camina(p, m);
            if (mu_rank > 0) g = with_mu(g, canonical_mu(g.n, g.r, uint32_t(mu_rank)));
        } else {
            std::cerr << "error: unknown family '" << family << "'\n";
            return kExitUsage;
        }
        std::cout << serialize_datum(g);
        return kExitYes;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_enumerate(uint32_t p, uint32_t r, uint32_t n, unsigned jobs,
                  const std::string& format, const std::string& out_dir, bool scan_only) {
    try {
        if (scan_only) {
            std::vector<uint64_t> survivors = scan_camina_b(p, r, n, jobs);
            std::cout << "scan p=" << p << " r=" << r << " n=" << n << "\n";
            std::cout << "b_candidates " << pow_u64(p, r * (r - 1) / 2 * n) << "\n";
            std::cout << "b_survivors " << survivors.size() << "\n";
            return kExitYes;
        }
        ClassificationReport rep = classify(p, r, n, jobs);
        std::cout << (format == "tsv" ? format_report_tsv(rep) : format_report_text(rep));
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            for (size_t i = 0; i < rep.classes.size(); ++i) {
                std::ostringstream name;
                name << "rep_" << (i + 1) << ".datum";
                std::ofstream out(std::filesystem::path(out_dir) / name.str());
                out << serialize_datum(rep.classes[i].representative);
            }
        }
        return kExitYes;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_chartable(const std::string& path, const std::string& format) {
    GroupDatum g = load_or_exit(path);
    if (!is_camina(g)) {
        std::cerr << "error: datum is not Camina, no character table of this shape\n";
        return kExitUsage;
    }
    CharacterTable t = build_table(g);
    const char* sep = format == "tsv" ? "\t" : " ";

    std::cout << "caminalab-chartable\n";
    std::cout << "p " << t.p << "\n";
    std::cout << "r " << t.r << "\n";
    std::cout << "n " << t.n << "\n";
    std::cout << "order " << t.group_order << "\n";
    std::cout << "classes " << t.classes.size() << "\n";
    std::cout << "chars " << t.chars.size() << "\n";
    for (size_t c = 0; c < t.classes.size(); ++c)
        std::cout << "class" << sep << (c + 1) << sep << t.classes[c].to_string() << sep
                  << "size" << sep << t.class_sizes[c] << "\n";
    for (size_t x = 0; x < t.chars.size(); ++x)
        std::cout << "char" << sep << (x + 1) << sep << t.chars[x].to_string() << sep
                  << "degree" << sep << t.values[x][0].coeffs()[0] << "\n";
    std::cout << "values\n";
    for (size_t x = 0; x < t.chars.size(); ++x) {
        for (size_t c = 0; c < t.classes.size(); ++c)
            std::cout << (c ? sep : "") << t.values[x][c].to_string();
        std::cout << "\n";
    }
    std::cout << "powermaps\n";
    for (size_t k = 0; k < t.power_maps.size(); ++k)
        for (size_t c = 0; c < t.classes.size(); ++c)
            std::cout << "powermap" << sep << k << sep << t.classes[c].to_string() << sep
                      << "->" << sep << t.classes[t.power_maps[k][c]].to_string() << "\n";
    return kExitYes;
}

int cmd_selftest(const std::string& level, unsigned jobs, bool inject_fault) {
    std::vector<selftest::CheckLine> lines;
    if (level == "quick") {
        lines = selftest::run_quick(inject_fault);
    } else if (level == "full") {
        if (inject_fault) {
            std::cerr << "error: --inject-fault applies to --level quick only\n";
            return kExitUsage;
        }
        lines = selftest::run_full(jobs);
    } else {
        std::cerr << "error: unknown level '" << level << "'\n";
        return kExitUsage;
    }
    return selftest::report(lines, std::cout);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with Camina p-groups of nilpotence class 2"};
    app.require_subcommand(1);

    std::string path, path_q, method = "all", family, format = "text", out_dir, level = "quick";
    uint32_t p = 3, r = 2, n = 1, m = 1;
    int mu_rank = -1;
    unsigned jobs = 1;
    bool scan_only = false, inject_fault = false;

    CLI::App* analyze = app.add_subcommand("analyze", "invariants of one datum file");
    analyze->add_option("file", path, "datum file")->required();

    CLI::App* compare = app.add_subcommand("compare", "compare two datum files");
    compare->add_option("fileP", path, "first datum file")->required();
    compare->add_option("fileQ", path_q, "second datum file")->required();
    compare->add_option("--method", method,
                        "triple | nenciu | direct | direct-nopow | iso | all")
        ->check(CLI::IsMember({"triple", "nenciu", "direct", "direct-nopow", "iso", "all"}));

    CLI::App* construct = app.add_subcommand("construct", "emit a canonical family datum");
    construct->add_option("--family", family, "extraspecial-p | extraspecial-p2 | field")
        ->required();
    construct->add_option("--p", p, "odd prime")->required();
    construct->add_option("--m", m, "half-rank parameter")->required();
    construct->add_option("--mu-rank", mu_rank, "power-map rank (family field)");

    CLI::App* enumerate = app.add_subcommand("enumerate", "classify all Camina data");
    enumerate->add_option("--p", p, "odd prime")->required();
    enumerate->add_option("--r", r, "rank of G/G'")->required();
    enumerate->add_option("--n", n, "rank of the center")->required();
    enumerate->add_option("--jobs", jobs, "worker threads (output is identical for any value)");
    enumerate->add_option("--format", format, "text | tsv")
        ->check(CLI::IsMember({"text", "tsv"}));
    enumerate->add_option("--out-dir", out_dir, "write each representative as a datum file");
    enumerate->add_flag("--scan-only", scan_only, "survivor statistics only, no classification");

    CLI::App* chartable = app.add_subcommand("chartable", "character table dump");
    chartable->add_option("file", path, "datum file")->required();
    chartable->add_option("--format", format, "text | tsv")
        ->check(CLI::IsMember({"text", "tsv"}));

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the built-in checks");
    selftest_cmd->add_option("--level", level, "quick | full")
        ->check(CLI::IsMember({"quick", "full"}));
    selftest_cmd->add_option("--jobs", jobs, "worker threads for the full level");
    selftest_cmd->add_flag("--inject-fault", inject_fault,
                           "test hook: perturb one table value (level quick)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(path);
        if (app.got_subcommand(compare)) return cmd_compare(path, path_q, method);
        if (app.got_subcommand(construct)) return cmd_construct(family, p, m, mu_rank);
        if (app.got_subcommand(enumerate))
            return cmd_enumerate(p, r, n, jobs, format, out_dir, scan_only);
        if (app.got_subcommand(chartable)) return cmd_chartable(path, format);
        if (app.got_subcommand(selftest_cmd)) return cmd_selftest(level, jobs, inject_fault);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
