#include "caminalab/datum_io.hpp"

#include <fstream>
#include <sstream>

namespace caminalab {

std::string serialize_datum(const GroupDatum& g) {
    std::ostringstream out;
    out << "caminalab 1\n";
    out << "p " << g.p << "\n";
    out << "r " << g.r << "\n";
    out << "n " << g.n << "\n";
    for (uint32_t i = 1; i < g.r; ++i)
        for (uint32_t j = 0; j < i; ++j) {
            out << "B " << (i + 1) << " " << (j + 1);
            for (uint32_t t = 0; t < g.n; ++t)
                out << " " << g.b[GroupDatum::pair_index(i, j)][t];
            out << "\n";
        }
    for (uint32_t c = 0; c < g.r; ++c) {
        out << "mu " << (c + 1);
        for (uint32_t t = 0; t < g.n; ++t) out << " " << g.mu.at(t, c);
        out << "\n";
    }
    return out.str();
}

namespace {

std::string fail(int line, const std::string& msg) {
    return "line " + std::to_string(line) + ": " + msg;
}

} // namespace

ParseResult parse_datum(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    std::optional<uint32_t> p, r, n;
    GroupDatum g;
    bool dims_ready = false;

    auto ensure_dims = [&]() -> bool {
        if (dims_ready) return true;
        if (!p || !r || !n) return false;
        g.p = *p;
        g.r = *r;
        g.n = *n;
        g.b.assign(g.pair_count(), FpVec(g.n, 0));
        g.mu = FpMat(g.n, g.r);
        dims_ready = true;
        return true;
    };

    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue; // blank or comment-only

        if (!header_seen) {
            int version = 0;
            if (key != "caminalab" || !(ls >> version))
                return {std::nullopt, fail(lineno, "expected header 'caminalab 1'")};
            if (version != 1)
                return {std::nullopt, fail(lineno, "unsupported format version")};
            header_seen = true;
            continue;
        }

        if (key == "p" || key == "r" || key == "n") {
            long long v = -1;
            if (!(ls >> v) || v < 0)
                return {std::nullopt, fail(lineno, "expected a nonnegative integer after '" + key + "'")};
            if (key == "p") p = uint32_t(v);
            if (key == "r") r = uint32_t(v);
            if (key == "n") n = uint32_t(v);
        } else if (key == "B") {
            if (!ensure_dims())
                return {std::nullopt, fail(lineno, "B line before p, r, n are all set")};
            long long i = 0, j = 0;
            if (!(ls >> i >> j) || i < 1 || j < 1 || uint32_t(i) > g.r || uint32_t(j) > g.r)
                return {std::nullopt, fail(lineno, "B indices out of range 1..r")};
            if (i <= j)
                return {std::nullopt, fail(lineno, "B requires i > j")};
            FpVec v(g.n);
            for (uint32_t t = 0; t < g.n; ++t) {
                long long c = -1;
                if (!(ls >> c) || c < 0)
                    return {std::nullopt, fail(lineno, "B expects " + std::to_string(g.n) + " coordinates")};
                if (uint64_t(c) >= g.p)
                    return {std::nullopt, fail(lineno, "B coordinate not reduced mod p")};
                v[t] = uint32_t(c);
            }
            std::string extra;
            if (ls >> extra) return {std::nullopt, fail(lineno, "trailing tokens on B line")};
            g.b[GroupDatum::pair_index(uint32_t(i) - 1, uint32_t(j) - 1)] = std::move(v);
        } else if (key == "mu") {
            if (!ensure_dims())
                return {std::nullopt, fail(lineno, "mu line before p, r, n are all set")};
            long long i = 0;
            if (!(ls >> i) || i < 1 || uint32_t(i) > g.r)
                return {std::nullopt, fail(lineno, "mu index out of range 1..r")};
            for (uint32_t t = 0; t < g.n; ++t) {
                long long c = -1;
                if (!(ls >> c) || c < 0)
                    return {std::nullopt, fail(lineno, "mu expects " + std::to_string(g.n) + " coordinates")};
                if (uint64_t(c) >= g.p)
                    return {std::nullopt, fail(lineno, "mu coordinate not reduced mod p")};
                g.mu.at(t, uint32_t(i) - 1) = uint32_t(c);
            }
            std::string extra;
            if (ls >> extra) return {std::nullopt, fail(lineno, "trailing tokens on mu line")};
        } else {
            return {std::nullopt, fail(lineno, "unknown directive '" + key + "'")};
        }
    }

    if (!header_seen) return {std::nullopt, "line 1: empty input, expected header 'caminalab 1'"};
    if (!ensure_dims()) return {std::nullopt, "line " + std::to_string(lineno) + ": missing p, r, or n"};
    ValidationResult v = validate(g);
    if (!v) return {std::nullopt, "line " + std::to_string(lineno) + ": invalid datum: " + v.error};
    return {std::move(g), ""};
}

ParseResult parse_datum_string(const std::string& text) {
    std::istringstream in(text);
    return parse_datum(in);
}

ParseResult parse_datum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {std::nullopt, "cannot open " + path};
    return parse_datum(in);
}

std::string format_matrix(const FpMat& m) {
    std::ostringstream out;
    out << m.rows << "x" << m.cols << ":";
    for (uint32_t i = 0; i < m.rows; ++i)
        for (uint32_t j = 0; j < m.cols; ++j) out << " " << m.at(i, j);
    return out.str();
}

} // namespace caminalab
