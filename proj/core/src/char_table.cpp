#include "caminalab/char_table.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace caminalab {

std::string ClassLabel::to_string() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Identity: out << "identity"; break;
        case Kind::Central: out << "central"; break;
        case Kind::Noncentral: out << "noncentral"; break;
    }
    for (uint32_t v : vec) out << " " << v;
    return out.str();
}

std::string CharLabel::to_string() const {
    std::ostringstream out;
    out << (kind == Kind::Linear ? "linear" : "nonlinear");
    for (uint32_t v : vec) out << " " << v;
    return out.str();
}

namespace {

// all vectors of dim d over F_p in lex order (ascending codes)
std::vector<FpVec> all_vectors(uint32_t d, uint32_t p) {
    uint64_t count = 1;
    for (uint32_t i = 0; i < d; ++i) count *= p;
    std::vector<FpVec> out;
    out.reserve(count);
    for (uint64_t code = 0; code < count; ++code) {
        FpVec v(d);
        uint64_t c = code;
        for (uint32_t i = d; i > 0; --i) {
            v[i - 1] = uint32_t(c % p);
            c /= p;
        }
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

Element CharacterTable::class_representative(size_t c, const GroupDatum& g) const {
    const ClassLabel& label = classes[c];
    Element x = identity_element(g);
    switch (label.kind) {
        case ClassLabel::Kind::Identity: break;
        case ClassLabel::Kind::Central: x.z = label.vec; break;
        case ClassLabel::Kind::Noncentral: x.e = label.vec; break;
    }
    return x;
}

CharacterTable build_table(const GroupDatum& g) {
    if (!is_camina(g)) throw std::invalid_argument("build_table: datum is not Camina");

    CharacterTable t;
    t.p = g.p;
    t.r = g.r;
    t.n = g.n;
    t.m = g.r / 2;
    t.group_order = g.order();

    t.classes.push_back({ClassLabel::Kind::Identity, {}});
    for (const FpVec& z : all_vectors(g.n, g.p))
        if (!vec_is_zero(z)) t.classes.push_back({ClassLabel::Kind::Central, z});
    for (const FpVec& e : all_vectors(g.r, g.p))
        if (!vec_is_zero(e)) t.classes.push_back({ClassLabel::Kind::Noncentral, e});

    for (const FpVec& sigma : all_vectors(g.r, g.p))
        t.chars.push_back({CharLabel::Kind::Linear, sigma});
    for (const FpVec& lambda : all_vectors(g.n, g.p))
        if (!vec_is_zero(lambda)) t.chars.push_back({CharLabel::Kind::Nonlinear, lambda});

    uint64_t pn = 1;
    for (uint32_t i = 0; i < g.n; ++i) pn *= g.p;
    int64_t degree_nl = 1;
    for (uint32_t i = 0; i < t.m; ++i) degree_nl *= g.p;

    t.class_sizes.resize(t.classes.size());
    for (size_t c = 0; c < t.classes.size(); ++c)
        t.class_sizes[c] = t.classes[c].kind == ClassLabel::Kind::Noncentral ? pn : 1;

    const Cyclotomic zero = Cyclotomic::integer(g.p, 0);
    t.values.assign(t.chars.size(), std::vector<Cyclotomic>(t.classes.size(), zero));
    for (size_t x = 0; x < t.chars.size(); ++x) {
        const CharLabel& ch = t.chars[x];
        for (size_t c = 0; c < t.classes.size(); ++c) {
            const ClassLabel& cl = t.classes[c];
            if (ch.kind == CharLabel::Kind::Linear) {
                uint32_t ex = cl.kind == ClassLabel::Kind::Noncentral
                                  ? vec_dot(ch.vec, cl.vec, g.p)
                                  : 0;
                t.values[x][c] = Cyclotomic::zeta_pow(g.p, ex);
            } else {
                switch (cl.kind) {
                    case ClassLabel::Kind::Identity:
                        t.values[x][c] = Cyclotomic::integer(g.p, degree_nl);
                        break;
                    case ClassLabel::Kind::Central:
                        t.values[x][c] =
                            Cyclotomic::zeta_pow(g.p, vec_dot(ch.vec, cl.vec, g.p))
                                .scaled(degree_nl);
                        break;
                    case ClassLabel::Kind::Noncentral:
                        t.values[x][c] = zero;
                        break;
                }
            }
        }
    }

    // class index lookup for relabeling powers
    std::map<ClassLabel::Kind, std::map<FpVec, uint32_t>> index;
    for (size_t c = 0; c < t.classes.size(); ++c)
        index[t.classes[c].kind][t.classes[c].vec] = uint32_t(c);
    auto label_of = [&](const Element& x) -> uint32_t {
        if (is_identity(x)) return 0;
        if (vec_is_zero(x.e)) return index[ClassLabel::Kind::Central].at(x.z);
        return index[ClassLabel::Kind::Noncentral].at(x.e);
    };

    uint32_t p2 = g.p * g.p;
    t.power_maps.assign(p2, std::vector<uint32_t>(t.classes.size(), 0));
    for (uint32_t k = 0; k < p2; ++k)
        for (size_t c = 0; c < t.classes.size(); ++c) {
            Element rep = t.class_representative(c, g);
            t.power_maps[k][c] = label_of(power(g, rep, k));
        }
    return t;
}

bool check_orthogonality(const CharacterTable& t, std::string* first_failure) {
    const size_t nc = t.classes.size();
    const Cyclotomic zero = Cyclotomic::integer(t.p, 0);

    // rows: sum_c size(c) x(c) conj(y(c)) = |G| delta_xy
    for (size_t x = 0; x < t.chars.size(); ++x)
        for (size_t y = x; y < t.chars.size(); ++y) {
            Cyclotomic sum = zero;
            for (size_t c = 0; c < nc; ++c)
                sum = sum + (t.values[x][c] * t.values[y][c].conj()).scaled(int64_t(t.class_sizes[c]));
            Cyclotomic expected =
                x == y ? Cyclotomic::integer(t.p, int64_t(t.group_order)) : zero;
            if (!(sum == expected)) {
                if (first_failure)
                    *first_failure = "row orthogonality fails at characters " +
                                     t.chars[x].to_string() + " / " + t.chars[y].to_string();
                return false;
            }
        }

    // columns: sum_x x(c) conj(x(c')) = |C_G(c)| delta_cc'
    for (size_t c = 0; c < nc; ++c)
        for (size_t d = c; d < nc; ++d) {
            Cyclotomic sum = zero;
            for (size_t x = 0; x < t.chars.size(); ++x)
                sum = sum + t.values[x][c] * t.values[x][d].conj();
            Cyclotomic expected =
                c == d ? Cyclotomic::integer(t.p, int64_t(t.group_order / t.class_sizes[c]))
                       : zero;
            if (!(sum == expected)) {
                if (first_failure)
                    *first_failure = "column orthogonality fails at classes " +
                                     t.classes[c].to_string() + " / " + t.classes[d].to_string();
                return false;
            }
        }
    return true;
}

std::vector<Cyclotomic> induced_from_center_oracle(const GroupDatum& g, const FpVec& lambda) {
    if (!is_camina(g)) throw std::invalid_argument("induced_from_center_oracle: datum not Camina");
    if (lambda.size() != g.n || vec_is_zero(lambda))
        throw std::invalid_argument("induced_from_center_oracle: lambda must be a nonzero functional");

    uint64_t pn = 1;
    for (uint32_t i = 0; i < g.n; ++i) pn *= g.p;

    std::vector<std::vector<uint32_t>> classes = conjugacy_classes_oracle(g);
    uint32_t order = uint32_t(g.order());
    std::vector<Element> elems(order);
    std::vector<Element> invs(order);
    for (uint32_t c = 0; c < order; ++c) {
        elems[c] = decode_element(g, c);
        invs[c] = inverse(g, elems[c]);
    }

    // build_table class order: identity, central lex, noncentral lex
    CharacterTable shape = build_table(g);
    std::vector<Cyclotomic> row(shape.classes.size(), Cyclotomic::integer(g.p, 0));

    for (const std::vector<uint32_t>& cls : classes) {
        Element rep = elems[cls.front()];

        // induced value: (1/|Z|) sum over h of lambda-extension at h^-1 rep h
        Cyclotomic sum = Cyclotomic::integer(g.p, 0);
        for (uint32_t h = 0; h < order; ++h) {
            Element conj = multiply(g, invs[h], multiply(g, rep, elems[h]));
            if (!vec_is_zero(conj.e)) continue; // off the center: extension vanishes
            sum = sum + Cyclotomic::zeta_pow(g.p, vec_dot(lambda, conj.z, g.p));
        }
        // |Z| = p^n exactly for a Camina datum
        std::vector<int64_t> divided(sum.coeffs());
        Cyclotomic value = Cyclotomic::integer(g.p, 0);
        {
            bool all_div = true;
            for (int64_t& v : divided) {
                if (v % int64_t(pn) != 0) { all_div = false; break; }
                v /= int64_t(pn);
            }
            if (!all_div)
                throw std::logic_error("induced_from_center_oracle: center order does not divide the sum");
            value = Cyclotomic::integer(g.p, 0);
            for (size_t k = 0; k < divided.size(); ++k)
                value = value + Cyclotomic::zeta_pow(g.p, uint32_t(k)).scaled(divided[k]);
        }

        // locate the class in table order via its representative
        size_t idx;
        if (is_identity(rep)) {
            idx = 0;
        } else if (vec_is_zero(rep.e)) {
            ClassLabel want{ClassLabel::Kind::Central, rep.z};
            idx = size_t(std::find(shape.classes.begin(), shape.classes.end(), want) -
                         shape.classes.begin());
        } else {
            ClassLabel want{ClassLabel::Kind::Noncentral, rep.e};
            idx = size_t(std::find(shape.classes.begin(), shape.classes.end(), want) -
                         shape.classes.begin());
        }
        if (idx >= shape.classes.size())
            throw std::logic_error("induced_from_center_oracle: class representative not labeled");
        row[idx] = value;
    }
    return row;
}

int64_t inner_product(const std::vector<Cyclotomic>& x, const std::vector<Cyclotomic>& y,
                      const std::vector<uint64_t>& sizes, uint64_t group_order) {
    if (x.empty() || x.size() != y.size() || x.size() != sizes.size())
        throw std::invalid_argument("inner_product: length mismatch");
    Cyclotomic sum = Cyclotomic::integer(x[0].prime(), 0);
    for (size_t c = 0; c < x.size(); ++c)
        sum = sum + (x[c] * y[c].conj()).scaled(int64_t(sizes[c]));
    const std::vector<int64_t>& co = sum.coeffs();
    for (size_t k = 1; k < co.size(); ++k)
        if (co[k] != 0) throw std::logic_error("inner_product: value not a rational integer");
    if (co[0] % int64_t(group_order) != 0)
        throw std::logic_error("inner_product: value not divisible by the group order");
    return co[0] / int64_t(group_order);
}

} // namespace caminalab
