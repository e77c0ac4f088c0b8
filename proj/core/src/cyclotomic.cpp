#include "caminalab/cyclotomic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace caminalab {

Cyclotomic Cyclotomic::integer(uint32_t p, int64_t value) {
    if (p < 3) throw std::invalid_argument("Cyclotomic: prime must be odd");
    std::vector<int64_t> c(p - 1, 0);
    c[0] = value;
    return Cyclotomic(p, std::move(c));
}

Cyclotomic Cyclotomic::zeta_pow(uint32_t p, uint32_t k) {
    if (p < 3) throw std::invalid_argument("Cyclotomic: prime must be odd");
    k %= p;
    std::vector<int64_t> c(p - 1, 0);
    if (k < p - 1) {
        c[k] = 1;
    } else {
        for (auto& v : c) v = -1;
    }
    return Cyclotomic(p, std::move(c));
}

void Cyclotomic::require_same_prime(const Cyclotomic& o) const {
    if (p_ != o.p_) throw std::invalid_argument("Cyclotomic: prime mismatch");
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    require_same_prime(o);
    std::vector<int64_t> c(c_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
    return Cyclotomic(p_, std::move(c));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
    require_same_prime(o);
    std::vector<int64_t> c(c_);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
    return Cyclotomic(p_, std::move(c));
}

Cyclotomic Cyclotomic::operator-() const {
    std::vector<int64_t> c(c_);
    for (auto& v : c) v = -v;
    return Cyclotomic(p_, std::move(c));
}

Cyclotomic Cyclotomic::scaled(int64_t k) const {
    std::vector<int64_t> c(c_);
    for (auto& v : c) v *= k;
    return Cyclotomic(p_, std::move(c));
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    require_same_prime(o);
    // accumulate on exponents mod p, then eliminate zeta^(p-1)
    std::vector<int64_t> acc(p_, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            acc[(i + j) % p_] += c_[i] * o.c_[j];
        }
    }
    std::vector<int64_t> c(p_ - 1);
    int64_t top = acc[p_ - 1];
    for (size_t i = 0; i + 1 < p_; ++i) c[i] = acc[i] - top;
    return Cyclotomic(p_, std::move(c));
}

Cyclotomic Cyclotomic::conj() const {
    std::vector<int64_t> acc(p_, 0);
    for (size_t k = 0; k < c_.size(); ++k) acc[(p_ - k) % p_] += c_[k];
    std::vector<int64_t> c(p_ - 1);
    int64_t top = acc[p_ - 1];
    for (size_t i = 0; i + 1 < p_; ++i) c[i] = acc[i] - top;
    return Cyclotomic(p_, std::move(c));
}

bool Cyclotomic::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int64_t v) { return v == 0; });
}

std::string Cyclotomic::to_string() const {
    std::ostringstream out;
    out << c_[0];
    for (size_t k = 1; k < c_.size(); ++k) {
        int64_t v = c_[k];
        out << (v < 0 ? "-" : "+") << (v < 0 ? -v : v) << "z";
        if (k > 1) out << "^" << k;
    }
    return out.str();
}

size_t Cyclotomic::hash() const {
    size_t h = p_;
    for (int64_t v : c_) h = h * 1000003u ^ std::hash<int64_t>{}(v);
    return h;
}

} // namespace caminalab
