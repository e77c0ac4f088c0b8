// Exact arithmetic in Z[zeta_p] for an odd prime p.
//
// Elements are stored on the integral basis 1, zeta, ..., zeta^(p-2); the
// relation zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)) is applied eagerly,
// so equality is plain coefficient equality.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace caminalab {

class Cyclotomic {
  public:
    Cyclotomic() = default;

    static Cyclotomic integer(uint32_t p, int64_t value);
    static Cyclotomic zeta_pow(uint32_t p, uint32_t k); // zeta^k, k reduced mod p

    uint32_t prime() const { return p_; }
    const std::vector<int64_t>& coeffs() const { return c_; }

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic scaled(int64_t k) const;

    // Complex conjugation, zeta -> zeta^(p-1).
    Cyclotomic conj() const;

    bool is_zero() const;
    bool operator==(const Cyclotomic&) const = default;

    // "c0+c1z+...": coefficients on the power basis, z standing for zeta_p.
    std::string to_string() const;

    size_t hash() const;

  private:
    Cyclotomic(uint32_t p, std::vector<int64_t> c) : p_(p), c_(std::move(c)) {}
    void require_same_prime(const Cyclotomic& o) const;

    uint32_t p_ = 0;
    std::vector<int64_t> c_; // length p-1
};

} // namespace caminalab
