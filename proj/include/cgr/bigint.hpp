#pragma once

// Arbitrary-precision integers for the whole library. Everything that touches
// a map value, a modulus or a piece coefficient goes through BigInt; there is
// no floating point anywhere.

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace cgr {

using BigInt = mpz_class;

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Exact division; caller must know b | a.
inline BigInt divexact(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divisible(const BigInt& a, const BigInt& b) {
    return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
}

// Non-negative remainder, also for negative a.
inline BigInt floor_mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline unsigned long to_ulong(const BigInt& v, const char* what) {
    if (v < 0 || !v.fits_ulong_p())
        throw std::overflow_error(std::string(what) + " does not fit a machine word: " + v.get_str());
    return v.get_ui();
}

inline BigInt pow2(unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline std::optional<BigInt> parse_bigint(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return std::nullopt;
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
    return BigInt(s);
}

// Hash over the limb representation, for unordered containers of values.
struct BigIntHash {
    std::size_t operator()(const BigInt& v) const {
        const mpz_srcptr z = v.get_mpz_t();
        std::size_t h = static_cast<std::size_t>(z->_mp_size) * 0x9e3779b97f4a7c15ull;
        const std::size_t n = static_cast<std::size_t>(std::abs(z->_mp_size));
        for (std::size_t i = 0; i < n; ++i)
            h = (h ^ static_cast<std::size_t>(z->_mp_d[i])) * 0x100000001b3ull;
        return h;
    }
};

}  // namespace cgr
