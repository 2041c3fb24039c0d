#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace flmm {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using Rng = std::mt19937_64;

/// Thrown when an input violates a documented precondition (bad file, bad
/// prime, dependent line pair, ...). Maps to CLI exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a brute-force size guard is exceeded. Maps to CLI exit code 3.
struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when the prime field does not have enough elements for an
/// evaluation grid; the remedy is to rerun with a larger prime.
struct FieldTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod_u64(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin, valid for every 64-bit input.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = detail::powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < s - 1; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

/// Arithmetic context for the prime field F_p. Elements are plain u64
/// residues in [0, p); every operation goes through the context, which keeps
/// values and moduli from getting mixed up across fields.
class PrimeField {
public:
    /// Default modulus: 2^31 - 1, prime and comfortably above 2^30 so that
    /// Schwartz-Zippel error bounds stay negligible at desk scale.
    static constexpr u64 kDefaultPrime = 2147483647ull;

    explicit PrimeField(u64 p = kDefaultPrime) : p_(p) {
        if (!is_prime_u64(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
        if (p >= (1ull << 62)) throw InputError("modulus too large (need p < 2^62)");
    }

    u64 modulus() const { return p_; }

    u64 reduce(u64 x) const { return x % p_; }

    u64 reduce_signed(i64 x) const {
        i64 r = x % static_cast<i64>(p_);
        if (r < 0) r += static_cast<i64>(p_);
        return static_cast<u64>(r);
    }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }

    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }

    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }

    u64 mul(u64 a, u64 b) const { return detail::mulmod_u64(a, b, p_); }

    u64 pow(u64 a, u64 e) const { return detail::powmod_u64(a, e, p_); }

    u64 inv(u64 a) const {
        if (a == 0) throw std::invalid_argument("division by zero in F_p");
        return pow(a, p_ - 2);
    }

    /// Uniform residue. The modulo bias is < 2^-33 for the default prime,
    /// irrelevant next to the probe error bounds.
    u64 uniform(Rng& rng) const { return rng() % p_; }

    u64 uniform_nonzero(Rng& rng) const {
        u64 x;
        do {
            x = uniform(rng);
        } while (x == 0);
        return x;
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
    u64 p_;
};

}  // namespace flmm
