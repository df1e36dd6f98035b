#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fermat/errors.hpp"

namespace fermat {

// Integer helpers sized for desk-scale number theory (everything here
// stays comfortably below 2^63; trial division is fine at that scale).

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

// Prime factors of n, ascending, without multiplicity.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Primes in [2, limit], simple sieve.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

// q = p^n with p prime, n >= 1; nullopt if q is not a prime power.
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decompose(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    auto factors = prime_factors(q);
    if (factors.size() != 1) return std::nullopt;
    std::uint64_t p = factors[0];
    unsigned n = 0;
    while (q > 1) {
        if (q % p != 0) return std::nullopt;
        q /= p;
        ++n;
    }
    return std::make_pair(p, n);
}

// p^n, throwing TooLargeError past `limit` instead of overflowing.
inline std::uint64_t checked_pow(std::uint64_t p, unsigned n, std::uint64_t limit) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (q > limit / p) {
            throw TooLargeError("p^n exceeds the configured size limit");
        }
        q *= p;
    }
    return q;
}

// floor(sqrt(n)) for 64-bit n.
inline std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

}  // namespace fermat
