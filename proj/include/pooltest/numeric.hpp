#pragma once

#include <cstdint>
#include <limits>

namespace pooltest {

// Exact binomial coefficient, saturating at `cap` so callers can guard
// enumeration sizes without overflow.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                                     std::uint64_t cap = std::numeric_limits<std::uint64_t>::max()) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) / i is exact at every step.
        unsigned __int128 next = static_cast<unsigned __int128>(r) * (n - k + i) / i;
        if (next >= cap) return cap;
        r = static_cast<std::uint64_t>(next);
    }
    return r;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) { return binomial_capped(n, k); }

// Smallest c with 2^c >= n; 0 for n <= 1.
inline unsigned ceil_log2(std::uint64_t n) {
    if (n <= 1) return 0;
    unsigned c = 0;
    std::uint64_t v = n - 1;
    while (v) {
        v >>= 1;
        ++c;
    }
    return c;
}

}  // namespace pooltest
