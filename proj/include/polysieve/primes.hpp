#pragma once

#include <algorithm>

namespace polysieve {

// Deterministic trial division; the universes handled here are small
// enough that nothing faster is warranted.
inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline long next_prime_at_least(long n) {
    long p = std::max(2L, n);
    while (!is_prime(p)) ++p;
    return p;
}

}  // namespace polysieve
