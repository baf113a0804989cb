#pragma once

// Inclusion-exclusion extraction of colorful-monomial mass from a
// black-box evaluator. sieve_full streams the 2^k zero-patterns and keeps
// nothing, so it runs in polynomial space; sieve_shared stores all 2^t
// evaluations once and answers every k-subset question from a single
// subset-sum pass over the table.

#include <cstdint>
#include <vector>

#include "polysieve/bigint.hpp"
#include "polysieve/errors.hpp"
#include "polysieve/evaluator.hpp"

namespace polysieve {

inline constexpr int kMaxSieveClasses = 62;
inline constexpr std::size_t kSharedEntryBytes = 64;  // accounting unit per table entry

// Q(1,...,1) = sum over I of (-1)^|I| P_{-I}: the coefficient sum of the
// monomials divisible by every class variable. Exactly 2^k evaluator
// calls, ascending bitmask order.
inline Int sieve_full(const SievedEvaluator& e) {
    int k = e.num_classes();
    if (k < 0 || k > kMaxSieveClasses) throw CapacityError("sieve_full: class count exceeds 62");
    Int q = 0;
    const std::uint64_t end = std::uint64_t(1) << k;
    for (std::uint64_t mask = 0; mask < end; ++mask) {
        Int v = e.evaluate_zeroed(mask);
        if (__builtin_popcountll(mask) % 2 == 0)
            q += v;
        else
            q -= v;
    }
    return q;
}

struct SharedSieveOutcome {
    bool hit = false;
    std::uint64_t witness = 0;            // first witnessing class subset, ascending mask order
    unsigned long long evaluations = 0;   // always 2^t
    std::size_t table_entries = 0;
};

// Fills the 2^t table of P_{-I} once, then a subset-sum (Moebius) pass
// turns it into Q_J for every J simultaneously. Reports whether some J
// with |J| = target_classes and J containing every mandatory class has
// Q_J != 0.
inline SharedSieveOutcome sieve_shared_scan(const SievedEvaluator& e, int target_classes,
                                            std::uint64_t mandatory_classes,
                                            std::size_t memory_budget_bytes) {
    int t = e.num_classes();
    if (t < 0 || t > kMaxSieveClasses) throw CapacityError("sieve_shared: class count exceeds 62");
    if (target_classes < 0 || target_classes > t)
        throw std::invalid_argument("sieve_shared: target class count out of range");
    if ((mandatory_classes >> t) != 0)
        throw std::invalid_argument("sieve_shared: mandatory class out of range");
    const std::uint64_t entries = std::uint64_t(1) << t;
    if (entries > memory_budget_bytes / kSharedEntryBytes)
        throw CapacityError(
            "sieve_shared: 2^t table exceeds the memory budget; fall back to sieve_full with a "
            "perfect hash family");
    std::vector<Int> table(entries);
    for (std::uint64_t mask = 0; mask < entries; ++mask) {
        table[mask] = e.evaluate_zeroed(mask);
        if (__builtin_popcountll(mask) % 2 == 1) table[mask] = -table[mask];
    }
    for (int b = 0; b < t; ++b) {
        const std::uint64_t bit = std::uint64_t(1) << b;
        for (std::uint64_t mask = 0; mask < entries; ++mask)
            if (mask & bit) table[mask] += table[mask ^ bit];
    }
    SharedSieveOutcome out;
    out.evaluations = entries;
    out.table_entries = entries;
    for (std::uint64_t j = 0; j < entries; ++j) {
        if (__builtin_popcountll(j) != target_classes) continue;
        if ((j & mandatory_classes) != mandatory_classes) continue;
        if (table[j] != 0) {
            out.hit = true;
            out.witness = j;
            return out;
        }
    }
    return out;
}

inline bool sieve_shared(const SievedEvaluator& e, int target_classes,
                         std::size_t memory_budget_bytes = std::size_t(1) << 30) {
    return sieve_shared_scan(e, target_classes, 0, memory_budget_bytes).hit;
}

}  // namespace polysieve
