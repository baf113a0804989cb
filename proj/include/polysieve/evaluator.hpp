#pragma once

// Color partitions of a variable universe and the black-box evaluator
// interface the sieve consumes. A partition has exactly k classes; empty
// classes are permitted (they simply force the sieved value to zero).

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polysieve/bigint.hpp"

namespace polysieve {

enum class ClassOrigin { Guide, Hashed };

// A variable mapped to kUnsieved stays at value 1 under every
// zero-pattern: it sits outside the sieved variable set J.
inline constexpr int kUnsieved = -1;

// class_of maps variable ids 1..universe onto classes 0..num_classes-1
// (or kUnsieved).
struct ColorPartition {
    int num_classes = 0;
    std::vector<int> class_of;  // index 0 unused
    std::vector<ClassOrigin> origin;

    int universe() const { return static_cast<int>(class_of.size()) - 1; }
};

inline ColorPartition make_partition(int universe, int num_classes, std::vector<int> class_of,
                                     std::vector<ClassOrigin> origin = {}) {
    if (num_classes < 0 || num_classes > 62)
        throw std::invalid_argument("class count must be in [0, 62]");
    if (static_cast<int>(class_of.size()) != universe + 1)
        throw std::invalid_argument("class map must cover the universe");
    for (int v = 1; v <= universe; ++v)
        if (class_of[v] < kUnsieved || class_of[v] >= num_classes)
            throw std::invalid_argument("class id out of range");
    if (origin.empty()) origin.assign(num_classes, ClassOrigin::Hashed);
    if (static_cast<int>(origin.size()) != num_classes)
        throw std::invalid_argument("origin list must have one entry per class");
    return ColorPartition{num_classes, std::move(class_of), std::move(origin)};
}

// Every variable its own class.
inline ColorPartition identity_partition(int universe) {
    std::vector<int> cls(universe + 1, 0);
    for (int v = 1; v <= universe; ++v) cls[v] = v - 1;
    return make_partition(universe, universe, std::move(cls));
}

// Integer-valued polynomial evaluator supporting "zero out the classes in
// I, evaluate at all-ones". Implementations are immutable, cache nothing,
// and may be evaluated concurrently.
class SievedEvaluator {
public:
    virtual ~SievedEvaluator() = default;
    virtual int num_classes() const = 0;
    virtual Int evaluate_zeroed(std::uint64_t zeroed_classes) const = 0;

protected:
    void check_mask(std::uint64_t mask) const {
        int k = num_classes();
        if (k < 64 && (mask >> k) != 0) throw std::out_of_range("zeroed class out of range");
    }
};

inline Int evaluate_zeroed(const SievedEvaluator& e, const std::vector<int>& zeroed) {
    std::uint64_t mask = 0;
    for (int c : zeroed) {
        if (c < 0 || c >= e.num_classes()) throw std::out_of_range("class index out of range");
        mask |= std::uint64_t(1) << c;
    }
    return e.evaluate_zeroed(mask);
}

}  // namespace polysieve
