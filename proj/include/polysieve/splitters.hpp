#pragma once

// Indexed splitters: families of vectors in [t]^n presented as data
// structures with random access, so they can be enumerated one by one
// with polynomial delay and polynomial space. The stack bottoms out in a
// k-wise independent sampling space (Joffe) feeding a greedy splitter on
// a k^2-sized universe, and is lifted to arbitrary universes by an
// injective modular family plus an interval partitioner.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "polysieve/bigint.hpp"
#include "polysieve/errors.hpp"
#include "polysieve/primes.hpp"

namespace polysieve {

struct SplitterSpec {
    long universe = 0;  // n
    long subset = 0;    // k
    long colors = 0;    // t
};

// Declared asymptotic classes; measured figures live in the test suite.
struct SplitterProfile {
    Int size = 0;
    std::string init_time, init_space, query_time, query_space;
};

class IndexedSplitter {
public:
    virtual ~IndexedSplitter() = default;

    const SplitterSpec& spec() const { return spec_; }
    const SplitterProfile& profile() const { return profile_; }
    const Int& size() const { return profile_.size; }

    // Deterministic: query(i) always returns the same vector in [t]^n.
    std::vector<int> query(const Int& index) const {
        if (index < 0 || index >= size()) throw std::out_of_range("splitter index out of range");
        std::vector<int> out(static_cast<std::size_t>(spec_.universe));
        fill(index, out);
        return out;
    }

protected:
    IndexedSplitter(SplitterSpec s, SplitterProfile p) : spec_(s), profile_(std::move(p)) {}
    virtual void fill(const Int& index, std::vector<int>& out) const = 0;

    SplitterSpec spec_;
    SplitterProfile profile_;
};

using SplitterPtr = std::shared_ptr<const IndexedSplitter>;

// Single-consumer stream over query(0), query(1), ...; disjoint index
// ranges may be walked by parallel workers via query directly.
class SplitterEnumerator {
public:
    explicit SplitterEnumerator(const IndexedSplitter& s) : s_(&s) {}

    bool next(std::vector<int>& out) {
        if (next_ >= s_->size()) return false;
        out = s_->query(next_);
        ++next_;
        return true;
    }
    const Int& position() const { return next_; }

private:
    const IndexedSplitter* s_;
    Int next_ = 0;
};

namespace detail {

class SingleVectorSplitter final : public IndexedSplitter {
public:
    SingleVectorSplitter(SplitterSpec s, std::vector<int> vec)
        : IndexedSplitter(s, SplitterProfile{1, "O(n)", "O(n)", "O(n)", "O(1)"}),
          vec_(std::move(vec)) {}

protected:
    void fill(const Int&, std::vector<int>& out) const override { out = vec_; }

private:
    std::vector<int> vec_;
};

class MaterializedSplitter final : public IndexedSplitter {
public:
    MaterializedSplitter(SplitterSpec s, std::vector<std::vector<int>> rows, std::string init_time)
        : IndexedSplitter(s, SplitterProfile{Int(rows.size()), std::move(init_time),
                                             "O(|family| n)", "O(n)", "O(1)"}),
          rows_(std::move(rows)) {}

protected:
    void fill(const Int& index, std::vector<int>& out) const override {
        out = rows_[static_cast<std::size_t>(index)];
    }

private:
    std::vector<std::vector<int>> rows_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Interval splitter B(n,k,t): one vector per strictly increasing tuple of
// t-1 cut positions in [n]; color j is the j-th interval. Size (n choose
// t-1), and every k-subset is partitioned almost equally by the tuple
// whose cuts land on the right boundaries.

namespace detail {

class IntervalSplitter final : public IndexedSplitter {
public:
    IntervalSplitter(long n, long k, long t)
        : IndexedSplitter(SplitterSpec{n, k, t},
                          SplitterProfile{binomial(n, t - 1), "O(t log n)", "O(t log n)",
                                          "O(n t log n)", "O(t log n)"}) {}

protected:
    void fill(const Int& index, std::vector<int>& out) const override {
        long n = spec_.universe, t = spec_.colors;
        // lexicographic unranking of the (t-1)-combination of [n]
        std::vector<long> cuts;
        cuts.reserve(t - 1);
        Int r = index;
        long prev = 0;
        for (long j = 1; j <= t - 1; ++j) {
            for (long v = prev + 1; v <= n; ++v) {
                Int below = binomial(n - v, t - 1 - j);
                if (r < below) {
                    cuts.push_back(v);
                    prev = v;
                    break;
                }
                r -= below;
            }
        }
        long color = 1;
        std::size_t c = 0;
        for (long x = 1; x <= n; ++x) {
            while (c < cuts.size() && cuts[c] <= x) {
                ++color;
                ++c;
            }
            out[x - 1] = static_cast<int>(color);
        }
    }
};

}  // namespace detail

inline SplitterPtr interval_splitter(long n, long k, long t) {
    if (k < 1 || t < 1) throw std::invalid_argument("interval splitter: k, t must be positive");
    if (t > n) throw std::invalid_argument("interval splitter: more colors than elements");
    return std::make_shared<detail::IntervalSplitter>(n, k, t);
}

// ---------------------------------------------------------------------------
// Reduction family A(n,k): the modular injective family
// x -> ((a x mod p) mod k^2) + 1 over a in [p-1], p the smallest prime
// above n. Some member is injective on every k-subset.

namespace detail {

class ModularSplitter final : public IndexedSplitter {
public:
    ModularSplitter(long n, long k, long p)
        : IndexedSplitter(SplitterSpec{n, k, k * k},
                          SplitterProfile{Int(p - 1), "O(log n)", "O(log n)", "O(n log n)",
                                          "O(log n)"}),
          p_(p) {}

protected:
    void fill(const Int& index, std::vector<int>& out) const override {
        long a = static_cast<long>(index) + 1;
        long kk = spec_.colors;
        for (long x = 1; x <= spec_.universe; ++x)
            out[x - 1] = static_cast<int>((a * x % p_) % kk) + 1;
    }

private:
    long p_;
};

}  // namespace detail

inline SplitterPtr reduction_family(long n, long k) {
    if (n < 2 || k < 1) throw std::invalid_argument("reduction family: need n >= 2, k >= 1");
    long p = next_prime_at_least(n + 1);
    return std::make_shared<detail::ModularSplitter>(n, k, p);
}

// ---------------------------------------------------------------------------
// Joffe sampling space H*_{p,k,t}: for each assignment of (X_1..X_k) in
// {0..p-1}^k the vector with coordinate i in [p] equal to
// ((X_1 + i X_2 + ... + i^{k-1} X_k) mod p) mod t, shifted to [t].
// The coordinates are k-wise independent and almost uniform over [t].

class JoffeSpace {
public:
    JoffeSpace(long p, long k, long t) : p_(p), k_(k), t_(t) {
        if (!is_prime(p)) throw std::invalid_argument("joffe space: p must be prime");
        if (k < 1 || k > t || t >= p)
            throw std::invalid_argument("joffe space: need 1 <= k <= t < p");
        size_ = ipow(Int(p), k);
    }

    long p() const { return p_; }
    long coordinates() const { return p_; }
    const Int& size() const { return size_; }

    // Decodes the index into base-p digits X_1 (least significant) .. X_k.
    std::vector<int> vector_at(const Int& index) const {
        if (index < 0 || index >= size_) throw std::out_of_range("joffe index out of range");
        std::vector<long> x(static_cast<std::size_t>(k_));
        Int r = index;
        for (long j = 0; j < k_; ++j) {
            x[j] = static_cast<long>(r % p_);
            r /= p_;
        }
        return vector_from_digits(x);
    }

    // Sequential enumeration needs only the digit counter: O(k log p) bits
    // of cross-item state.
    class Stream {
    public:
        explicit Stream(const JoffeSpace& s) : s_(&s), digits_(static_cast<std::size_t>(s.k_), 0) {}

        bool next(std::vector<int>& out) {
            if (done_) return false;
            out = s_->vector_from_digits(digits_);
            long j = 0;
            while (j < s_->k_ && ++digits_[j] == s_->p_) digits_[j++] = 0;
            if (j == s_->k_) done_ = true;
            return true;
        }

    private:
        const JoffeSpace* s_;
        std::vector<long> digits_;
        bool done_ = false;
    };

private:
    std::vector<int> vector_from_digits(const std::vector<long>& x) const {
        std::vector<int> out(static_cast<std::size_t>(p_));
        for (long i = 1; i <= p_; ++i) {
            long v = 0;
            for (long j = k_ - 1; j >= 0; --j) v = (v * i + x[j]) % p_;
            out[i - 1] = static_cast<int>(v % t_) + 1;
        }
        return out;
    }

    long p_, k_, t_;
    Int size_;
};

inline JoffeSpace joffe_space(long p, long k, long t) { return JoffeSpace(p, k, t); }

// ---------------------------------------------------------------------------
// Greedy splitter C_alpha(n,k): traverses the Joffe space and keeps a
// vector when the number of newly covered k-subsets meets the coverage
// threshold, in exact rational arithmetic. A relaxed second pass accepts
// any vector with fresh coverage, so the family always covers every
// k-subset with k distinct colors. Materialized by construction; meant
// for k^2-sized universes inside the composition or for the
// exponential-space solvers.

namespace detail {

inline constexpr long kGreedySubsetGuard = 4'000'000;

inline bool rainbow_on(const std::vector<int>& vec, const std::vector<long>& subset,
                       std::vector<int>& stamp, int generation) {
    for (long idx : subset) {
        int color = vec[static_cast<std::size_t>(idx - 1)];
        if (stamp[color] == generation) return false;
        stamp[color] = generation;
    }
    return true;
}

// Iterates all k-subsets of [n] in lexicographic order, calling fn(subset).
template <typename Fn>
void for_each_subset(long n, long k, Fn&& fn) {
    std::vector<long> c(static_cast<std::size_t>(k));
    for (long i = 0; i < k; ++i) c[i] = i + 1;
    for (;;) {
        fn(const_cast<const std::vector<long>&>(c));
        long i = k - 1;
        while (i >= 0 && c[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++c[i];
        for (long j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace detail

// Explicit color budget t >= k; greedy_splitter(n, k, alpha) wraps this
// with t = ceil(alpha k).
inline SplitterPtr greedy_splitter_exact(long n, long k, long t) {
    if (k < 1 || n < k) throw std::invalid_argument("greedy splitter: need 1 <= k <= n");
    if (t < k) throw std::invalid_argument("greedy splitter: need t >= k");
    SplitterSpec spec{n, k, t};
    if (k == 1) {
        return std::make_shared<detail::SingleVectorSplitter>(
            spec, std::vector<int>(static_cast<std::size_t>(n), 1));
    }
    if (t >= n) {
        // the staircase vector is injective on [n], hence on every subset
        std::vector<int> stair(static_cast<std::size_t>(n));
        for (long x = 1; x <= n; ++x) stair[x - 1] = static_cast<int>(x);
        return std::make_shared<detail::SingleVectorSplitter>(spec, std::move(stair));
    }
    Int subsets_big = binomial(n, k);
    if (subsets_big > detail::kGreedySubsetGuard)
        throw CapacityError("greedy splitter: (n choose k) exceeds the materialization guard");
    const long subsets = static_cast<long>(subsets_big);

    long p = next_prime_at_least(std::max(n, t + 1));
    JoffeSpace space(p, k, t);

    // acceptance threshold: e^{-2tk/n} (t choose k) k! / t^k of the
    // still-uncovered sets
    const Rat fraction =
        exp_neg(Rat(2 * t * k, n)) * Rat(binomial(t, k) * factorial(k), ipow(Int(t), k));

    std::vector<char> covered(static_cast<std::size_t>(subsets), 0);
    long covered_count = 0;
    std::vector<std::vector<int>> family;
    std::vector<int> stamp(static_cast<std::size_t>(t) + 1, 0);
    int generation = 0;
    std::vector<long> fresh_ranks;

    auto fresh_coverage = [&](const std::vector<int>& vec) {
        fresh_ranks.clear();
        long rank = 0;
        detail::for_each_subset(n, k, [&](const std::vector<long>& subset) {
            if (!covered[rank]) {
                ++generation;
                if (detail::rainbow_on(vec, subset, stamp, generation)) fresh_ranks.push_back(rank);
            }
            ++rank;
        });
        return static_cast<long>(fresh_ranks.size());
    };

    for (int relaxed = 0; relaxed < 2 && covered_count < subsets; ++relaxed) {
        JoffeSpace::Stream stream(space);
        std::vector<int> vec;
        while (covered_count < subsets && stream.next(vec)) {
            long fresh = fresh_coverage(vec);
            if (fresh == 0) continue;
            bool accept = relaxed == 1 ||
                          Rat(fresh) >= fraction * Rat(subsets - covered_count);
            if (!accept) continue;
            for (long rank : fresh_ranks) covered[rank] = 1;
            covered_count += fresh;
            family.emplace_back(vec.begin(), vec.begin() + n);
        }
    }
    if (covered_count < subsets)
        throw std::logic_error("greedy splitter: sampling space failed to cover");
    return std::make_shared<detail::MaterializedSplitter>(spec, std::move(family),
                                                          "O(tau(alpha)^k (n choose k) poly)");
}

// alpha >= 1 stretches the color budget to t = ceil(alpha k).
inline SplitterPtr greedy_splitter(long n, long k, double alpha) {
    if (alpha < 1.0) throw std::invalid_argument("greedy splitter: alpha must be >= 1");
    long t = static_cast<long>(std::ceil(alpha * static_cast<double>(k) - 1e-9));
    return greedy_splitter_exact(n, k, std::max(t, k));
}

// ---------------------------------------------------------------------------
// Composition: lifts inner splitters on the k^2 universe to an (n,k,t)-
// splitter. A query decomposes as (i_a, i_b, i_1..i_ell): i_a picks the
// injective reduction vector, i_b an ell-block partition of [k^2], each
// i_j an inner vector; block colors are shifted by cumulative offsets so
// their ranges stay disjoint.

// Supplies the rounded variants (floor/ceil of k/ell and t/ell) the
// composition asks for; universe() must equal the outer k^2.
class RoundedSplitterCollection {
public:
    virtual ~RoundedSplitterCollection() = default;
    virtual long universe() const = 0;
    virtual SplitterPtr fetch(long k, long t) const = 0;
};

namespace detail {

class ComposedSplitter final : public IndexedSplitter {
public:
    ComposedSplitter(SplitterSpec spec, SplitterPtr reduction, SplitterPtr blocks,
                     std::vector<SplitterPtr> inner, std::vector<int> offsets)
        : IndexedSplitter(spec, SplitterProfile{}), reduction_(std::move(reduction)),
          blocks_(std::move(blocks)), inner_(std::move(inner)), offsets_(std::move(offsets)) {
        Int size = reduction_->size() * blocks_->size();
        for (const auto& s : inner_) size *= s->size();
        profile_.size = size;
        profile_.init_time = "k^O(1) n log n + inner init";
        profile_.init_space = "k^O(1) n log n + inner init";
        profile_.query_time = "O(ell inner_query + n)";
        profile_.query_space = "O(ell inner_space + log n)";
    }

protected:
    void fill(const Int& index, std::vector<int>& out) const override {
        const long ell = static_cast<long>(inner_.size());
        // mixed radix, reduction index most significant, block ell fastest
        Int r = index;
        std::vector<Int> inner_idx(static_cast<std::size_t>(ell));
        for (long p = ell - 1; p >= 0; --p) {
            inner_idx[p] = r % inner_[p]->size();
            r /= inner_[p]->size();
        }
        Int ib = r % blocks_->size();
        Int ia = r / blocks_->size();
        std::vector<int> a = reduction_->query(ia);
        std::vector<int> b = blocks_->query(ib);
        std::vector<std::vector<int>> s(static_cast<std::size_t>(ell));
        for (long p = 0; p < ell; ++p) s[p] = inner_[p]->query(inner_idx[p]);
        for (long c = 0; c < spec_.universe; ++c) {
            int cell = a[c];                 // in [k^2]
            int block = b[cell - 1];         // in [ell]
            out[c] = offsets_[block - 1] + s[block - 1][cell - 1];
        }
    }

private:
    SplitterPtr reduction_;
    SplitterPtr blocks_;
    std::vector<SplitterPtr> inner_;
    std::vector<int> offsets_;
};

}  // namespace detail

inline SplitterPtr compose(const RoundedSplitterCollection& inner, long n, long k, long t,
                           long ell) {
    if (k < 1 || k > n) throw std::invalid_argument("compose: need 1 <= k <= n");
    if (t < k) throw std::invalid_argument("compose: need t >= k");
    if (ell < 1 || ell > k) throw std::invalid_argument("compose: need 1 <= ell <= k");
    if (inner.universe() != k * k)
        throw std::invalid_argument("compose: inner collection universe must be k^2");
    const long kf = k / ell, kc = (k + ell - 1) / ell;
    const long tf = t / ell, tc = (t + ell - 1) / ell;
    // floor-variants go to the lowest-numbered slots
    const long j = (k % ell == 0) ? ell : ell * kc - k;
    const long h = (t % ell == 0) ? ell : ell * tc - t;
    std::vector<SplitterPtr> blocks;
    std::vector<int> offsets;
    int off = 0;
    for (long p = 1; p <= ell; ++p) {
        long kp = p <= j ? kf : kc;
        long tp = p <= h ? tf : tc;
        if (tp < kp)
            throw std::invalid_argument("compose: rounded color budget below rounded subset size");
        SplitterPtr s = inner.fetch(kp, tp);
        if (s->spec().universe != k * k || s->spec().subset != kp || s->spec().colors != tp)
            throw std::invalid_argument("compose: inner splitter spec mismatch");
        blocks.push_back(std::move(s));
        offsets.push_back(off);
        off += static_cast<int>(tp);
    }
    return std::make_shared<detail::ComposedSplitter>(
        SplitterSpec{n, k, t}, reduction_family(n, k), interval_splitter(k * k, k, ell),
        std::move(blocks), std::move(offsets));
}

// ---------------------------------------------------------------------------
// Perfect hash family (t = k): one composition level with greedy inner
// families below the cutoff, two levels above it. Queries use polynomial
// workspace, so enumeration is polynomial-delay even though the family
// size is exponential in k.

inline constexpr long kTwoLevelCutoff = 16;

namespace detail {

inline SplitterPtr greedy_cached(long n, long k, long t) {
    static std::map<std::tuple<long, long, long>, SplitterPtr> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n, k, t);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SplitterPtr s = polysieve::greedy_splitter_exact(n, k, t);
    cache.emplace(key, s);
    return s;
}

class GreedyRoundedCollection final : public RoundedSplitterCollection {
public:
    explicit GreedyRoundedCollection(long universe) : universe_(universe) {}
    long universe() const override { return universe_; }
    SplitterPtr fetch(long k, long t) const override { return greedy_cached(universe_, k, t); }

private:
    long universe_;
};

inline long ceil_log2(long k) {
    long l = 0;
    while ((1L << l) < k) ++l;
    return l;
}

// Inner collection of the two-level construction: each fetched splitter
// is itself a composition over its own (k')^2 universe.
class TwoLevelInnerCollection final : public RoundedSplitterCollection {
public:
    TwoLevelInnerCollection(long universe, long ell2) : universe_(universe), ell2_(ell2) {}
    long universe() const override { return universe_; }
    SplitterPtr fetch(long k, long t) const override {
        long ell = std::min(ell2_, k);
        GreedyRoundedCollection greedy(k * k);
        return compose(greedy, universe_, k, t, ell);
    }

private:
    long universe_;
    long ell2_;
};

}  // namespace detail

inline SplitterPtr perfect_hash_family(long n, long k) {
    if (k < 1 || k > n) throw std::invalid_argument("perfect hash family: need 1 <= k <= n");
    static std::map<std::pair<long, long>, SplitterPtr> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({n, k});
        if (it != cache.end()) return it->second;
    }
    SplitterPtr result;
    if (k == 1) {
        result = std::make_shared<detail::SingleVectorSplitter>(
            SplitterSpec{n, 1, 1}, std::vector<int>(static_cast<std::size_t>(n), 1));
    } else if (k < kTwoLevelCutoff) {
        detail::GreedyRoundedCollection greedy(k * k);
        result = compose(greedy, n, k, k, 1);
    } else {
        long log_k = detail::ceil_log2(k);
        long ell1 = std::max(1L, (k + log_k * log_k - 1) / (log_k * log_k));
        detail::TwoLevelInnerCollection inner(k * k, log_k);
        result = compose(inner, n, k, k, ell1);
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(n, k), result);
    return result;
}

}  // namespace polysieve
