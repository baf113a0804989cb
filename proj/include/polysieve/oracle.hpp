#pragma once

// Brute-force ground truth. Everything here exists to be obviously
// correct, with hard size guards instead of silent slowness, and with
// deterministic enumeration orders so fixtures stay byte-stable.

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "polysieve/digraph.hpp"
#include "polysieve/errors.hpp"
#include "polysieve/planar.hpp"
#include "polysieve/splitters.hpp"

namespace polysieve {

inline constexpr int kOracleBranchingVertexGuard = 10;
inline constexpr int kOracleMatchingVertexGuard = 16;
inline constexpr long kOracleSubsetGuard = 1'000'000;

// Every out-branching rooted at r, each exactly once, lexicographic on
// parent-arc choices. The callback returns false to stop early.
inline void enum_out_branchings(const ArcColoredDigraph& d, int root,
                                const std::function<bool(const OutBranching&)>& emit) {
    if (d.n > kOracleBranchingVertexGuard)
        throw CapacityError("enum_out_branchings: vertex guard exceeded");
    if (root < 1 || root > d.n) throw std::out_of_range("root out of range");
    std::vector<std::vector<int>> in_arcs(d.n + 1);
    for (int id = 0; id < d.arc_count(); ++id) in_arcs[d.arcs[id].head].push_back(id);
    std::vector<int> vertices;
    for (int v = 1; v <= d.n; ++v)
        if (v != root) vertices.push_back(v);
    OutBranching b;
    b.root = root;
    b.parent_arc.assign(d.n + 1, -1);
    bool stop = false;
    // assigning a parent arc may not close a cycle through already-chosen arcs
    auto creates_cycle = [&](int v, int tail) {
        int cur = tail;
        while (cur != root && b.parent_arc[cur] >= 0) {
            if (cur == v) return true;
            cur = d.arcs[b.parent_arc[cur]].tail;
        }
        return cur == v;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (stop) return;
        if (i == vertices.size()) {
            if (!emit(b)) stop = true;
            return;
        }
        int v = vertices[i];
        for (int id : in_arcs[v]) {
            if (creates_cycle(v, d.arcs[id].tail)) continue;
            b.parent_arc[v] = id;
            rec(i + 1);
            b.parent_arc[v] = -1;
            if (stop) return;
        }
    };
    rec(0);
}

inline std::vector<OutBranching> all_out_branchings(const ArcColoredDigraph& d, int root) {
    std::vector<OutBranching> out;
    enum_out_branchings(d, root, [&](const OutBranching& b) {
        out.push_back(b);
        return true;
    });
    return out;
}

inline Int count_out_branchings(const ArcColoredDigraph& d, int root) {
    Int c = 0;
    enum_out_branchings(d, root, [&](const OutBranching&) {
        ++c;
        return true;
    });
    return c;
}

// Maximum internal-vertex count over all out-branchings of d, or nullopt
// when d has none.
inline std::optional<int> max_internal(const ArcColoredDigraph& d) {
    if (d.n > kOracleBranchingVertexGuard)
        throw CapacityError("max_internal: vertex guard exceeded");
    std::vector<int> roots = has_out_branching(d);
    if (roots.empty()) return std::nullopt;
    int best = -1;
    for (int r : roots) {
        enum_out_branchings(d, r, [&](const OutBranching& b) {
            best = std::max(best, internal_vertex_count(d, b));
            return true;
        });
    }
    if (best < 0) return std::nullopt;
    return best;
}

// All perfect matchings as ascending edge-id sets, lexicographic order.
inline std::vector<std::vector<int>> enum_perfect_matchings(const PlanarEmbeddedGraph& g) {
    if (g.n > kOracleMatchingVertexGuard)
        throw CapacityError("enum_perfect_matchings: vertex guard exceeded");
    std::vector<std::vector<int>> result;
    if (g.n % 2 != 0) return result;
    std::vector<std::vector<int>> inc(g.n + 1);
    for (int e = 0; e < g.edge_count(); ++e) {
        inc[g.edges[e].u].push_back(e);
        inc[g.edges[e].v].push_back(e);
    }
    for (auto& v : inc) std::sort(v.begin(), v.end());
    std::vector<char> matched(g.n + 1, 0);
    std::vector<int> chosen;
    std::function<void()> rec = [&]() {
        int v = 0;
        for (int u = 1; u <= g.n; ++u)
            if (!matched[u]) {
                v = u;
                break;
            }
        if (v == 0) {
            result.push_back(chosen);
            return;
        }
        for (int e : inc[v]) {
            int w = g.other_end(e, v);
            if (matched[w] || w < v) continue;
            matched[v] = matched[w] = 1;
            chosen.push_back(e);
            rec();
            chosen.pop_back();
            matched[v] = matched[w] = 0;
        }
    };
    rec();
    return result;
}

// Exhaustive splitter check: true when every k-subset of [n] is
// partitioned almost equally by some family member. On failure reports
// the lexicographically first uncovered subset.
struct SplitterCheck {
    bool covered = false;
    std::vector<long> first_uncovered;  // empty when covered
};

inline bool splits_almost_equally(const std::vector<int>& vec, const std::vector<long>& subset,
                                  long colors) {
    std::vector<int> count(static_cast<std::size_t>(colors) + 1, 0);
    for (long idx : subset) {
        int c = vec[static_cast<std::size_t>(idx - 1)];
        if (c < 1 || c > colors) return false;
        ++count[c];
    }
    int lo = count[1], hi = count[1];
    for (long c = 2; c <= colors; ++c) {
        lo = std::min(lo, count[c]);
        hi = std::max(hi, count[c]);
    }
    return hi - lo <= 1;
}

// Works on any vector stream so deliberately mutated families can be
// audited; next() yields vectors until exhausted.
inline SplitterCheck verify_splitter(const SplitterSpec& spec,
                                     const std::function<bool(std::vector<int>&)>& next) {
    Int subsets_big = binomial(spec.universe, spec.subset);
    if (subsets_big > kOracleSubsetGuard)
        throw CapacityError("verify_splitter: (n choose k) exceeds the budget guard");
    const long subsets = static_cast<long>(subsets_big);
    std::vector<char> hit(static_cast<std::size_t>(subsets), 0);
    long remaining = subsets;
    std::vector<int> vec;
    while (remaining > 0 && next(vec)) {
        if (static_cast<long>(vec.size()) != spec.universe)
            throw std::invalid_argument("verify_splitter: vector length mismatch");
        long rank = 0;
        detail::for_each_subset(spec.universe, spec.subset, [&](const std::vector<long>& subset) {
            if (!hit[rank] && splits_almost_equally(vec, subset, spec.colors)) {
                hit[rank] = 1;
                --remaining;
            }
            ++rank;
        });
    }
    SplitterCheck out;
    out.covered = remaining == 0;
    if (!out.covered) {
        long rank = 0;
        detail::for_each_subset(spec.universe, spec.subset, [&](const std::vector<long>& subset) {
            if (out.first_uncovered.empty() && !hit[rank]) out.first_uncovered = subset;
            ++rank;
        });
    }
    return out;
}

inline SplitterCheck verify_splitter(const IndexedSplitter& s) {
    SplitterEnumerator stream(s);
    return verify_splitter(s.spec(), [&](std::vector<int>& out) { return stream.next(out); });
}

}  // namespace polysieve
