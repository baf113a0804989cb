#pragma once

// Constructing out-branchings and the leaf-exchange procedure: given a
// matching M, rewire until no arc of M has both endpoints as leaves. Each
// exchange strictly increases the number of M-arcs inside the branching,
// so at most |M| exchanges happen.

#include <optional>
#include <stdexcept>
#include <vector>

#include "polysieve/digraph.hpp"

namespace polysieve {

// BFS from root following arcs in ascending index order; nullopt when the
// root does not reach every vertex.
inline std::optional<OutBranching> out_branching_from(const ArcColoredDigraph& d, int root) {
    if (root < 1 || root > d.n) throw std::out_of_range("root out of range");
    std::vector<std::vector<int>> out_arcs(d.n + 1);
    for (int id = 0; id < d.arc_count(); ++id) out_arcs[d.arcs[id].tail].push_back(id);
    OutBranching b;
    b.root = root;
    b.parent_arc.assign(d.n + 1, -1);
    std::vector<char> seen(d.n + 1, 0);
    seen[root] = 1;
    std::vector<int> queue{root};
    int reached = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (int id : out_arcs[v]) {
            int w = d.arcs[id].head;
            if (seen[w]) continue;
            seen[w] = 1;
            b.parent_arc[w] = id;
            queue.push_back(w);
            ++reached;
        }
    }
    if (reached != d.n) return std::nullopt;
    return b;
}

// Out-branching in which no arc of m has both endpoints as leaves.
// Scans m ascending and re-scans after every exchange.
inline OutBranching exchange_out_branching(const ArcColoredDigraph& d, const ArcMatching& m) {
    validate_matching(d, m);
    std::vector<int> roots = has_out_branching(d);
    if (roots.empty()) throw std::runtime_error("no out-branching");
    OutBranching b = *out_branching_from(d, roots.front());
    for (int round = 0; round <= m.size(); ++round) {
        std::vector<int> children(d.n + 1, 0);
        for (int v = 1; v <= d.n; ++v)
            if (v != b.root) ++children[d.arcs[b.parent_arc[v]].tail];
        int pick = -1;
        for (int id : m.arc_ids) {
            const Arc& a = d.arcs[id];
            if (children[a.tail] == 0 && children[a.head] == 0) {
                pick = id;
                break;
            }
        }
        if (pick < 0) return b;
        // both endpoints are leaves: hang head below tail, making the tail
        // internal; the dropped parent arc is never an M-arc
        b.parent_arc[d.arcs[pick].head] = pick;
    }
    throw std::logic_error("exchange loop exceeded matching size");
}

}  // namespace polysieve
