#pragma once

// Maximum-cardinality matching in the underlying undirected simple graph,
// via augmenting paths with odd-cycle (blossom) contraction. A maximal
// matching is not enough for the solvers: the structural bound they rely
// on needs the true maximum.

#include <algorithm>
#include <map>
#include <vector>

#include "polysieve/digraph.hpp"

namespace polysieve {
namespace detail {

struct BlossomState {
    int n;
    std::vector<std::vector<int>> adj;
    std::vector<int> match, parent, base;
    std::vector<char> used, in_blossom;

    explicit BlossomState(int n_)
        : n(n_), adj(n_ + 1), match(n_ + 1, 0), parent(n_ + 1, 0), base(n_ + 1, 0),
          used(n_ + 1, 0), in_blossom(n_ + 1, 0) {}

    int lca(int a, int b) {
        std::vector<char> seen(n + 1, 0);
        for (;;) {
            a = base[a];
            seen[a] = 1;
            if (!match[a]) break;
            a = parent[match[a]];
        }
        for (;;) {
            b = base[b];
            if (seen[b]) return b;
            b = parent[match[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base[v] != b) {
            in_blossom[base[v]] = 1;
            in_blossom[base[match[v]]] = 1;
            parent[v] = child;
            child = match[v];
            v = parent[match[v]];
        }
    }

    bool augment_from(int root) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(parent.begin(), parent.end(), 0);
        for (int i = 0; i <= n; ++i) base[i] = i;
        used[root] = 1;
        std::vector<int> queue{root};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int to : adj[v]) {
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] && parent[match[to]])) {
                    // odd cycle: contract the blossom rooted at the lca
                    int cur = lca(v, to);
                    std::fill(in_blossom.begin(), in_blossom.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 1; i <= n; ++i)
                        if (in_blossom[base[i]]) {
                            base[i] = cur;
                            if (!used[i]) {
                                used[i] = 1;
                                queue.push_back(i);
                            }
                        }
                } else if (!parent[to]) {
                    parent[to] = v;
                    if (!match[to]) {
                        // exposed vertex reached: flip the alternating path
                        int u = to;
                        while (u) {
                            int pv = parent[u], next = match[pv];
                            match[u] = pv;
                            match[pv] = u;
                            u = next;
                        }
                        return true;
                    }
                    used[match[to]] = 1;
                    queue.push_back(match[to]);
                }
            }
        }
        return false;
    }
};

}  // namespace detail

// For a bidirected pair either arc may represent the matched edge; the
// lexicographically smallest arc index is chosen.
inline ArcMatching maximum_matching(const ArcColoredDigraph& d) {
    detail::BlossomState st(d.n);
    std::map<std::pair<int, int>, int> min_arc;  // undirected edge -> smallest arc id
    for (int id = 0; id < d.arc_count(); ++id) {
        const Arc& a = d.arcs[id];
        auto key = std::minmax(a.tail, a.head);
        auto [it, fresh] = min_arc.try_emplace({key.first, key.second}, id);
        if (fresh) {
            st.adj[key.first].push_back(key.second);
            st.adj[key.second].push_back(key.first);
        } else {
            it->second = std::min(it->second, id);
        }
    }
    for (auto& nb : st.adj) std::sort(nb.begin(), nb.end());
    for (int v = 1; v <= d.n; ++v)
        if (!st.match[v]) st.augment_from(v);
    ArcMatching m;
    for (int v = 1; v <= d.n; ++v)
        if (st.match[v] > v) {
            auto it = min_arc.find({v, st.match[v]});
            m.arc_ids.push_back(it->second);
        }
    std::sort(m.arc_ids.begin(), m.arc_ids.end());
    return m;
}

}  // namespace polysieve
