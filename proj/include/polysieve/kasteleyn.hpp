#pragma once

// Kasteleyn orientation and the Pfaffian-backed perfect-matching
// evaluator. With every inner face carrying an odd number of edges
// oriented along its traversal, all perfect matchings contribute the same
// sign to the Pfaffian of the oriented adjacency matrix, so its absolute
// value counts them.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polysieve/evaluator.hpp"
#include "polysieve/linalg.hpp"
#include "polysieve/planar.hpp"

namespace polysieve {

struct KasteleynOrientation {
    // direction[e] = (from, to)
    std::vector<std::pair<int, int>> direction;
};

// Index of the outer face: maximal boundary length, ties broken by the
// smallest vertex id on the boundary.
inline int outer_face_index(const PlanarEmbeddedGraph& g,
                            const std::vector<std::vector<HalfEdge>>& faces) {
    int best = -1;
    std::size_t best_len = 0;
    int best_minv = 0;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        int minv = g.n + 1;
        for (HalfEdge h : faces[f]) minv = std::min(minv, half_edge_from(g, h));
        if (best < 0 || faces[f].size() > best_len ||
            (faces[f].size() == best_len && minv < best_minv)) {
            best = f;
            best_len = faces[f].size();
            best_minv = minv;
        }
    }
    return best;
}

// Orients a spanning tree as stored, then fixes the non-tree edges along
// a leaf-to-root sweep of the dual spanning tree, closing one face per
// step with odd parity. The outer face is the dual root and is the only
// face left unconstrained.
inline KasteleynOrientation kasteleyn_orient(const PlanarEmbeddedGraph& g) {
    validate_embedding(g);
    if (!is_connected(g)) throw std::runtime_error("kasteleyn_orient: input must be connected");
    int m = g.edge_count();
    auto faces = trace_faces(g);

    // spanning tree via BFS over ascending edge ids
    std::vector<char> tree(m, 0), seen(g.n + 1, 0);
    {
        std::vector<std::vector<int>> inc(g.n + 1);
        for (int e = 0; e < m; ++e) {
            inc[g.edges[e].u].push_back(e);
            inc[g.edges[e].v].push_back(e);
        }
        std::vector<int> queue{1};
        seen[1] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int e : inc[v]) {
                int w = g.other_end(e, v);
                if (seen[w]) continue;
                seen[w] = 1;
                tree[e] = 1;
                queue.push_back(w);
            }
        }
    }

    // face id of each half-edge
    std::vector<int> face_of(2 * static_cast<std::size_t>(m), -1);
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
        for (HalfEdge h : faces[f]) face_of[2 * h.edge + (h.rev ? 1 : 0)] = f;

    // dual spanning tree on faces; edges are the non-tree primal edges
    int outer = outer_face_index(g, faces);
    int nf = static_cast<int>(faces.size());
    std::vector<std::vector<std::pair<int, int>>> dual(nf);  // (face, primal edge)
    for (int e = 0; e < m; ++e) {
        if (tree[e]) continue;
        int f0 = face_of[2 * e], f1 = face_of[2 * e + 1];
        dual[f0].push_back({f1, e});
        dual[f1].push_back({f0, e});
    }
    std::vector<int> order, parent_edge(nf, -1);
    std::vector<char> fseen(nf, 0);
    order.push_back(outer);
    fseen[outer] = 1;
    for (std::size_t qi = 0; qi < order.size(); ++qi)
        for (auto [f2, e] : dual[order[qi]])
            if (!fseen[f2]) {
                fseen[f2] = 1;
                parent_edge[f2] = e;
                order.push_back(f2);
            }

    KasteleynOrientation orient;
    orient.direction.assign(m, {0, 0});
    std::vector<char> decided(m, 0);
    for (int e = 0; e < m; ++e)
        if (tree[e]) {
            orient.direction[e] = {g.edges[e].u, g.edges[e].v};
            decided[e] = 1;
        }
    // children before parents, so each face has exactly one open edge
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int f = *it;
        if (f == outer) continue;
        int open = parent_edge[f];
        int agree = 0;
        HalfEdge open_half{};
        for (HalfEdge h : faces[f]) {
            if (h.edge == open) {
                open_half = h;
                continue;
            }
            if (orient.direction[h.edge].first == half_edge_from(g, h)) ++agree;
        }
        int from = half_edge_from(g, open_half), to = half_edge_to(g, open_half);
        orient.direction[open] = agree % 2 == 0 ? std::make_pair(from, to) : std::make_pair(to, from);
        decided[open] = 1;
    }
    for (int e = 0; e < m; ++e)
        if (!decided[e]) throw std::logic_error("kasteleyn_orient: undecided edge");
    return orient;
}

// Number of boundary half-edges of the face that agree with the chosen
// orientation; the construction makes this odd on every inner face.
inline int face_clockwise_count(const PlanarEmbeddedGraph& g, const KasteleynOrientation& o,
                                const std::vector<HalfEdge>& face) {
    int agree = 0;
    for (HalfEdge h : face)
        if (o.direction[h.edge].first == half_edge_from(g, h)) ++agree;
    return agree;
}

// Perfect-matching evaluator over edge-color classes. The value is the
// signed Pfaffian of the Kasteleyn matrix with each edge variable
// replaced by its class value; the sign is constant across all
// zero-patterns of one instance, so a nonzero sieve output certifies a
// witnessing matching.
class MatchingEvaluator final : public SievedEvaluator {
public:
    MatchingEvaluator(const PlanarEmbeddedGraph& g, KasteleynOrientation orientation,
                      ColorPartition partition)
        : g_(&g), orient_(std::move(orientation)), part_(std::move(partition)) {
        if (static_cast<int>(orient_.direction.size()) != g.edge_count())
            throw std::invalid_argument("orientation does not match edge list");
        if (part_.universe() != g.color_count)
            throw std::invalid_argument("partition must cover all edge colors");
    }

    int num_classes() const override { return part_.num_classes; }

    Int evaluate_zeroed(std::uint64_t zeroed) const override {
        check_mask(zeroed);
        if (g_->n % 2 != 0) return 0;  // no perfect matching on odd order
        SkewMatrix a(g_->n);
        for (int e = 0; e < g_->edge_count(); ++e) {
            int cls = part_.class_of[g_->edges[e].color];
            if (cls != kUnsieved && ((zeroed >> cls) & 1)) continue;
            auto [from, to] = orient_.direction[e];
            a.set_pair(from - 1, to - 1, 1);
        }
        return signed_pfaffian(a);
    }

private:
    const PlanarEmbeddedGraph* g_;
    KasteleynOrientation orient_;
    ColorPartition part_;
};

inline MatchingEvaluator build_matching_evaluator(const PlanarEmbeddedGraph& g,
                                                  const KasteleynOrientation& orientation,
                                                  ColorPartition partition_over_colors) {
    return MatchingEvaluator(g, orientation, std::move(partition_over_colors));
}

}  // namespace polysieve
