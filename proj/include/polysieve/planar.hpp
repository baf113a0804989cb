#pragma once

// Edge-colored graphs with a combinatorial embedding (rotation system).
// Embeddings are inputs, not computed: the parser validates the supplied
// rotation system by tracing faces and checking Euler's formula on every
// connected component.

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "polysieve/errors.hpp"

namespace polysieve {

struct PlanarEdge {
    int u = 0;
    int v = 0;
    int color = 0;
};

struct PlanarEmbeddedGraph {
    int n = 0;
    std::vector<PlanarEdge> edges;            // edge ids are 0-based positions
    std::vector<std::vector<int>> rotation;   // rotation[v] = cyclic incident edge ids, v in 1..n
    int color_count = 0;

    int edge_count() const { return static_cast<int>(edges.size()); }
    int other_end(int edge, int v) const {
        const PlanarEdge& e = edges[edge];
        return e.u == v ? e.v : e.u;
    }
};

// Directed half-edge: edge id plus orientation flag (rev=false is u->v).
struct HalfEdge {
    int edge = 0;
    bool rev = false;

    bool operator==(const HalfEdge&) const = default;
};

inline int half_edge_from(const PlanarEmbeddedGraph& g, HalfEdge h) {
    return h.rev ? g.edges[h.edge].v : g.edges[h.edge].u;
}
inline int half_edge_to(const PlanarEmbeddedGraph& g, HalfEdge h) {
    return h.rev ? g.edges[h.edge].u : g.edges[h.edge].v;
}

// Walks every face once: from a half-edge ending at v, the walk continues
// along the successor of that edge in rotation[v]. Each face is the list
// of its boundary half-edges in traversal order.
inline std::vector<std::vector<HalfEdge>> trace_faces(const PlanarEmbeddedGraph& g) {
    int m = g.edge_count();
    // position of each edge in each endpoint's rotation
    std::vector<int> pos_u(m, -1), pos_v(m, -1);
    for (int v = 1; v <= g.n; ++v)
        for (int i = 0; i < static_cast<int>(g.rotation[v].size()); ++i) {
            int e = g.rotation[v][i];
            (g.edges[e].u == v ? pos_u[e] : pos_v[e]) = i;
        }
    auto next_half_edge = [&](HalfEdge h) {
        int v = half_edge_to(g, h);
        int pos = g.edges[h.edge].u == v ? pos_u[h.edge] : pos_v[h.edge];
        const auto& rot = g.rotation[v];
        int e2 = rot[(pos + 1) % rot.size()];
        return HalfEdge{e2, g.edges[e2].u != v};
    };
    std::vector<std::vector<HalfEdge>> faces;
    std::vector<char> visited(2 * static_cast<std::size_t>(m), 0);
    for (int e = 0; e < m; ++e)
        for (int r = 0; r < 2; ++r) {
            if (visited[2 * e + r]) continue;
            std::vector<HalfEdge> face;
            HalfEdge h{e, r == 1};
            while (!visited[2 * h.edge + (h.rev ? 1 : 0)]) {
                visited[2 * h.edge + (h.rev ? 1 : 0)] = 1;
                face.push_back(h);
                h = next_half_edge(h);
            }
            faces.push_back(std::move(face));
        }
    return faces;
}

namespace detail {

inline std::vector<int> planar_component_ids(const PlanarEmbeddedGraph& g) {
    std::vector<int> comp(g.n + 1, -1);
    int c = 0;
    for (int s = 1; s <= g.n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = c;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int e : g.rotation[v]) {
                int w = g.other_end(e, v);
                if (comp[w] < 0) {
                    comp[w] = c;
                    stack.push_back(w);
                }
            }
        }
        ++c;
    }
    return comp;
}

}  // namespace detail

inline bool is_connected(const PlanarEmbeddedGraph& g) {
    auto comp = detail::planar_component_ids(g);
    for (int v = 1; v <= g.n; ++v)
        if (comp[v] != 0) return false;
    return true;
}

// Rotation coverage plus Euler's formula n - m + f = 2 on each connected
// component that carries edges. Throws when the rotation system does not
// describe a planar embedding.
inline void validate_embedding(const PlanarEmbeddedGraph& g) {
    int m = g.edge_count();
    if (static_cast<int>(g.rotation.size()) != g.n + 1)
        throw std::invalid_argument("rotation list missing for some vertex");
    std::vector<int> seen(m, 0);
    for (int v = 1; v <= g.n; ++v)
        for (int e : g.rotation[v]) {
            if (e < 0 || e >= m) throw std::invalid_argument("rotation names unknown edge");
            if (g.edges[e].u != v && g.edges[e].v != v)
                throw std::invalid_argument("rotation lists a non-incident edge");
            ++seen[e];
        }
    for (int e = 0; e < m; ++e)
        if (seen[e] != 2) throw std::invalid_argument("every edge must appear in exactly its two endpoints' rotations");
    auto faces = trace_faces(g);
    auto comp = detail::planar_component_ids(g);
    int comps = 0;
    for (int v = 1; v <= g.n; ++v) comps = std::max(comps, comp[v] + 1);
    std::vector<int> nv(comps, 0), ne(comps, 0), nf(comps, 0);
    for (int v = 1; v <= g.n; ++v) ++nv[comp[v]];
    for (const PlanarEdge& e : g.edges) ++ne[comp[e.u]];
    for (const auto& f : faces) ++nf[comp[half_edge_from(g, f.front())]];
    for (int c = 0; c < comps; ++c) {
        if (ne[c] == 0) continue;  // isolated vertex, nothing to trace
        if (nv[c] - ne[c] + nf[c] != 2)
            throw std::runtime_error("not a planar embedding (Euler check failed)");
    }
}

// Line-oriented format:
//   p planar <n> <m>
//   e <u> <v> <color>            (m lines; edge ids are 1-based file order)
//   r <v> <deg> <edge ids...>    (one line per vertex, cyclic order)
inline PlanarEmbeddedGraph parse_planar(std::istream& in) {
    std::string line;
    int lineno = 0;
    long n = -1, m = -1;
    PlanarEmbeddedGraph g;
    std::vector<char> have_rotation;
    std::map<std::pair<int, int>, int> edge_seen;
    std::map<int, int> color_remap;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "p") {
            if (n >= 0) throw ParseError(lineno, "duplicate header");
            if (toks.size() != 4 || toks[1] != "planar")
                throw ParseError(lineno, "expected 'p planar <n> <m>'");
            n = detail::parse_long(toks[2], lineno, "vertex count");
            m = detail::parse_long(toks[3], lineno, "edge count");
            if (n < 1 || m < 0) throw ParseError(lineno, "invalid graph size");
            g.n = static_cast<int>(n);
            g.rotation.assign(g.n + 1, {});
            have_rotation.assign(g.n + 1, 0);
        } else if (toks[0] == "e") {
            if (n < 0) throw ParseError(lineno, "edge before header");
            if (toks.size() != 4) throw ParseError(lineno, "expected 'e <u> <v> <color>'");
            PlanarEdge e;
            e.u = static_cast<int>(detail::parse_long(toks[1], lineno, "endpoint"));
            e.v = static_cast<int>(detail::parse_long(toks[2], lineno, "endpoint"));
            int raw = static_cast<int>(detail::parse_long(toks[3], lineno, "color"));
            if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
                throw ParseError(lineno, "vertex id out of range");
            if (e.u == e.v) throw ParseError(lineno, "self-loop");
            if (raw < 1) throw ParseError(lineno, "color must be positive");
            auto key = std::minmax(e.u, e.v);
            if (!edge_seen.emplace(std::make_pair(key.first, key.second), g.edge_count()).second)
                throw ParseError(lineno, "parallel edge");
            auto [it, fresh] = color_remap.try_emplace(raw, static_cast<int>(color_remap.size()) + 1);
            (void)fresh;
            e.color = it->second;
            if (g.edge_count() >= m) throw ParseError(lineno, "more edges than declared");
            g.edges.push_back(e);
        } else if (toks[0] == "r") {
            if (n < 0) throw ParseError(lineno, "rotation before header");
            if (static_cast<long>(g.edges.size()) != m)
                throw ParseError(lineno, "rotations must follow the complete edge list");
            if (toks.size() < 3) throw ParseError(lineno, "expected 'r <v> <deg> <edges...>'");
            int v = static_cast<int>(detail::parse_long(toks[1], lineno, "vertex"));
            long deg = detail::parse_long(toks[2], lineno, "degree");
            if (v < 1 || v > n) throw ParseError(lineno, "vertex id out of range");
            if (have_rotation[v]) throw ParseError(lineno, "duplicate rotation line");
            if (static_cast<long>(toks.size()) != 3 + deg)
                throw ParseError(lineno, "degree does not match edge list length");
            for (long i = 0; i < deg; ++i) {
                long e = detail::parse_long(toks[3 + i], lineno, "edge id");
                if (e < 1 || e > m) throw ParseError(lineno, "edge id out of range");
                g.rotation[v].push_back(static_cast<int>(e - 1));
            }
            have_rotation[v] = 1;
        } else {
            throw ParseError(lineno, "unknown line type '" + toks[0] + "'");
        }
    }
    if (n < 0) throw ParseError(lineno + 1, "missing header");
    if (static_cast<long>(g.edges.size()) != m) throw ParseError(lineno, "fewer edges than declared");
    for (int v = 1; v <= g.n; ++v)
        if (!have_rotation[v])
            throw ParseError(lineno, "missing rotation for vertex " + std::to_string(v));
    g.color_count = static_cast<int>(color_remap.size());
    validate_embedding(g);
    return g;
}

inline PlanarEmbeddedGraph parse_planar(const std::string& text) {
    std::istringstream is(text);
    return parse_planar(is);
}

inline std::string serialize_planar(const PlanarEmbeddedGraph& g) {
    std::ostringstream os;
    os << "p planar " << g.n << ' ' << g.edges.size() << '\n';
    for (const PlanarEdge& e : g.edges) os << "e " << e.u << ' ' << e.v << ' ' << e.color << '\n';
    for (int v = 1; v <= g.n; ++v) {
        os << "r " << v << ' ' << g.rotation[v].size();
        for (int e : g.rotation[v]) os << ' ' << e + 1;
        os << '\n';
    }
    return os.str();
}

}  // namespace polysieve
