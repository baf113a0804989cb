#pragma once

// Directed multigraphs with optional arc colors, the text format they are
// read from, and the structural queries the solvers build on.
//
// Vertices are 1-based. Arc list order is the canonical iteration order;
// every routine that touches arcs scans them in ascending index so results
// are deterministic.

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polysieve/errors.hpp"

namespace polysieve {

struct Arc {
    int tail = 0;
    int head = 0;
    int color = 0;  // 0 when the instance is uncolored
};

struct ArcColoredDigraph {
    int n = 0;
    std::vector<Arc> arcs;
    int color_count = 0;  // colors form the contiguous range [1, color_count]

    bool colored() const { return color_count > 0; }
    int arc_count() const { return static_cast<int>(arcs.size()); }
};

// Validates endpoints, rejects self-loops and mixed colored/uncolored arc
// lists, and remaps colors onto [1..t] in first-occurrence order.
inline ArcColoredDigraph make_digraph(int n, std::vector<Arc> arcs) {
    if (n < 1) throw std::invalid_argument("digraph needs at least one vertex");
    bool any_colored = false, any_uncolored = false;
    for (const Arc& a : arcs) {
        if (a.tail < 1 || a.tail > n || a.head < 1 || a.head > n)
            throw std::invalid_argument("arc endpoint out of range");
        if (a.tail == a.head) throw std::invalid_argument("self-loop");
        if (a.color < 0) throw std::invalid_argument("negative arc color");
        (a.color > 0 ? any_colored : any_uncolored) = true;
    }
    if (any_colored && any_uncolored)
        throw std::invalid_argument("mixed colored and uncolored arcs");
    ArcColoredDigraph d;
    d.n = n;
    if (any_colored) {
        std::map<int, int> remap;
        for (Arc& a : arcs) {
            auto [it, fresh] = remap.try_emplace(a.color, static_cast<int>(remap.size()) + 1);
            (void)fresh;
            a.color = it->second;
        }
        d.color_count = static_cast<int>(remap.size());
    }
    d.arcs = std::move(arcs);
    return d;
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline long parse_long(const std::string& tok, int line, const char* what) {
    try {
        std::size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
    }
}

}  // namespace detail

// Line-oriented format:
//   p digraph <n> <m>
//   a <tail> <head> [<color>]
// '#' starts a comment. Colors, when present, must appear on every arc.
inline ArcColoredDigraph parse_digraph(std::istream& in) {
    std::string line;
    int lineno = 0;
    long n = -1, m = -1;
    std::vector<Arc> arcs;
    int header_line = 0;
    bool saw_colored = false, saw_uncolored = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "p") {
            if (n >= 0) throw ParseError(lineno, "duplicate header");
            if (toks.size() != 4 || toks[1] != "digraph")
                throw ParseError(lineno, "expected 'p digraph <n> <m>'");
            n = detail::parse_long(toks[2], lineno, "vertex count");
            m = detail::parse_long(toks[3], lineno, "arc count");
            if (n < 1 || m < 0) throw ParseError(lineno, "invalid graph size");
            header_line = lineno;
        } else if (toks[0] == "a") {
            if (n < 0) throw ParseError(lineno, "arc before header");
            if (toks.size() != 3 && toks.size() != 4)
                throw ParseError(lineno, "expected 'a <tail> <head> [<color>]'");
            Arc a;
            a.tail = static_cast<int>(detail::parse_long(toks[1], lineno, "tail"));
            a.head = static_cast<int>(detail::parse_long(toks[2], lineno, "head"));
            if (a.tail < 1 || a.tail > n || a.head < 1 || a.head > n)
                throw ParseError(lineno, "vertex id out of range");
            if (a.tail == a.head) throw ParseError(lineno, "self-loop");
            if (toks.size() == 4) {
                a.color = static_cast<int>(detail::parse_long(toks[3], lineno, "color"));
                if (a.color < 1) throw ParseError(lineno, "color must be positive");
                saw_colored = true;
            } else {
                saw_uncolored = true;
            }
            if (saw_colored && saw_uncolored)
                throw ParseError(lineno, "mixed colored and uncolored arcs");
            arcs.push_back(a);
            if (static_cast<long>(arcs.size()) > m) throw ParseError(lineno, "more arcs than declared");
        } else {
            throw ParseError(lineno, "unknown line type '" + toks[0] + "'");
        }
    }
    if (n < 0) throw ParseError(lineno + 1, "missing header");
    if (static_cast<long>(arcs.size()) != m)
        throw ParseError(header_line, "declared " + std::to_string(m) + " arcs, found " +
                                          std::to_string(arcs.size()));
    return make_digraph(static_cast<int>(n), std::move(arcs));
}

inline ArcColoredDigraph parse_digraph(const std::string& text) {
    std::istringstream is(text);
    return parse_digraph(is);
}

inline std::string serialize_digraph(const ArcColoredDigraph& d) {
    std::ostringstream os;
    os << "p digraph " << d.n << ' ' << d.arcs.size() << '\n';
    for (const Arc& a : d.arcs) {
        os << "a " << a.tail << ' ' << a.head;
        if (d.colored()) os << ' ' << a.color;
        os << '\n';
    }
    return os.str();
}

// A set of arcs no two of which share an endpoint (heads and tails jointly).
struct ArcMatching {
    std::vector<int> arc_ids;  // ascending
    int size() const { return static_cast<int>(arc_ids.size()); }
};

inline void validate_matching(const ArcColoredDigraph& d, const ArcMatching& m) {
    std::vector<char> used(d.n + 1, 0);
    for (int id : m.arc_ids) {
        if (id < 0 || id >= d.arc_count()) throw std::invalid_argument("matching: bad arc id");
        const Arc& a = d.arcs[id];
        if (used[a.tail] || used[a.head]) throw std::invalid_argument("matching: shared endpoint");
        used[a.tail] = used[a.head] = 1;
    }
}

// Spanning out-tree: parent_arc[v] is the arc entering v, -1 for the root.
struct OutBranching {
    int root = 0;
    std::vector<int> parent_arc;  // indexed 1..n

    int parent_of(int v) const { return parent_arc[v]; }
};

inline bool is_valid_out_branching(const ArcColoredDigraph& d, const OutBranching& b) {
    if (b.root < 1 || b.root > d.n) return false;
    if (static_cast<int>(b.parent_arc.size()) != d.n + 1) return false;
    for (int v = 1; v <= d.n; ++v) {
        if (v == b.root) {
            if (b.parent_arc[v] != -1) return false;
            continue;
        }
        int id = b.parent_arc[v];
        if (id < 0 || id >= d.arc_count()) return false;
        if (d.arcs[id].head != v) return false;
    }
    // every non-root vertex must reach the root through parents, without cycles
    for (int v = 1; v <= d.n; ++v) {
        int cur = v, steps = 0;
        while (cur != b.root) {
            if (++steps > d.n) return false;
            cur = d.arcs[b.parent_arc[cur]].tail;
        }
    }
    return true;
}

inline int internal_vertex_count(const ArcColoredDigraph& d, const OutBranching& b) {
    std::vector<char> internal(d.n + 1, 0);
    for (int v = 1; v <= d.n; ++v)
        if (v != b.root) internal[d.arcs[b.parent_arc[v]].tail] = 1;
    int c = 0;
    for (int v = 1; v <= d.n; ++v) c += internal[v];
    return c;
}

namespace detail {

// Kosaraju with iterative DFS; component ids follow reverse finish order.
inline std::vector<int> scc_ids(const ArcColoredDigraph& d, int& comp_count) {
    int n = d.n;
    std::vector<std::vector<int>> out(n + 1), in(n + 1);
    for (const Arc& a : d.arcs) {
        out[a.tail].push_back(a.head);
        in[a.head].push_back(a.tail);
    }
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> seen(n + 1, 0);
    for (int s = 1; s <= n; ++s) {
        if (seen[s]) continue;
        std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
        seen[s] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < out[v].size()) {
                int w = out[v][i++];
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp(n + 1, -1);
    comp_count = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] >= 0) continue;
        std::vector<int> stack{*it};
        comp[*it] = comp_count;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : in[v])
                if (comp[w] < 0) {
                    comp[w] = comp_count;
                    stack.push_back(w);
                }
        }
        ++comp_count;
    }
    return comp;
}

}  // namespace detail

// A digraph has an out-branching iff exactly one strongly connected
// component has no incoming arcs; any vertex of that component can serve
// as the root. Returns that component's vertices ascending, or empty.
inline std::vector<int> has_out_branching(const ArcColoredDigraph& d) {
    int comp_count = 0;
    std::vector<int> comp = detail::scc_ids(d, comp_count);
    std::vector<char> has_in(comp_count, 0);
    for (const Arc& a : d.arcs)
        if (comp[a.tail] != comp[a.head]) has_in[comp[a.head]] = 1;
    int source = -1;
    for (int c = 0; c < comp_count; ++c) {
        if (has_in[c]) continue;
        if (source >= 0) return {};  // two source components
        source = c;
    }
    std::vector<int> roots;
    for (int v = 1; v <= d.n; ++v)
        if (comp[v] == source) roots.push_back(v);
    return roots;
}

}  // namespace polysieve
