#pragma once

// The three decision algorithms, wired from coloring guides, hash
// families, evaluators and sieves. Poly mode streams a perfect hash
// family through the full sieve; exp mode stretches the color budget by
// alpha* and answers all subset questions from one shared table per
// coloring. Work is distributed over fixed-size batches of colorings, so
// answers and reported statistics never depend on the thread count.

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "polysieve/alpha.hpp"
#include "polysieve/branching.hpp"
#include "polysieve/digraph.hpp"
#include "polysieve/kasteleyn.hpp"
#include "polysieve/kirchhoff.hpp"
#include "polysieve/matching.hpp"
#include "polysieve/planar.hpp"
#include "polysieve/sieve.hpp"
#include "polysieve/splitters.hpp"

namespace polysieve {

enum class SpaceMode { Poly, Exp };

struct SolveConfig {
    long k = 1;
    SpaceMode space_mode = SpaceMode::Poly;
    double alpha_star = kAlphaStar;
    std::size_t memory_budget = std::size_t(1) << 30;  // bytes for shared-sieve tables
    int parallelism = 1;
    bool recover_witness = false;  // k-IOB only
};

struct SolveStats {
    unsigned long long colorings = 0;  // color partitions sieved
    unsigned long long evaluator_calls = 0;
    long long elapsed_ms = 0;
    std::size_t peak_table_entries = 0;

    void merge(const SolveStats& o) {
        colorings += o.colorings;
        evaluator_calls += o.evaluator_calls;
        peak_table_entries = std::max(peak_table_entries, o.peak_table_entries);
    }
};

struct SolveReport {
    bool yes = false;
    std::string reason;  // set on structural answers
    std::optional<OutBranching> witness;
    SolveStats stats;
};

namespace detail {

inline constexpr unsigned long long kScanBatch = 32;

// Smallest index in [0, count) where pred holds. Batches are fully
// resolved before the verdict, so the reported index (and with it every
// statistic derived from it) is a pure function of pred, not of the
// worker count.
inline std::optional<unsigned long long> first_hit(
    unsigned long long count, int threads, const std::function<bool(unsigned long long)>& pred) {
    threads = std::max(1, threads);
    for (unsigned long long lo = 0; lo < count; lo += kScanBatch) {
        const unsigned long long hi = std::min(count, lo + kScanBatch);
        const unsigned long long width = hi - lo;
        std::vector<char> hits(width, 0);
        if (threads == 1) {
            for (unsigned long long i = 0; i < width; ++i) {
                hits[i] = pred(lo + i);
                if (hits[i]) break;  // later indices in the batch are uncounted anyway
            }
        } else {
            int workers = static_cast<int>(std::min<unsigned long long>(threads, width));
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(workers);
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&, w]() {
                    try {
                        for (unsigned long long i = w; i < width; i += workers)
                            hits[i] = pred(lo + i);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            for (auto& th : pool) th.join();
            for (auto& err : errors)
                if (err) std::rethrow_exception(err);
        }
        for (unsigned long long i = 0; i < width; ++i)
            if (hits[i]) return lo + i;
    }
    return std::nullopt;
}

class StopWatch {
public:
    StopWatch() : start_(std::chrono::steady_clock::now()) {}
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// One family scan: build the partition for each index, sieve, stop at the
// first nonzero. Accounts colorings up to and including the hit.
struct ScanOutcome {
    bool hit = false;
    unsigned long long colorings = 0;
};

inline ScanOutcome scan_family(unsigned long long family_size, int threads,
                               unsigned long long evals_per_coloring, SolveStats& stats,
                               const std::function<bool(unsigned long long)>& pred) {
    auto hit = first_hit(family_size, threads, pred);
    ScanOutcome out;
    out.hit = hit.has_value();
    out.colorings = out.hit ? *hit + 1 : family_size;
    stats.colorings += out.colorings;
    stats.evaluator_calls += out.colorings * evals_per_coloring;
    return out;
}

inline std::vector<long> ascending_combination_first(long c) {
    std::vector<long> comb(static_cast<std::size_t>(c));
    for (long i = 0; i < c; ++i) comb[i] = i;
    return comb;
}

inline bool ascending_combination_next(std::vector<long>& comb, long limit) {
    long c = static_cast<long>(comb.size());
    long i = c - 1;
    while (i >= 0 && comb[i] == limit - (c - i)) --i;
    if (i < 0) return false;
    ++comb[i];
    for (long j = i + 1; j < c; ++j) comb[j] = comb[j - 1] + 1;
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// k-Internal Out-Branching.
//
// Maximum matching M of size t bounds the structure: t > k admits an
// immediate constructive yes. Otherwise, for every root candidate, every
// c and every M' of c matching arcs, the guide fixes singleton classes
// for M' endpoints and pair classes for the remaining matching arcs,
// leaving k' = k - t - c classes to hash over the unmatched vertices.

namespace detail {

struct KiobGuide {
    std::vector<int> base_class_of;  // vertex -> class, hashed classes unassigned (-1)
    int guide_classes = 0;
};

inline KiobGuide kiob_guide(const ArcColoredDigraph& d, const ArcMatching& m,
                            const std::vector<char>& chosen) {
    KiobGuide g;
    g.base_class_of.assign(d.n + 1, -1);
    int next = 0;
    for (std::size_t i = 0; i < m.arc_ids.size(); ++i) {
        const Arc& a = d.arcs[m.arc_ids[i]];
        if (chosen[i]) {  // both endpoints must come out internal
            g.base_class_of[a.tail] = next++;
            g.base_class_of[a.head] = next++;
        } else {  // at least one endpoint internal
            g.base_class_of[a.tail] = next;
            g.base_class_of[a.head] = next;
            ++next;
        }
    }
    g.guide_classes = next;
    return g;
}

}  // namespace detail

inline SolveReport solve_kiob(const ArcColoredDigraph& d, const SolveConfig& cfg);
inline OutBranching recover_kiob_witness(const ArcColoredDigraph& d, const SolveConfig& cfg);

inline SolveReport solve_kiob(const ArcColoredDigraph& d, const SolveConfig& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("k must be at least 1");
    detail::StopWatch watch;
    SolveReport rep;
    std::vector<int> roots = has_out_branching(d);
    if (roots.empty()) {
        rep.reason = "no out-branching";
        rep.stats.elapsed_ms = watch.ms();
        return rep;
    }
    ArcMatching m = maximum_matching(d);
    const long t = m.size();
    const long k = cfg.k;
    if (t > k) {
        // every matching arc keeps an internal endpoint after the
        // exchange, and those endpoints are pairwise distinct
        rep.yes = true;
        rep.reason = "matching larger than k";
        if (cfg.recover_witness) {
            OutBranching b = exchange_out_branching(d, m);
            if (internal_vertex_count(d, b) < k)
                throw std::logic_error("exchange witness below k internal vertices");
            rep.witness = b;
        }
        rep.stats.elapsed_ms = watch.ms();
        return rep;
    }
    std::vector<char> in_matching(d.n + 1, 0);
    for (int id : m.arc_ids) {
        in_matching[d.arcs[id].tail] = 1;
        in_matching[d.arcs[id].head] = 1;
    }
    std::vector<int> outside;
    for (int v = 1; v <= d.n; ++v)
        if (!in_matching[v]) outside.push_back(v);

    bool found = false;
    for (std::size_t ri = 0; ri < roots.size() && !found; ++ri) {
        const int root = roots[ri];
        for (long c = 0; c <= std::min(t, k - t) && !found; ++c) {
            const long k_hash = k - t - c;
            if (k_hash > static_cast<long>(outside.size())) continue;
            std::vector<long> comb = detail::ascending_combination_first(c);
            do {
                std::vector<char> chosen(m.arc_ids.size(), 0);
                for (long idx : comb) chosen[idx] = 1;
                detail::KiobGuide guide = detail::kiob_guide(d, m, chosen);

                auto partition_for = [&](const std::vector<int>& hash_vec,
                                         int hash_classes) {
                    std::vector<int> cls = guide.base_class_of;
                    for (std::size_t i = 0; i < outside.size(); ++i)
                        cls[outside[i]] = guide.guide_classes + hash_vec[i] - 1;
                    std::vector<ClassOrigin> origin(guide.guide_classes, ClassOrigin::Guide);
                    origin.insert(origin.end(), hash_classes, ClassOrigin::Hashed);
                    return make_partition(d.n, guide.guide_classes + hash_classes, std::move(cls),
                                          std::move(origin));
                };

                if (k_hash == 0) {
                    // guide classes alone make up the k colors; unmatched
                    // vertices fall outside the sieved variable set
                    std::vector<int> cls = guide.base_class_of;
                    for (int v : outside) cls[v] = kUnsieved;
                    std::vector<ClassOrigin> origin(guide.guide_classes, ClassOrigin::Guide);
                    KirchhoffEvaluator ev(d, root,
                                          make_partition(d.n, guide.guide_classes, std::move(cls),
                                                         std::move(origin)));
                    rep.stats.colorings += 1;
                    rep.stats.evaluator_calls += 1ull << guide.guide_classes;
                    if (sieve_full(ev) != 0) found = true;
                    continue;
                }

                if (cfg.space_mode == SpaceMode::Poly) {
                    SplitterPtr family =
                        perfect_hash_family(static_cast<long>(outside.size()), k_hash);
                    auto pred = [&](unsigned long long i) {
                        std::vector<int> vec = family->query(Int(i));
                        KirchhoffEvaluator ev(d, root, partition_for(vec, static_cast<int>(k_hash)));
                        return sieve_full(ev) != 0;
                    };
                    auto scan = detail::scan_family(
                        static_cast<unsigned long long>(family->size()), cfg.parallelism,
                        1ull << (guide.guide_classes + k_hash), rep.stats, pred);
                    if (scan.hit) found = true;
                } else {
                    SplitterPtr family = greedy_splitter(static_cast<long>(outside.size()), k_hash,
                                                         cfg.alpha_star);
                    const int t_hash = static_cast<int>(family->spec().colors);
                    const int classes = guide.guide_classes + t_hash;
                    const std::uint64_t mandatory =
                        ((std::uint64_t(1) << guide.guide_classes) - 1);
                    std::size_t table = std::size_t(1) << classes;
                    rep.stats.peak_table_entries = std::max(rep.stats.peak_table_entries, table);
                    auto pred = [&](unsigned long long i) {
                        std::vector<int> vec = family->query(Int(i));
                        KirchhoffEvaluator ev(d, root, partition_for(vec, t_hash));
                        return sieve_shared_scan(ev, guide.guide_classes + static_cast<int>(k_hash),
                                                 mandatory, cfg.memory_budget)
                            .hit;
                    };
                    auto scan = detail::scan_family(
                        static_cast<unsigned long long>(family->size()), cfg.parallelism,
                        1ull << classes, rep.stats, pred);
                    if (scan.hit) found = true;
                }
            } while (!found && detail::ascending_combination_next(comb, t));
        }
    }
    rep.yes = found;
    if (found && cfg.recover_witness && !rep.witness) {
        SolveConfig plain = cfg;
        plain.recover_witness = false;
        rep.witness = recover_kiob_witness(d, plain);
    }
    rep.stats.elapsed_ms = watch.ms();
    return rep;
}

// Arc-deletion self-reduction: drop every arc whose removal keeps the
// instance positive; what remains is a k-internal out-branching.
inline OutBranching recover_kiob_witness(const ArcColoredDigraph& d, const SolveConfig& cfg) {
    SolveConfig plain = cfg;
    plain.recover_witness = false;
    if (!solve_kiob(d, plain).yes)
        throw std::invalid_argument("recover_kiob_witness: not a yes-instance");
    std::vector<char> keep(d.arcs.size(), 1);
    auto subgraph = [&](int skip) {
        std::vector<Arc> arcs;
        for (int id = 0; id < d.arc_count(); ++id)
            if (keep[id] && id != skip) arcs.push_back(d.arcs[id]);
        return make_digraph(d.n, std::move(arcs));
    };
    for (int id = 0; id < d.arc_count(); ++id) {
        if (!keep[id]) continue;
        if (solve_kiob(subgraph(id), plain).yes) keep[id] = 0;
    }
    OutBranching b;
    b.parent_arc.assign(d.n + 1, -1);
    std::vector<char> has_parent(d.n + 1, 0);
    for (int id = 0; id < d.arc_count(); ++id) {
        if (!keep[id]) continue;
        int head = d.arcs[id].head;
        if (has_parent[head]) throw std::logic_error("recover: vertex with two parents");
        has_parent[head] = 1;
        b.parent_arc[head] = id;
    }
    b.root = 0;
    for (int v = 1; v <= d.n; ++v)
        if (!has_parent[v]) {
            if (b.root != 0) throw std::logic_error("recover: two roots");
            b.root = v;
        }
    if (b.root == 0 || !is_valid_out_branching(d, b))
        throw std::logic_error("recover: remainder is not an out-branching");
    if (internal_vertex_count(d, b) < cfg.k)
        throw std::logic_error("recover: witness below k internal vertices");
    return b;
}

// ---------------------------------------------------------------------------
// k-Colorful Out-Branching: no coloring guide; the hash family recolors
// the arc colors themselves.

inline SolveReport solve_colorful_ob(const ArcColoredDigraph& d, const SolveConfig& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("k must be at least 1");
    if (!d.colored()) throw std::invalid_argument("solve_colorful_ob: uncolored arcs");
    detail::StopWatch watch;
    SolveReport rep;
    const long k = cfg.k;
    if (d.color_count < k) {
        rep.reason = "fewer than k distinct arc colors";
        rep.stats.elapsed_ms = watch.ms();
        return rep;
    }
    std::vector<int> roots = has_out_branching(d);
    if (roots.empty()) {
        rep.reason = "no out-branching";
        rep.stats.elapsed_ms = watch.ms();
        return rep;
    }
    bool found = false;
    for (std::size_t ri = 0; ri < roots.size() && !found; ++ri) {
        const int root = roots[ri];
        if (cfg.space_mode == SpaceMode::Poly) {
            SplitterPtr family = perfect_hash_family(d.color_count, k);
            auto pred = [&](unsigned long long i) {
                std::vector<int> vec = family->query(Int(i));
                std::vector<int> cls(d.color_count + 1, 0);
                for (int c = 1; c <= d.color_count; ++c) cls[c] = vec[c - 1] - 1;
                ColorKirchhoffEvaluator ev(
                    d, root, make_partition(d.color_count, static_cast<int>(k), std::move(cls)));
                return sieve_full(ev) != 0;
            };
            auto scan = detail::scan_family(static_cast<unsigned long long>(family->size()),
                                            cfg.parallelism, 1ull << k, rep.stats, pred);
            if (scan.hit) found = true;
        } else {
            SplitterPtr family = greedy_splitter(d.color_count, k, cfg.alpha_star);
            const int t_hash = static_cast<int>(family->spec().colors);
            rep.stats.peak_table_entries =
                std::max(rep.stats.peak_table_entries, std::size_t(1) << t_hash);
            auto pred = [&](unsigned long long i) {
                std::vector<int> vec = family->query(Int(i));
                std::vector<int> cls(d.color_count + 1, 0);
                for (int c = 1; c <= d.color_count; ++c) cls[c] = vec[c - 1] - 1;
                ColorKirchhoffEvaluator ev(d, root,
                                           make_partition(d.color_count, t_hash, std::move(cls)));
                return sieve_shared_scan(ev, static_cast<int>(k), 0, cfg.memory_budget).hit;
            };
            auto scan = detail::scan_family(static_cast<unsigned long long>(family->size()),
                                            cfg.parallelism, 1ull << t_hash, rep.stats, pred);
            if (scan.hit) found = true;
        }
    }
    rep.yes = found;
    rep.stats.elapsed_ms = watch.ms();
    return rep;
}

// Exactly k colors: the identity partition is the only coloring needed,
// so each root costs one full sieve of 2^k evaluations.
inline SolveReport solve_colorful_ob_exact(const ArcColoredDigraph& d, const SolveConfig& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("k must be at least 1");
    if (!d.colored()) throw std::invalid_argument("solve_colorful_ob_exact: uncolored arcs");
    if (d.color_count != cfg.k)
        throw std::invalid_argument(
            "solve_colorful_ob_exact: color count differs from k; use solve_colorful_ob");
    detail::StopWatch watch;
    SolveReport rep;
    std::vector<int> roots = has_out_branching(d);
    if (roots.empty()) {
        rep.reason = "no out-branching";
        rep.stats.elapsed_ms = watch.ms();
        return rep;
    }
    for (int root : roots) {
        ColorKirchhoffEvaluator ev(d, root, identity_partition(d.color_count));
        rep.stats.colorings += 1;
        rep.stats.evaluator_calls += 1ull << cfg.k;
        if (sieve_full(ev) != 0) {
            rep.yes = true;
            break;
        }
    }
    rep.stats.elapsed_ms = watch.ms();
    return rep;
}

// ---------------------------------------------------------------------------
// Planar k-Colorful Perfect Matching: Kasteleyn-orient once, then sieve
// the signed Pfaffian evaluator. The evaluator's sign is constant per
// instance, so nonzero sieve output certifies a witnessing matching.

inline SolveReport solve_colorful_pm(const PlanarEmbeddedGraph& g, const SolveConfig& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("k must be at least 1");
    validate_embedding(g);
    detail::StopWatch watch;
    SolveReport rep;
    const long k = cfg.k;
    if (g.n % 2 != 0) {
        rep.reason = "odd vertex count";
        rep.stats.elapsed_ms = watch.ms();
        return rep;
    }
    if (g.color_count < k) {
        rep.reason = "fewer than k distinct edge colors";
        rep.stats.elapsed_ms = watch.ms();
        return rep;
    }
    KasteleynOrientation orient = kasteleyn_orient(g);
    bool found = false;
    if (cfg.space_mode == SpaceMode::Poly) {
        SplitterPtr family = perfect_hash_family(g.color_count, k);
        auto pred = [&](unsigned long long i) {
            std::vector<int> vec = family->query(Int(i));
            std::vector<int> cls(g.color_count + 1, 0);
            for (int c = 1; c <= g.color_count; ++c) cls[c] = vec[c - 1] - 1;
            MatchingEvaluator ev(g, orient,
                                 make_partition(g.color_count, static_cast<int>(k), std::move(cls)));
            return sieve_full(ev) != 0;
        };
        auto scan = detail::scan_family(static_cast<unsigned long long>(family->size()),
                                        cfg.parallelism, 1ull << k, rep.stats, pred);
        found = scan.hit;
    } else {
        SplitterPtr family = greedy_splitter(g.color_count, k, cfg.alpha_star);
        const int t_hash = static_cast<int>(family->spec().colors);
        rep.stats.peak_table_entries =
            std::max(rep.stats.peak_table_entries, std::size_t(1) << t_hash);
        auto pred = [&](unsigned long long i) {
            std::vector<int> vec = family->query(Int(i));
            std::vector<int> cls(g.color_count + 1, 0);
            for (int c = 1; c <= g.color_count; ++c) cls[c] = vec[c - 1] - 1;
            MatchingEvaluator ev(g, orient,
                                 make_partition(g.color_count, t_hash, std::move(cls)));
            return sieve_shared_scan(ev, static_cast<int>(k), 0, cfg.memory_budget).hit;
        };
        auto scan = detail::scan_family(static_cast<unsigned long long>(family->size()),
                                        cfg.parallelism, 1ull << t_hash, rep.stats, pred);
        found = scan.hit;
    }
    rep.yes = found;
    rep.stats.elapsed_ms = watch.ms();
    return rep;
}

}  // namespace polysieve
