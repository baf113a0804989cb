#pragma once

// Out-branching polynomials as black boxes. The symbolic Kirchhoff matrix
// of a directed multigraph has diagonal entries summing the in-arc
// variables and off-diagonal entries -x_a per arc; deleting the root's
// row and column, the determinant generates exactly the out-branchings
// rooted there. Variables are merged into color classes before the
// determinant is taken, so each evaluation is one exact Bareiss run.

#include <cstdint>
#include <stdexcept>

#include "polysieve/digraph.hpp"
#include "polysieve/evaluator.hpp"
#include "polysieve/linalg.hpp"

namespace polysieve {
namespace detail {

// Minor of the substituted Kirchhoff matrix; value(id) supplies the 0/1
// weight of an arc after class substitution. Vertices are renumbered
// contiguously after the root row/column is deleted.
template <typename ValueFn>
Int kirchhoff_minor_det(const ArcColoredDigraph& d, int root, ValueFn&& value) {
    int n = d.n;
    IntMatrix m(n - 1);
    auto idx = [&](int v) { return v < root ? v - 1 : v - 2; };
    for (int id = 0; id < d.arc_count(); ++id) {
        const Arc& a = d.arcs[id];
        int w = value(id);
        if (a.head != root) m.at(idx(a.head), idx(a.head)) += w;
        if (a.tail != root && a.head != root) m.at(idx(a.tail), idx(a.head)) -= w;
    }
    return bareiss_det(std::move(m));
}

}  // namespace detail

// Vertex-variable evaluator: every arc variable x_uv is replaced by the
// class value of its tail u, so a monomial's distinct variables are the
// internal vertices of the corresponding out-branching.
class KirchhoffEvaluator final : public SievedEvaluator {
public:
    KirchhoffEvaluator(const ArcColoredDigraph& d, int root, ColorPartition partition)
        : d_(&d), root_(root), part_(std::move(partition)) {
        if (root < 1 || root > d.n) throw std::out_of_range("root out of range");
        if (part_.universe() != d.n)
            throw std::invalid_argument("partition must cover all vertices");
    }

    int num_classes() const override { return part_.num_classes; }
    int root() const { return root_; }
    const ColorPartition& partition() const { return part_; }

    Int evaluate_zeroed(std::uint64_t zeroed) const override {
        check_mask(zeroed);
        return detail::kirchhoff_minor_det(*d_, root_, [&](int id) {
            int cls = part_.class_of[d_->arcs[id].tail];
            if (cls == kUnsieved) return 1;
            return (zeroed >> cls) & 1 ? 0 : 1;
        });
    }

private:
    const ArcColoredDigraph* d_;
    int root_;
    ColorPartition part_;
};

inline KirchhoffEvaluator build_kirchhoff_evaluator(const ArcColoredDigraph& d, int root,
                                                    ColorPartition partition_over_vertices) {
    return KirchhoffEvaluator(d, root, std::move(partition_over_vertices));
}

// Arc-color evaluator: arc variables are replaced by the class value of
// the arc's color, so a monomial's distinct variables are the color
// classes an out-branching touches.
class ColorKirchhoffEvaluator final : public SievedEvaluator {
public:
    ColorKirchhoffEvaluator(const ArcColoredDigraph& d, int root, ColorPartition partition)
        : d_(&d), root_(root), part_(std::move(partition)) {
        if (root < 1 || root > d.n) throw std::out_of_range("root out of range");
        if (!d.colored()) throw std::invalid_argument("uncolored arc present");
        if (part_.universe() != d.color_count)
            throw std::invalid_argument("partition must cover all arc colors");
    }

    int num_classes() const override { return part_.num_classes; }
    int root() const { return root_; }

    Int evaluate_zeroed(std::uint64_t zeroed) const override {
        check_mask(zeroed);
        return detail::kirchhoff_minor_det(*d_, root_, [&](int id) {
            int cls = part_.class_of[d_->arcs[id].color];
            if (cls == kUnsieved) return 1;
            return (zeroed >> cls) & 1 ? 0 : 1;
        });
    }

private:
    const ArcColoredDigraph* d_;
    int root_;
    ColorPartition part_;
};

inline ColorKirchhoffEvaluator build_color_evaluator(const ArcColoredDigraph& d, int root,
                                                     ColorPartition partition_over_colors) {
    return ColorKirchhoffEvaluator(d, root, std::move(partition_over_colors));
}

}  // namespace polysieve
