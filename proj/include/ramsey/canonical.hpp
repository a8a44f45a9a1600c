#ifndef RAMSEY_CANONICAL_HPP
#define RAMSEY_CANONICAL_HPP

/// \file canonical.hpp
/// \brief Canonical labeling by equitable partition refinement and
/// individualization, returning the lexicographically minimal relabeled
/// adjacency over the search tree.
///
/// Subtrees are skipped only when a known automorphism (a stored generator
/// fixing the current prefix, or a transposition of twin vertices) maps them
/// onto an explored sibling, so the minimum is taken over a complete set of
/// representatives.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "ramsey/graph.hpp"

namespace ramsey {

/// Complete isomorphism invariant for graphs of equal order: the order
/// followed by the canonical adjacency rows, big-endian, so that byte order
/// equals row order.
struct CanonicalForm {
    std::string bytes;

    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

struct CanonicalFormHash {
    std::size_t operator()(const CanonicalForm& f) const { return std::hash<std::string>{}(f.bytes); }
};

struct CanonicalLabeling {
    /// position -> original vertex
    std::vector<int> order;
    Graph canonical;
    CanonicalForm form;
    /// Generators of the automorphism group (vertex -> image).
    std::vector<std::vector<int>> automorphisms;
};

namespace detail {

using Partition = std::vector<VertexSet>;

class Canonizer {
public:
    explicit Canonizer(const Graph& g) : g_(g), n_(g.order()) {}

    CanonicalLabeling run(Partition initial)
    {
        prefix_.clear();
        search(std::move(initial));
        CanonicalLabeling out;
        out.order = best_lab_;
        std::vector<int> pos(static_cast<std::size_t>(n_));
        for (int p = 0; p < n_; ++p)
            pos[static_cast<std::size_t>(best_lab_[static_cast<std::size_t>(p)])] = p;
        out.canonical = g_.permuted(pos);
        out.form = to_form(best_rows_);
        out.automorphisms = std::move(generators_);
        return out;
    }

private:
    using Rows = std::array<VertexSet, kMaxOrder>;

    CanonicalForm to_form(const Rows& rows) const
    {
        CanonicalForm f;
        f.bytes.reserve(1 + 8 * static_cast<std::size_t>(n_));
        f.bytes.push_back(static_cast<char>(n_));
        for (int p = 0; p < n_; ++p)
            for (int shift = 56; shift >= 0; shift -= 8)
                f.bytes.push_back(static_cast<char>((rows[static_cast<std::size_t>(p)] >> shift) & 0xFF));
        return f;
    }

    void refine(Partition& cells) const
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t w = 0; w < cells.size(); ++w) {
                const VertexSet splitter = cells[w];
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    const VertexSet cell = cells[c];
                    if (popcount(cell) < 2)
                        continue;
                    std::array<VertexSet, kMaxOrder + 1> by_count{};
                    int lo = kMaxOrder + 1;
                    int hi = -1;
                    for_each_vertex(cell, [&](int v) {
                        int cnt = popcount(g_.neighbors(v) & splitter);
                        by_count[static_cast<std::size_t>(cnt)] |= bit(v);
                        lo = std::min(lo, cnt);
                        hi = std::max(hi, cnt);
                    });
                    if (lo == hi)
                        continue;
                    Partition pieces;
                    for (int cnt = lo; cnt <= hi; ++cnt)
                        if (by_count[static_cast<std::size_t>(cnt)])
                            pieces.push_back(by_count[static_cast<std::size_t>(cnt)]);
                    cells[c] = pieces.front();
                    cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c) + 1, pieces.begin() + 1, pieces.end());
                    c += pieces.size() - 1;
                    changed = true;
                }
            }
        }
    }

    void leaf(const Partition& cells)
    {
        std::vector<int> lab(static_cast<std::size_t>(n_));
        std::array<int, kMaxOrder> pos{};
        for (int p = 0; p < n_; ++p) {
            lab[static_cast<std::size_t>(p)] = lowest(cells[static_cast<std::size_t>(p)]);
            pos[static_cast<std::size_t>(lab[static_cast<std::size_t>(p)])] = p;
        }
        Rows rows{};
        for (int p = 0; p < n_; ++p)
            for_each_vertex(g_.neighbors(lab[static_cast<std::size_t>(p)]),
                            [&](int u) { rows[static_cast<std::size_t>(p)] |= bit(pos[static_cast<std::size_t>(u)]); });

        if (!have_leaf_) {
            have_leaf_ = true;
            first_lab_ = best_lab_ = lab;
            first_rows_ = best_rows_ = rows;
            return;
        }
        auto record = [&](const std::vector<int>& other) {
            std::vector<int> perm(static_cast<std::size_t>(n_));
            bool identity = true;
            for (int p = 0; p < n_; ++p) {
                perm[static_cast<std::size_t>(other[static_cast<std::size_t>(p)])] = lab[static_cast<std::size_t>(p)];
                identity = identity && other[static_cast<std::size_t>(p)] == lab[static_cast<std::size_t>(p)];
            }
            if (!identity)
                generators_.push_back(std::move(perm));
        };
        const auto cmp = compare(rows, best_rows_);
        if (cmp < 0) {
            best_rows_ = rows;
            best_lab_ = lab;
        } else if (cmp == 0) {
            record(best_lab_);
        } else if (compare(rows, first_rows_) == 0) {
            record(first_lab_);
        }
    }

    std::strong_ordering compare(const Rows& a, const Rows& b) const
    {
        for (int p = 0; p < n_; ++p)
            if (a[static_cast<std::size_t>(p)] != b[static_cast<std::size_t>(p)])
                return a[static_cast<std::size_t>(p)] <=> b[static_cast<std::size_t>(p)];
        return std::strong_ordering::equal;
    }

    int find(std::vector<int>& parent, int v) const
    {
        while (parent[static_cast<std::size_t>(v)] != v)
            v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        return v;
    }

    // v is equivalent to an explored sibling under an automorphism fixing
    // the prefix.
    bool pruned(int v, VertexSet explored)
    {
        if (!explored)
            return false;
        // twins: the transposition (u v) is an automorphism fixing the prefix
        int twin = -1;
        for_each_vertex(explored, [&](int u) {
            if (twin < 0 && (g_.neighbors(u) & ~bit(v)) == (g_.neighbors(v) & ~bit(u)))
                twin = u;
        });
        if (twin >= 0) {
            std::vector<int> swap(static_cast<std::size_t>(n_));
            std::iota(swap.begin(), swap.end(), 0);
            std::swap(swap[static_cast<std::size_t>(v)], swap[static_cast<std::size_t>(twin)]);
            generators_.push_back(std::move(swap));
            return true;
        }
        if (generators_.empty())
            return false;
        std::vector<int> parent(static_cast<std::size_t>(n_));
        std::iota(parent.begin(), parent.end(), 0);
        for (const auto& perm : generators_) {
            bool fixes = true;
            for (int p : prefix_)
                fixes = fixes && perm[static_cast<std::size_t>(p)] == p;
            if (!fixes)
                continue;
            for (int x = 0; x < n_; ++x) {
                int a = find(parent, x);
                int b = find(parent, perm[static_cast<std::size_t>(x)]);
                if (a != b)
                    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
            }
        }
        const int root = find(parent, v);
        bool hit = false;
        for_each_vertex(explored, [&](int u) { hit = hit || find(parent, u) == root; });
        return hit;
    }

    void search(Partition cells)
    {
        refine(cells);
        std::size_t target = cells.size();
        int target_size = kMaxOrder + 1;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            int s = popcount(cells[c]);
            if (s > 1 && s < target_size) {
                target = c;
                target_size = s;
            }
        }
        if (target == cells.size()) {
            leaf(cells);
            return;
        }
        const VertexSet cell = cells[target];
        VertexSet explored = 0;
        for_each_vertex(cell, [&](int v) {
            if (pruned(v, explored))
                return;
            Partition child = cells;
            child[target] = bit(v);
            child.insert(child.begin() + static_cast<std::ptrdiff_t>(target) + 1, cell & ~bit(v));
            prefix_.push_back(v);
            search(std::move(child));
            prefix_.pop_back();
            explored |= bit(v);
        });
    }

    const Graph& g_;
    int n_;
    bool have_leaf_ = false;
    Rows first_rows_{};
    Rows best_rows_{};
    std::vector<int> first_lab_;
    std::vector<int> best_lab_;
    std::vector<std::vector<int>> generators_;
    std::vector<int> prefix_;
};

} // namespace detail

/// Canonical labeling of g. `colors`, when nonempty, is an ordered vertex
/// partition that the labeling must respect (vertices of earlier cells get
/// smaller labels); it must cover all vertices.
inline CanonicalLabeling canonical_labeling(const Graph& g, std::vector<VertexSet> colors = {})
{
    if (g.order() == 0) {
        CanonicalLabeling out;
        out.canonical = g;
        out.form.bytes.assign(1, '\0');
        return out;
    }
    if (colors.empty())
        colors.push_back(g.vertices());
    detail::Canonizer c(g);
    return c.run(std::move(colors));
}

inline CanonicalForm canonical_form(const Graph& g) { return canonical_labeling(g).form; }

inline bool isomorphic(const Graph& a, const Graph& b)
{
    return a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b);
}

} // namespace ramsey

#endif // RAMSEY_CANONICAL_HPP
