#ifndef RAMSEY_EXTENDER_HPP
#define RAMSEY_EXTENDER_HPP

/// \file extender.hpp
/// \brief Generation engines: neighborhood gluing, the minimum-degree
/// wrapper, edge-removal closure from maximal triangle-free graphs, and
/// degree-pattern filters.
///
/// Gluing takes a (3,k)-graph H on m vertices and a degree d and builds every
/// (3,k+1)-graph G on m+d+1 vertices that has a vertex v of degree d with
/// G_v = H. Layout of every output before canonical relabeling:
///   H at 0..m-1, neighbor u_j of v at m+j, v at m+d.
/// u_j is joined to an independent set S_j of H. G is triangle-free by
/// construction, and alpha(G) <= k iff for every J with |J| >= 2,
/// H minus the union of S_j (j in J) has no independent set of order k+1-|J|.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/canonical.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/indep_table.hpp"
#include "ramsey/independence.hpp"
#include "ramsey/membership.hpp"
#include "ramsey/store.hpp"

namespace ramsey {

/// Every vertex of degree subject_degree has exactly required_count
/// neighbors of degree neighbor_degree.
struct StructuralRule {
    int subject_degree = 0;
    int neighbor_degree = 0;
    int required_count = 0;

    friend bool operator==(const StructuralRule&, const StructuralRule&) = default;
};

inline bool satisfies_rules(const Graph& g, const std::vector<StructuralRule>& rules)
{
    for (const auto& r : rules) {
        for (int v = 0; v < g.order(); ++v) {
            if (g.degree(v) != r.subject_degree)
                continue;
            int c = 0;
            for_each_vertex(g.neighbors(v), [&](int u) { c += g.degree(u) == r.neighbor_degree ? 1 : 0; });
            if (c != r.required_count)
                return false;
        }
    }
    return true;
}

inline GraphSet structural_filter(const GraphSet& graphs, const std::vector<StructuralRule>& rules)
{
    return graphs.filtered([&](const Graph& g) { return satisfies_rules(g, rules); });
}

/// Switches for the search-space cuts. None of them changes the output set.
struct PruneOptions {
    bool pair = true;       // assigned-vs-candidate complement test
    bool forbidden = true;  // drop sets through saturated vertices
    bool ascending = true;  // non-decreasing set sequences
    bool edge_bound = true; // e(H) + d + sum |S_j| + t (d - i) <= e_max
    bool degree_floor = true;
    bool forbidden_independent = false;
    /// Re-explore edge-bound cuts and throw if one of them hides an output.
    bool audit = false;

    static PruneOptions none()
    {
        PruneOptions p;
        p.pair = p.forbidden = p.ascending = p.edge_bound = p.degree_floor = false;
        return p;
    }
};

enum class IndependencePolicy { automatic, table, lazy };

/// Acceptable base graphs: (3,k;m,e) with e in [e_lo, e_hi].
struct InputClass {
    int k = 0;
    int m = 0;
    int e_lo = 0;
    int e_hi = 0;
};

struct ExtensionTask {
    InputClass input;
    int d = 0;
    /// (k+1, m+d+1, e_max)
    ClassParams target;
    int d_min = 0;
    /// Defaults to input.k, the largest degree a (3,k+1)-graph can have.
    std::optional<int> delta_max;
    bool regular = false;
    /// (s, t): precompute complement tests for pairs of order-s sets.
    std::optional<std::pair<int, int>> pair_prune;
    std::vector<StructuralRule> filters;
    PruneOptions prune;
    IndependencePolicy policy = IndependencePolicy::automatic;
    int table_cap = 16;
    int table_min_degree = 3;

    /// Task for gluing degree d onto (3,k;m) bases with outputs up to e_max.
    static ExtensionTask make(int k, int m, int d, int e_max, int d_min = 0)
    {
        ExtensionTask t;
        t.input = {k, m, 0, e_max};
        t.d = d;
        t.target = {k + 1, m + d + 1, e_max};
        t.d_min = d_min;
        return t;
    }

    int max_degree() const { return delta_max.value_or(input.k); }

    void validate() const
    {
        if (input.k < 1)
            throw std::invalid_argument("input class needs k >= 1");
        if (target.k != input.k + 1 || target.n != input.m + d + 1)
            throw std::invalid_argument("target class does not match input class and degree");
        if (target.n > kMaxOrder)
            throw CapacityError("extension would produce " + std::to_string(target.n) + " vertices (max 64)");
        if (d < 0 || d_min < 0 || d_min > d || d > max_degree() || max_degree() > input.k)
            throw std::invalid_argument("degree parameters must satisfy d_min <= d <= delta_max <= k");
        for (const auto& r : filters)
            if (r.subject_degree < 0 || r.subject_degree > 15 || r.neighbor_degree < 0 || r.neighbor_degree > 15)
                throw std::invalid_argument("structural rule degree outside 0..15");
    }
};

struct ExtensionStats {
    long nodes = 0;
    long leaves = 0;
    long outputs = 0;
    long edge_cuts = 0;
};

/// One run of the gluing search for a fixed base graph.
class GlueExtender {
public:
    GlueExtender(const Graph& base, const ExtensionTask& task) : h_(base), task_(task), oracle_(h_)
    {
        task_.validate();
        if (base.order() != task.input.m)
            throw std::invalid_argument("base order differs from the input class");
        k_ = task.input.k;
        d_ = task.d;
        m_ = base.order();
        e_h_ = base.edge_count();
        dmin_ = task.regular ? std::max(task.d_min, d_) : task.d_min;
        dmax_ = task.regular ? std::min(task.max_degree(), d_) : task.max_degree();
        e_max_ = task.target.e;
        if (task.regular && (dmin_ != d_ || dmax_ != d_))
            throw std::invalid_argument("regular outputs need d_min <= d <= delta_max");
        all_ = h_.vertices();
        for (int w = 0; w < m_; ++w)
            deg_h_[static_cast<std::size_t>(w)] = h_.degree(w);

        const bool want_table = task.policy == IndependencePolicy::table ||
                                (task.policy == IndependencePolicy::automatic && d_ >= task.table_min_degree &&
                                 m_ <= task.table_cap);
        if (want_table && d_ >= 2)
            oracle_ = IndependenceOracle(h_, IndependenceTable::build(h_, k_, d_, std::max(task.table_cap, m_)));

        collect_sets();
    }

    /// Calls emit(G) for each glued graph in the fixed layout. Outputs may
    /// repeat up to isomorphism.
    void run(const std::function<void(const Graph&)>& emit)
    {
        emit_ = &emit;
        counts_.fill(0);
        chosen_.clear();
        if (d_ == 0) {
            leaf();
            return;
        }
        std::vector<int> initial;
        for (int i = 0; i < static_cast<int>(sets_.size()); ++i)
            if ((sets_[static_cast<std::size_t>(i)] & initially_forbidden()) == 0 || !task_.prune.forbidden)
                initial.push_back(i);
        search(initial, 0, false);
    }

    GraphSet run()
    {
        GraphSet out;
        std::function<void(const Graph&)> f = [&](const Graph& g) { out.insert(g); };
        run(f);
        return out;
    }

    const ExtensionStats& stats() const { return stats_; }
    std::size_t eligible_count() const { return sets_.size(); }

private:
    VertexSet initially_forbidden() const
    {
        VertexSet f = 0;
        for (int w = 0; w < m_; ++w)
            if (deg_h_[static_cast<std::size_t>(w)] >= dmax_)
                f |= bit(w);
        return f;
    }

    void collect_sets()
    {
        const int lo = std::max(dmin_ - 1, 0);
        const int hi = std::min(k_ - 1, dmax_ - 1);
        for (int s = lo; s <= hi; ++s) {
            auto level = independent_sets(h_, s, all_);
            std::sort(level.begin(), level.end());
            sets_.insert(sets_.end(), level.begin(), level.end());
        }
        if (task_.pair_prune && task_.pair_prune->second == k_ - 1) {
            pair_table_ = PairComplementTable::build(h_, task_.pair_prune->first, task_.pair_prune->second);
            pair_index_.resize(sets_.size());
            for (std::size_t i = 0; i < sets_.size(); ++i)
                if (popcount(sets_[i]) == pair_table_->set_order())
                    pair_index_[i] = pair_table_->index_of(sets_[i]);
        }
    }

    int order_of(int idx) const { return popcount(sets_[static_cast<std::size_t>(idx)]); }

    // Whether H minus (S_a u S_b) still has an independent set of order k-1.
    bool pair_conflict(int a, int b) const
    {
        if (pair_table_) {
            const auto& ia = pair_index_[static_cast<std::size_t>(a)];
            const auto& ib = pair_index_[static_cast<std::size_t>(b)];
            if (ia && ib)
                return pair_table_->entry(*ia, *ib);
        }
        const VertexSet u = sets_[static_cast<std::size_t>(a)] | sets_[static_cast<std::size_t>(b)];
        return oracle_.has_independent_set(all_ & ~u, k_ - 1);
    }

    // Independence condition for every J that contains the newest index and
    // at least one earlier one.
    bool new_subsets_ok() const
    {
        const int i = static_cast<int>(chosen_.size()) - 1;
        const VertexSet last = sets_[static_cast<std::size_t>(chosen_.back())];
        const bool skip_pairs = task_.prune.pair;
        bool ok = true;
        auto rec = [&](auto&& self, int next, VertexSet uni, int size) -> void {
            for (int j = next; j < i && ok; ++j) {
                const VertexSet u2 = uni | sets_[static_cast<std::size_t>(chosen_[static_cast<std::size_t>(j)])];
                const int sz = size + 1;
                if (!(skip_pairs && sz == 2) && oracle_.has_independent_set(all_ & ~u2, k_ + 1 - sz)) {
                    ok = false;
                    return;
                }
                self(self, j + 1, u2, sz);
            }
        };
        rec(rec, 0, last, 1);
        return ok;
    }

    bool degrees_ok_at_leaf() const
    {
        if (d_ < dmin_ || d_ > dmax_)
            return false;
        for (int w = 0; w < m_; ++w) {
            const int deg = deg_h_[static_cast<std::size_t>(w)] + counts_[static_cast<std::size_t>(w)];
            if (deg < dmin_ || deg > dmax_)
                return false;
        }
        for (int idx : chosen_) {
            const int deg = order_of(idx) + 1;
            if (deg < dmin_ || deg > dmax_)
                return false;
        }
        return true;
    }

    Graph assemble() const
    {
        Graph g(m_ + d_ + 1);
        for (auto [a, b] : h_.edges())
            g.add_edge(a, b);
        const int v = m_ + d_;
        for (int j = 0; j < d_; ++j) {
            g.add_edge(v, m_ + j);
            for_each_vertex(sets_[static_cast<std::size_t>(chosen_[static_cast<std::size_t>(j)])],
                            [&](int w) { g.add_edge(m_ + j, w); });
        }
        return g;
    }

    void leaf()
    {
        ++stats_.leaves;
        if (e_h_ + d_ + assigned_sum_ > e_max_ || !degrees_ok_at_leaf())
            return;
        Graph g = assemble();
        if (!task_.filters.empty() && !satisfies_rules(g, task_.filters))
            return;
        if (shadow_)
            throw std::logic_error("edge bound pruned a branch that contains an output");
        ++stats_.outputs;
        (*emit_)(g);
    }

    bool partial_ok() const
    {
        const int remaining = d_ - static_cast<int>(chosen_.size());
        if (task_.prune.degree_floor) {
            for (int w = 0; w < m_; ++w)
                if (deg_h_[static_cast<std::size_t>(w)] + counts_[static_cast<std::size_t>(w)] + remaining < dmin_)
                    return false;
        }
        if (task_.prune.forbidden_independent && remaining > 0) {
            VertexSet f = 0;
            for (int w = 0; w < m_; ++w)
                if (deg_h_[static_cast<std::size_t>(w)] + counts_[static_cast<std::size_t>(w)] >= dmax_)
                    f |= bit(w);
            const int need = k_ + 1 - remaining;
            if (oracle_.has_independent_set(f, need))
                return false;
        }
        return true;
    }

    void search(const std::vector<int>& eligible, int start_order_floor, bool in_shadow)
    {
        ++stats_.nodes;
        const int i = static_cast<int>(chosen_.size());
        if (i == d_) {
            const bool saved = shadow_;
            shadow_ = in_shadow;
            leaf();
            shadow_ = saved;
            return;
        }
        (void)start_order_floor;
        const int remaining_after = d_ - i - 1;
        const int min_order = eligible.empty() ? 0 : order_of(eligible.front());
        for (std::size_t p = 0; p < eligible.size(); ++p) {
            const int idx = eligible[p];
            const VertexSet s = sets_[static_cast<std::size_t>(idx)];
            const int size = popcount(s);
            const int t = task_.prune.ascending ? size : min_order;
            const bool over = e_h_ + d_ + assigned_sum_ + size + t * remaining_after > e_max_;
            bool shadow_branch = in_shadow;
            if (over && task_.prune.edge_bound) {
                ++stats_.edge_cuts;
                if (!task_.prune.audit || in_shadow)
                    break;
                shadow_branch = true;
            }

            chosen_.push_back(idx);
            assigned_sum_ += size;
            for_each_vertex(s, [&](int w) { ++counts_[static_cast<std::size_t>(w)]; });

            if (new_subsets_ok() && partial_ok()) {
                VertexSet forbidden = 0;
                if (task_.prune.forbidden)
                    for (int w = 0; w < m_; ++w)
                        if (deg_h_[static_cast<std::size_t>(w)] + counts_[static_cast<std::size_t>(w)] >= dmax_)
                            forbidden |= bit(w);
                std::vector<int> next;
                if (i + 1 < d_) {
                    next.reserve(eligible.size());
                    for (std::size_t q = task_.prune.ascending ? p : 0; q < eligible.size(); ++q) {
                        const int cand = eligible[q];
                        if (sets_[static_cast<std::size_t>(cand)] & forbidden)
                            continue;
                        if (task_.prune.pair && pair_conflict(idx, cand))
                            continue;
                        next.push_back(cand);
                    }
                }
                search(next, size, shadow_branch);
            }

            for_each_vertex(s, [&](int w) { --counts_[static_cast<std::size_t>(w)]; });
            assigned_sum_ -= size;
            chosen_.pop_back();
        }
    }

    Graph h_;
    ExtensionTask task_;
    IndependenceOracle oracle_;
    std::optional<PairComplementTable> pair_table_;
    std::vector<std::optional<std::size_t>> pair_index_;
    int k_ = 0, d_ = 0, m_ = 0, e_h_ = 0, dmin_ = 0, dmax_ = 0, e_max_ = 0;
    VertexSet all_ = 0;
    std::array<int, kMaxOrder> deg_h_{};
    std::array<int, kMaxOrder> counts_{};
    std::vector<VertexSet> sets_; // sorted by (order, bits)
    std::vector<int> chosen_;
    int assigned_sum_ = 0;
    bool shadow_ = false;
    const std::function<void(const Graph&)>* emit_ = nullptr;
    ExtensionStats stats_;
};

/// Every (3,k+1)-graph with a degree-d vertex v and G_v isomorphic to H that
/// satisfies the task's edge, degree and rule constraints, up to isomorphism.
inline GraphSet glue_extend(const Graph& base, const ExtensionTask& task)
{
    if (!is_member(base, task.input.k))
        throw std::invalid_argument("base graph is not a (3," + std::to_string(task.input.k) + ")-graph");
    const int e = base.edge_count();
    if (e < task.input.e_lo || e > task.input.e_hi)
        throw std::invalid_argument("base graph edge count outside the input class");
    GlueExtender x(base, task);
    return x.run();
}

/// Whether some degree-d vertex v of g has G_v isomorphic to h.
inline bool has_gluing_witness(const Graph& g, const Graph& h, int d)
{
    const CanonicalForm target = canonical_form(h);
    for (int v = 0; v < g.order(); ++v)
        if (g.degree(v) == d && g.order() - d - 1 == h.order() && canonical_form(local_subgraph(g, v)) == target)
            return true;
    return false;
}

struct MinDegreeResult {
    GraphSet graphs;
    /// False when the inputs are not certified to hold every required G_v.
    bool complete = false;
    /// Input requirement that was assumed: (3,k; m, <= ceiling) for this degree.
    int degree = 0;
    int m = 0;
    int ceiling = 0;
};

/// All (3,k+1;n,<=e)-graphs with minimum degree exactly d, glued onto the
/// stored (3,k;n-d-1)-graphs with at most e - d^2 edges (Z(v) >= d^2).
inline MinDegreeResult min_degree_extend(const ClassParams& target, int d, const GraphStore& inputs)
{
    MinDegreeResult r;
    r.degree = d;
    r.m = target.n - d - 1;
    r.ceiling = target.e - d * d;
    const int k = target.k - 1;
    if (r.m < 0 || d > k) {
        r.complete = true;
        return r;
    }
    r.complete = inputs.complete && inputs.box.covers_class(k, r.m, r.ceiling);
    ExtensionTask task = ExtensionTask::make(k, r.m, d, target.e, d);
    for (const auto& [form, h] : inputs.graphs) {
        if (h.order() != r.m || h.edge_count() > r.ceiling)
            continue;
        GlueExtender x(h, task);
        x.run([&](const Graph& g) { r.graphs.insert(g); });
    }
    return r;
}

/// Adding any missing edge creates a triangle.
inline bool is_maximal_triangle_free(const Graph& g)
{
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v)
            if (!g.adjacent(u, v) && (g.neighbors(u) & g.neighbors(v)) == 0)
                return false;
    return true;
}

/// Every (3,k)-graph reachable from the inputs by deleting edges, optionally
/// keeping only those with at most e_max edges. Deleting an edge never lowers
/// alpha, so the walk stops below graphs that leave the class.
inline GraphStore edge_removal_closure(const std::vector<Graph>& mtf_set, int k, std::optional<int> e_max = std::nullopt)
{
    GraphSet seen;
    std::vector<Graph> frontier;
    for (const Graph& g : mtf_set) {
        if (!is_triangle_free(g) || !is_maximal_triangle_free(g) || !is_member(g, k))
            throw std::invalid_argument("closure input is not a maximal triangle-free (3," + std::to_string(k) +
                                        ")-graph");
        if (seen.insert(g))
            frontier.push_back(g);
    }
    while (!frontier.empty()) {
        std::vector<Graph> next;
        for (const Graph& g : frontier) {
            for (auto [u, v] : g.edges()) {
                Graph h = g;
                h.remove_edge(u, v);
                // only u and v gain non-neighbors, so a new independent set contains both
                const VertexSet pool = h.vertices() & ~h.neighbors(u) & ~h.neighbors(v) & ~bit(u) & ~bit(v);
                if (independence_number(h, pool, k - 2) >= k - 2)
                    continue;
                if (seen.insert(h))
                    next.push_back(h);
            }
        }
        frontier = std::move(next);
    }
    GraphStore out;
    out.box.k = k;
    out.box.n_min = kMaxOrder;
    out.box.e_min = 0;
    for (const auto& [f, g] : seen) {
        if (e_max && g.edge_count() > *e_max)
            continue;
        out.graphs.insert_canonical(f, g);
        out.box.n_min = std::min(out.box.n_min, g.order());
        out.box.n_max = std::max(out.box.n_max, g.order());
        out.box.e_max = std::max(out.box.e_max, g.edge_count());
    }
    if (out.graphs.empty())
        out.box.n_min = 0;
    if (e_max)
        out.box.e_max = *e_max;
    return out;
}

} // namespace ramsey

#endif // RAMSEY_EXTENDER_HPP
