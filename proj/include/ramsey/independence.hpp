#ifndef RAMSEY_INDEPENDENCE_HPP
#define RAMSEY_INDEPENDENCE_HPP

/// \file independence.hpp
/// \brief Maximum independent sets by bitset branch and bound, plus
/// enumeration of independent sets of a fixed order.

#include <optional>
#include <vector>

#include "ramsey/graph.hpp"

namespace ramsey {

namespace detail {

// Greedy clique cover of `pool`; its size bounds alpha(pool) from above.
inline int clique_cover_bound(const Graph& g, VertexSet pool)
{
    int cliques = 0;
    while (pool) {
        int v = lowest(pool);
        pool &= ~bit(v);
        VertexSet candidates = pool & g.neighbors(v);
        while (candidates) {
            int u = lowest(candidates);
            pool &= ~bit(u);
            candidates &= g.neighbors(u) & ~bit(u);
        }
        ++cliques;
    }
    return cliques;
}

struct AlphaSearch {
    const Graph& g;
    int stop_at;
    int best = 0;
    VertexSet best_set = 0;

    bool done() const { return best >= stop_at; }

    void run(VertexSet pool, VertexSet chosen, int size)
    {
        // Vertices with at most one neighbor in the pool belong to some
        // maximum independent set of the pool.
        for (;;) {
            VertexSet forced = 0;
            VertexSet scan = pool;
            while (scan) {
                int v = lowest(scan);
                scan &= scan - 1;
                if (popcount(g.neighbors(v) & pool) <= 1) {
                    forced = bit(v);
                    break;
                }
            }
            if (!forced)
                break;
            int v = lowest(forced);
            chosen |= forced;
            ++size;
            pool &= ~(forced | g.neighbors(v));
        }
        if (pool == 0) {
            if (size > best) {
                best = size;
                best_set = chosen;
            }
            return;
        }
        if (size + clique_cover_bound(g, pool) <= best)
            return;
        int v = lowest(pool);
        run(pool & ~(bit(v) | g.neighbors(v)), chosen | bit(v), size + 1);
        if (done())
            return;
        run(pool & ~bit(v), chosen, size);
    }
};

} // namespace detail

/// Largest independent set inside `pool`. With `stop_at`, the search may stop
/// as soon as a set of that order is found.
inline VertexSet max_independent_set(const Graph& g, VertexSet pool, std::optional<int> stop_at = std::nullopt)
{
    detail::AlphaSearch search{g, stop_at.value_or(kMaxOrder + 1)};
    search.run(pool & g.vertices(), 0, 0);
    return search.best_set;
}

inline int independence_number(const Graph& g, VertexSet pool, std::optional<int> stop_at = std::nullopt)
{
    detail::AlphaSearch search{g, stop_at.value_or(kMaxOrder + 1)};
    search.run(pool & g.vertices(), 0, 0);
    return search.best;
}

inline int independence_number(const Graph& g, std::optional<int> stop_at = std::nullopt)
{
    return independence_number(g, g.vertices(), stop_at);
}

inline bool is_independent(const Graph& g, VertexSet s)
{
    bool ok = true;
    for_each_vertex(s, [&](int v) { ok = ok && (g.neighbors(v) & s) == 0; });
    return ok;
}

/// Calls f(S) for every independent set S of exactly `order` vertices inside
/// `pool`, lowest-vertex-first lexicographic order.
template <typename F>
void for_each_independent_set(const Graph& g, VertexSet pool, int order, F&& f)
{
    auto rec = [&](auto&& self, VertexSet candidates, VertexSet chosen, int need) -> void {
        if (need == 0) {
            f(chosen);
            return;
        }
        while (popcount(candidates) >= need) {
            int v = lowest(candidates);
            candidates &= ~bit(v);
            self(self, candidates & ~g.neighbors(v), chosen | bit(v), need - 1);
        }
    };
    if (order >= 0)
        rec(rec, pool & g.vertices(), 0, order);
}

inline std::vector<VertexSet> independent_sets(const Graph& g, int order, VertexSet pool = ~VertexSet{0})
{
    std::vector<VertexSet> out;
    for_each_independent_set(g, pool, order, [&](VertexSet s) { out.push_back(s); });
    return out;
}

} // namespace ramsey

#endif // RAMSEY_INDEPENDENCE_HPP
