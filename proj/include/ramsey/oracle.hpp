#ifndef RAMSEY_ORACLE_HPP
#define RAMSEY_ORACLE_HPP

/// \file oracle.hpp
/// \brief Slow, independent ground truth: exhaustive generation of small
/// (3,k)-graphs and the cross-checks run against generated stores.

#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsey/canonical.hpp"
#include "ramsey/extender.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/independence.hpp"
#include "ramsey/membership.hpp"
#include "ramsey/store.hpp"

namespace ramsey {

inline constexpr int kOracleMaxOrder = 12;
inline constexpr int kUnboundedEdges = std::numeric_limits<int>::max();

namespace detail {

inline CanonicalForm rooted_form(const Graph& g, int root)
{
    return canonical_labeling(g, {bit(root), g.vertices() & ~bit(root)}).form;
}

/// Canonical augmentation step: child = parent + vertex x (numbered last).
/// Accepted iff x is in the orbit of the canonical deletion vertex.
inline bool canonical_parent(const Graph& child, const CanonicalLabeling& lab)
{
    const int x = child.order() - 1;
    const int m = lab.order.back();
    if (m == x)
        return true;
    if (child.degree(m) != child.degree(x))
        return false;
    return rooted_form(child, x) == rooted_form(child, m);
}

} // namespace detail

/// All (3,k;n,<=e_max)-graphs up to isomorphism, grown one vertex at a time
/// from K0. Each new vertex is joined to an independent set of its parent.
inline GraphStore brute_force_graphs(int n, int k, int e_max = kUnboundedEdges)
{
    if (n < 0)
        throw std::invalid_argument("brute force oracle needs n >= 0");
    if (n > kOracleMaxOrder)
        throw CapacityError("brute force oracle is capped at order " + std::to_string(kOracleMaxOrder));
    if (k < 1)
        throw std::invalid_argument("brute force oracle needs k >= 1");
    GraphStore out;
    out.box = {k, n, n, 0, e_max == kUnboundedEdges ? (k - 1) * n / 2 : e_max};
    out.complete = true;
    out.certificate = "exhaustive";

    std::vector<Graph> level{Graph(0)};
    for (int order = 0; order < n; ++order) {
        std::vector<Graph> next;
        for (const Graph& p : level) {
            GraphSet children;
            const int e_p = p.edge_count();
            // joined set S must leave alpha(P - S) <= k - 2
            for (int s = 0; s <= order && e_p + s <= e_max; ++s) {
                for_each_independent_set(p, p.vertices(), s, [&](VertexSet nb) {
                    if (independence_number(p, p.vertices() & ~nb, k - 1) > k - 2)
                        return;
                    Graph c = with_isolated_vertex(p);
                    for_each_vertex(nb, [&](int w) { c.add_edge(order, w); });
                    CanonicalLabeling lab = canonical_labeling(c);
                    if (!detail::canonical_parent(c, lab))
                        return;
                    children.insert_canonical(std::move(lab.form), std::move(lab.canonical));
                });
            }
            for (const auto& [f, g] : children)
                next.push_back(g);
        }
        level = std::move(next);
    }
    for (const Graph& g : level)
        out.graphs.insert(g);
    return out;
}

/// The maximal triangle-free members of brute_force_graphs(n, k).
inline std::vector<Graph> naive_mtf_set(int n, int k)
{
    std::vector<Graph> out;
    for (const auto& [f, g] : brute_force_graphs(n, k).graphs)
        if (is_maximal_triangle_free(g))
            out.push_back(g);
    return out;
}

/// Smallest edge count in a store, if any.
inline std::optional<int> min_edges(const GraphSet& s)
{
    std::optional<int> best;
    for (const auto& [f, g] : s)
        if (!best || g.edge_count() < *best)
            best = g.edge_count();
    return best;
}

/// Dropping any edge creates an independent set of order k.
inline bool verify_minimality(const Graph& g, int k)
{
    for (auto [u, v] : g.edges()) {
        // a new independent set of order k contains both u and v
        const VertexSet pool = g.vertices() & ~g.neighbors(u) & ~g.neighbors(v);
        if (independence_number(g, pool, k - 2) < k - 2)
            return false;
    }
    return true;
}

struct CheckResult {
    bool ok = true;
    std::optional<Graph> witness;
    std::string detail;

    explicit operator bool() const { return ok; }
};

/// Adds up to f edges to each base graph in every way; every resulting
/// (3,k)-graph inside the reference box must be in the reference.
inline CheckResult add_edge_closure_check(const GraphStore& base, int f, int k, const GraphStore& reference)
{
    if (reference.box.k != k || (base.box.k != 0 && base.box.k != k))
        throw std::invalid_argument("add_edge_closure_check: stores do not share k");
    CheckResult r;
    GraphSet seen;
    std::vector<Graph> frontier;
    for (const auto& [form, g] : base.graphs)
        if (seen.insert(g))
            frontier.push_back(g);
    for (int step = 1; step <= f && r.ok; ++step) {
        std::vector<Graph> next;
        for (const Graph& g : frontier) {
            for (int u = 0; u < g.order() && r.ok; ++u) {
                for (int v = u + 1; v < g.order() && r.ok; ++v) {
                    if (g.adjacent(u, v) || (g.neighbors(u) & g.neighbors(v)))
                        continue;
                    Graph h = g;
                    h.add_edge(u, v);
                    if (!seen.insert(h))
                        continue;
                    next.push_back(h);
                    if (reference.box.contains(h.order(), h.edge_count()) && !reference.graphs.contains(h)) {
                        r.ok = false;
                        r.witness = h;
                        r.detail = "graph with " + std::to_string(h.edge_count()) + " edges missing from reference";
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return r;
}

/// Every G_v of every parent that falls in the reference box must already
/// be in the reference.
inline CheckResult gv_consistency_check(const GraphStore& parents, int k_parent, const GraphStore& reference)
{
    if (reference.box.k != k_parent - 1)
        throw std::invalid_argument("gv_consistency_check: reference must hold (3,k-1)-graphs");
    CheckResult r;
    for (const auto& [form, g] : parents.graphs) {
        for (int v = 0; v < g.order(); ++v) {
            Graph h = local_subgraph(g, v);
            if (!reference.box.contains(h.order(), h.edge_count()))
                continue;
            if (!reference.graphs.contains(h)) {
                r.ok = false;
                r.witness = h;
                r.detail = "G_v of order " + std::to_string(h.order()) + " missing from reference";
                return r;
            }
        }
    }
    return r;
}

/// Counts by (edges, order) for one k, printed with edge counts as rows and
/// orders as columns.
struct EnumerationReport {
    int k = 0;
    std::map<std::pair<int, int>, long> counts; // (n, e) -> count

    void add(const GraphSet& s)
    {
        for (const auto& [key, c] : s.histogram())
            counts[key] += c;
    }

    long count(int n, int e) const
    {
        auto it = counts.find({n, e});
        return it == counts.end() ? 0 : it->second;
    }

    void write(std::ostream& out) const
    {
        std::set<int> orders;
        std::set<int> edges;
        for (const auto& [key, c] : counts) {
            orders.insert(key.first);
            edges.insert(key.second);
        }
        out << "(3," << k << ") graphs\n" << std::setw(4) << "e";
        for (int n : orders)
            out << std::setw(10) << ("n=" + std::to_string(n));
        out << '\n';
        for (int e : edges) {
            out << std::setw(4) << e;
            for (int n : orders) {
                long c = count(n, e);
                out << std::setw(10) << (c == 0 ? std::string("") : std::to_string(c));
            }
            out << '\n';
        }
    }
};

} // namespace ramsey

#endif // RAMSEY_ORACLE_HPP
