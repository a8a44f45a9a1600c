#ifndef RAMSEY_GRAPH_HPP
#define RAMSEY_GRAPH_HPP

/// \file graph.hpp
/// \brief Simple undirected graphs on at most 64 vertices, one adjacency
/// word per vertex.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ramsey {

using VertexSet = std::uint64_t;

inline constexpr int kMaxOrder = 64;

/// Raised when an operation would need more than kMaxOrder vertices or
/// exceeds a configured memory cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr VertexSet bit(int v) { return VertexSet{1} << v; }

constexpr VertexSet low_bits(int n) { return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1; }

constexpr int popcount(VertexSet s) { return std::popcount(s); }

constexpr int lowest(VertexSet s) { return std::countr_zero(s); }

/// Calls f(v) for each member of s in increasing order.
template <typename F>
constexpr void for_each_vertex(VertexSet s, F&& f)
{
    while (s) {
        f(lowest(s));
        s &= s - 1;
    }
}

class Graph {
public:
    Graph() = default;

    explicit Graph(int order) : order_(order)
    {
        if (order < 0 || order > kMaxOrder)
            throw CapacityError("graph order " + std::to_string(order) + " outside 0..64");
    }

    Graph(int order, std::initializer_list<std::pair<int, int>> edges) : Graph(order)
    {
        for (auto [u, v] : edges)
            add_edge(u, v);
    }

    static Graph from_rows(int order, const std::array<VertexSet, kMaxOrder>& rows)
    {
        Graph g(order);
        g.adj_ = rows;
        return g;
    }

    int order() const { return order_; }

    VertexSet vertices() const { return low_bits(order_); }

    VertexSet neighbors(int v) const { return adj_[v]; }

    const std::array<VertexSet, kMaxOrder>& rows() const { return adj_; }

    bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }

    int degree(int v) const { return popcount(adj_[v]); }

    void add_edge(int u, int v)
    {
        if (u == v || u < 0 || v < 0 || u >= order_ || v >= order_)
            throw std::invalid_argument("bad edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
        adj_[u] |= bit(v);
        adj_[v] |= bit(u);
    }

    void remove_edge(int u, int v)
    {
        adj_[u] &= ~bit(v);
        adj_[v] &= ~bit(u);
    }

    int edge_count() const
    {
        int twice = 0;
        for (int v = 0; v < order_; ++v)
            twice += degree(v);
        return twice / 2;
    }

    int min_degree() const
    {
        int d = order_ == 0 ? 0 : kMaxOrder;
        for (int v = 0; v < order_; ++v)
            d = std::min(d, degree(v));
        return d;
    }

    int max_degree() const
    {
        int d = 0;
        for (int v = 0; v < order_; ++v)
            d = std::max(d, degree(v));
        return d;
    }

    std::vector<std::pair<int, int>> edges() const
    {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < order_; ++u)
            for_each_vertex(adj_[u] & ~low_bits(u + 1), [&](int v) { out.emplace_back(u, v); });
        return out;
    }

    /// Histogram of degrees, indexed by degree.
    std::vector<int> degree_histogram() const
    {
        std::vector<int> h(static_cast<std::size_t>(max_degree()) + 1, 0);
        for (int v = 0; v < order_; ++v)
            ++h[static_cast<std::size_t>(degree(v))];
        return h;
    }

    /// Subgraph induced by `keep`, relabeled contiguously in increasing
    /// vertex order.
    Graph induced(VertexSet keep) const
    {
        std::array<int, kMaxOrder> index{};
        int m = 0;
        for_each_vertex(keep, [&](int v) { index[v] = m++; });
        Graph h(m);
        for_each_vertex(keep, [&](int v) {
            for_each_vertex(adj_[v] & keep, [&](int u) { h.adj_[index[v]] |= bit(index[u]); });
        });
        return h;
    }

    /// Graph with vertex v renamed to perm[v].
    Graph permuted(const std::vector<int>& perm) const
    {
        Graph h(order_);
        for (int v = 0; v < order_; ++v)
            for_each_vertex(adj_[v], [&](int u) { h.adj_[perm[v]] |= bit(perm[u]); });
        return h;
    }

    friend bool operator==(const Graph& a, const Graph& b)
    {
        if (a.order_ != b.order_)
            return false;
        return std::equal(a.adj_.begin(), a.adj_.begin() + a.order_, b.adj_.begin());
    }

private:
    int order_ = 0;
    std::array<VertexSet, kMaxOrder> adj_{};
};

/// Parameters (3,k;n,e) of a triangle-free graph with independence number below k.
struct ClassParams {
    int k = 0;
    int n = 0;
    int e = 0;

    friend bool operator==(const ClassParams&, const ClassParams&) = default;
};

inline bool is_triangle_free(const Graph& g)
{
    for (int u = 0; u < g.order(); ++u) {
        VertexSet later = g.neighbors(u) & ~low_bits(u + 1);
        bool clash = false;
        for_each_vertex(later, [&](int v) { clash = clash || (g.neighbors(u) & g.neighbors(v)) != 0; });
        if (clash)
            return false;
    }
    return true;
}

/// Sum of the degrees of the neighbors of v.
inline int z_value(const Graph& g, int v)
{
    int z = 0;
    for_each_vertex(g.neighbors(v), [&](int u) { z += g.degree(u); });
    return z;
}

/// G_v: the subgraph induced by the vertices that are neither v nor adjacent
/// to v. Surviving vertices keep their relative order.
inline Graph local_subgraph(const Graph& g, int v)
{
    return g.induced(g.vertices() & ~(g.neighbors(v) | bit(v)));
}

/// Circulant graph on Z_n joining vertices at the given circular distances.
inline Graph circulant(int n, const std::set<int>& distances)
{
    Graph g(n);
    for (int d : distances) {
        if (d < 1 || 2 * d > n)
            throw std::invalid_argument("circular distance " + std::to_string(d) + " out of range for n=" +
                                        std::to_string(n));
        for (int i = 0; i < n; ++i) {
            int j = (i + d) % n;
            if (!g.adjacent(i, j))
                g.add_edge(i, j);
        }
    }
    return g;
}

inline Graph cycle_graph(int n)
{
    Graph g(n);
    for (int i = 0; i < n; ++i)
        g.add_edge(i, (i + 1) % n);
    return g;
}

inline Graph complete_graph(int n)
{
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

inline Graph petersen_graph()
{
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    return g;
}

/// The disjoint union of g and one isolated vertex, numbered last.
inline Graph with_isolated_vertex(const Graph& g)
{
    auto rows = g.rows();
    return Graph::from_rows(g.order() + 1, rows);
}

} // namespace ramsey

#endif // RAMSEY_GRAPH_HPP
