#ifndef RAMSEY_MEMBERSHIP_HPP
#define RAMSEY_MEMBERSHIP_HPP

/// \file membership.hpp
/// \brief (3,k)-graph membership with witnesses, and vertex/graph deficiency.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "ramsey/bound_table.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/independence.hpp"

namespace ramsey {

struct Rejection {
    enum class Reason { triangle, independent_set };
    Reason reason;
    /// The triangle, or an independent set of order k.
    VertexSet witness = 0;

    std::string describe() const
    {
        std::string s = reason == Reason::triangle ? "triangle {" : "independent set {";
        bool first = true;
        for_each_vertex(witness, [&](int v) {
            s += (first ? "" : ",") + std::to_string(v);
            first = false;
        });
        return s + "}";
    }
};

using Membership = std::variant<ClassParams, Rejection>;

inline std::optional<VertexSet> find_triangle(const Graph& g)
{
    for (int u = 0; u < g.order(); ++u) {
        VertexSet later = g.neighbors(u) & ~low_bits(u + 1);
        while (later) {
            int v = lowest(later);
            later &= later - 1;
            if (VertexSet common = g.neighbors(u) & g.neighbors(v))
                return bit(u) | bit(v) | bit(lowest(common));
        }
    }
    return std::nullopt;
}

/// Accepts g as a (3,k)-graph: triangle-free with no independent set of order k.
inline Membership validate_member(const Graph& g, int k)
{
    if (k < 1)
        throw std::invalid_argument("validate_member needs k >= 1");
    if (auto t = find_triangle(g))
        return Rejection{Rejection::Reason::triangle, *t};
    VertexSet big = max_independent_set(g, g.vertices(), k);
    if (popcount(big) >= k) {
        // trim to exactly k vertices
        while (popcount(big) > k)
            big &= big - 1;
        return Rejection{Rejection::Reason::independent_set, big};
    }
    if (g.max_degree() >= k && g.order() > 0)
        throw std::logic_error("neighborhood of size >= k must be dependent in a (3,k)-graph");
    return ClassParams{k, g.order(), g.edge_count()};
}

inline bool is_member(const Graph& g, int k) { return std::holds_alternative<ClassParams>(validate_member(g, k)); }

/// gamma(v) = e(G) - Z(v) - e(3,k-1,n-deg(v)-1).
inline int deficiency_vertex(const Graph& g, int v, int k, const EdgeBoundTable& table)
{
    return g.edge_count() - z_value(g, v) - table.bound(k - 1, g.order() - g.degree(v) - 1);
}

/// Sum of the vertex deficiencies.
inline long deficiency_graph(const Graph& g, int k, const EdgeBoundTable& table)
{
    long sum = 0;
    for (int v = 0; v < g.order(); ++v)
        sum += deficiency_vertex(g, v, k, table);
    return sum;
}

/// The same quantity from the degree histogram alone:
/// n e - sum_i n_i (i^2 + e(3,k-1,n-i-1)).
inline long deficiency_from_degrees(int n, int e, const std::vector<int>& counts_by_degree, int k,
                                    const EdgeBoundTable& table)
{
    long gamma = static_cast<long>(n) * e;
    for (std::size_t i = 0; i < counts_by_degree.size(); ++i) {
        if (counts_by_degree[i] == 0)
            continue;
        const long d = static_cast<long>(i);
        gamma -= counts_by_degree[i] * (d * d + table.bound(k - 1, n - static_cast<int>(i) - 1));
    }
    return gamma;
}

} // namespace ramsey

#endif // RAMSEY_MEMBERSHIP_HPP
