#ifndef RAMSEY_TESTS_SUPPORT_HPP
#define RAMSEY_TESTS_SUPPORT_HPP

// Test-only reference implementations and shared property checks. The
// references are deliberately naive and share no code with the library's
// search routines.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ramsey/bound_table.hpp"
#include "ramsey/canonical.hpp"
#include "ramsey/degseq.hpp"
#include "ramsey/extender.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/membership.hpp"
#include "ramsey/oracle.hpp"
#include "ramsey/store.hpp"

namespace testing_support {

using namespace ramsey;

inline std::string data_path(const std::string& name) { return std::string(RAMSEY_DATA_DIR) + "/" + name; }

/// Alpha by checking every vertex subset.
inline int naive_alpha(const Graph& g)
{
    const int n = g.order();
    int best = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            if ((s >> u) & 1U)
                ok = (g.neighbors(u) & s) == 0;
        if (ok)
            best = std::max(best, std::popcount(s));
    }
    return best;
}

inline int naive_alpha_of(const Graph& g, VertexSet pool)
{
    int best = 0;
    for (VertexSet s = pool;; s = (s - 1) & pool) {
        bool ok = true;
        for (int u = 0; u < g.order() && ok; ++u)
            if ((s >> u) & 1U)
                ok = (g.neighbors(u) & s) == 0;
        if (ok)
            best = std::max(best, std::popcount(s));
        if (s == 0)
            break;
    }
    return best;
}

inline bool naive_triangle_free(const Graph& g)
{
    for (int a = 0; a < g.order(); ++a)
        for (int b = a + 1; b < g.order(); ++b)
            for (int c = b + 1; c < g.order(); ++c)
                if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c))
                    return false;
    return true;
}

/// Isomorphism by trying every bijection (small orders only).
inline bool naive_isomorphic(const Graph& a, const Graph& b)
{
    if (a.order() != b.order() || a.edge_count() != b.edge_count())
        return false;
    std::vector<int> p(static_cast<std::size_t>(a.order()));
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < a.order() && ok; ++u)
            for (int v = u + 1; v < a.order() && ok; ++v)
                ok = a.adjacent(u, v) == b.adjacent(p[static_cast<std::size_t>(u)], p[static_cast<std::size_t>(v)]);
        if (ok)
            return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p)
{
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

inline Graph random_triangle_free(std::mt19937_64& rng, int n, int attempts)
{
    Graph g(n);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < attempts; ++i) {
        int u = pick(rng), v = pick(rng);
        if (u != v && !g.adjacent(u, v) && (g.neighbors(u) & g.neighbors(v)) == 0)
            g.add_edge(u, v);
    }
    return g;
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n)
{
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// Bounds for small k from the k=1 base plus the shipped seed.
inline EdgeBoundTable seeded_bounds(int k_to)
{
    EdgeBoundTable t = trivial_seed();
    const EdgeBoundTable known = EdgeBoundTable::load(data_path("known_bounds.csv"));
    for (const auto& [key, e] : known.entries())
        t.set(key.first, key.second, e);
    return propagate_bounds(2, k_to, t);
}

/// Oracle stores are expensive enough to be worth sharing across tests.
inline const GraphStore& oracle_store(int n, int k)
{
    static std::map<std::pair<int, int>, GraphStore> cache;
    auto it = cache.find({n, k});
    if (it == cache.end())
        it = cache.emplace(std::make_pair(n, k), brute_force_graphs(n, k)).first;
    return it->second;
}

inline GraphStore oracle_upto(int n, int k, int e_max)
{
    GraphStore s = oracle_store(n, k);
    s.graphs = s.graphs.filtered([&](const Graph& g) { return g.edge_count() <= e_max; });
    s.box.e_max = e_max;
    return s;
}

struct PropertyOutcome {
    bool ok = true;
    long cases = 0;
    std::string first_failure;

    void fail(const std::string& why)
    {
        if (ok)
            first_failure = why;
        ok = false;
    }
};

/// Canonical form is unchanged by random relabeling, the labeling maps the
/// graph onto its canonical graph, and on small orders form equality matches
/// naive isomorphism.
inline PropertyOutcome canonical_invariance(int cases, std::uint64_t seed)
{
    PropertyOutcome out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> order(0, 24);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    for (int i = 0; i < cases; ++i) {
        const int n = order(rng);
        const Graph g = i % 3 == 0 ? random_triangle_free(rng, n, 3 * n) : random_graph(rng, n, density(rng));
        const Graph h = g.permuted(random_permutation(rng, n));
        ++out.cases;
        const CanonicalLabeling lg = canonical_labeling(g);
        if (lg.form != canonical_form(h))
            out.fail("case " + std::to_string(i) + ": relabeled graph has a different canonical form");
        if (n <= 7) {
            // equal forms exactly when a bijection exists
            const Graph other = random_graph(rng, n, density(rng));
            if ((canonical_form(other) == lg.form) != naive_isomorphic(g, other))
                out.fail("case " + std::to_string(i) + ": canonical forms disagree with naive isomorphism");
        }
        // the labeling must map g onto its canonical graph
        std::vector<int> inv(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p)
            inv[static_cast<std::size_t>(lg.order[static_cast<std::size_t>(p)])] = p;
        if (!(g.permuted(inv) == lg.canonical))
            out.fail("case " + std::to_string(i) + ": labeling does not produce the canonical graph");
    }
    return out;
}

/// Pruning configurations compared against the default engine.
inline std::vector<std::pair<std::string, PruneOptions>> prune_variants()
{
    std::vector<std::pair<std::string, PruneOptions>> v;
    for (const char* name : {"pair", "forbidden", "ascending", "edge_bound", "degree_floor"}) {
        PruneOptions p;
        if (std::string(name) == "pair")
            p.pair = false;
        else if (std::string(name) == "forbidden")
            p.forbidden = false;
        else if (std::string(name) == "ascending")
            p.ascending = false;
        else if (std::string(name) == "edge_bound")
            p.edge_bound = false;
        else
            p.degree_floor = false;
        v.emplace_back(std::string("no ") + name, p);
    }
    PruneOptions weak;
    weak.forbidden_independent = true;
    v.emplace_back("weak forbidden bound", weak);
    PruneOptions audit;
    audit.audit = true;
    v.emplace_back("audit", audit);
    return v;
}

/// Every gluing task over (3,k;m)-bases with k in [k_lo, k_hi] and
/// m <= m_max: all degrees d, d_min in {0, d}, and an edge ceiling a few
/// above e(3,k+1,n). Each pruning variant must reproduce the default output.
inline PropertyOutcome pruning_neutrality(int k_lo, int k_hi, int m_max, const EdgeBoundTable& table)
{
    PropertyOutcome out;
    const auto variants = prune_variants();
    for (int k = k_lo; k <= k_hi; ++k) {
        for (int m = 0; m <= m_max; ++m) {
            for (const auto& [form, h] : oracle_store(m, k).graphs) {
                for (int d = 0; d <= k; ++d) {
                    const int n = m + d + 1;
                    auto base = table.finite_bound(k + 1, n);
                    if (!base)
                        continue;
                    for (int d_min : {0, d}) {
                        ExtensionTask task = ExtensionTask::make(k, m, d, *base + 3, d_min);
                        GlueExtender ref(h, task);
                        const GraphSet expected = ref.run();
                        for (const auto& [name, prune] : variants) {
                            ExtensionTask t2 = task;
                            t2.prune = prune;
                            GlueExtender x(h, t2);
                            ++out.cases;
                            try {
                                if (!(x.run() == expected))
                                    out.fail(name + " changed the output for H=" + encode_graph6(h) + " d=" +
                                             std::to_string(d));
                            } catch (const std::exception& e) {
                                out.fail(name + " threw for H=" + encode_graph6(h) + ": " + e.what());
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

/// For every (k,n) with n <= n_max: the union over minimum degrees of
/// min_degree_extend equals the exhaustive set.
inline PropertyOutcome min_degree_equivalence(int k_lo, int k_hi, int n_max)
{
    PropertyOutcome out;
    for (int k = k_lo; k <= k_hi; ++k) {
        for (int n = 1; n <= n_max; ++n) {
            const GraphStore& all = oracle_store(n, k);
            const int e_max = (k - 1) * n / 2;
            GraphSet got;
            for (int d = 0; d <= std::min(k - 1, n - 1); ++d) {
                const int m = n - d - 1;
                GraphStore inputs = oracle_store(m, k - 1);
                const MinDegreeResult r = min_degree_extend({k, n, e_max}, d, inputs);
                if (!r.complete)
                    out.fail("inputs not recognized as complete for k=" + std::to_string(k) + " n=" +
                             std::to_string(n));
                for (const auto& [f, g] : r.graphs) {
                    if (g.min_degree() != d)
                        out.fail("min_degree_extend returned a graph with the wrong minimum degree");
                    got.insert_canonical(f, g);
                }
            }
            ++out.cases;
            if (!(got == all.graphs))
                out.fail("k=" + std::to_string(k) + " n=" + std::to_string(n) + ": " + std::to_string(got.size()) +
                         " graphs vs " + std::to_string(all.graphs.size()) + " from the oracle");
        }
    }
    return out;
}

/// Vertex-sum and degree-histogram forms of the graph deficiency agree,
/// and e - Z(v) equals e(G_v).
inline PropertyOutcome deficiency_identity(const std::vector<std::pair<Graph, int>>& corpus, const EdgeBoundTable& table)
{
    PropertyOutcome out;
    for (const auto& [g, k] : corpus) {
        ++out.cases;
        for (int v = 0; v < g.order(); ++v)
            if (g.edge_count() - z_value(g, v) != local_subgraph(g, v).edge_count())
                out.fail("e - Z(v) differs from e(G_v) on " + encode_graph6(g));
        const auto hist = g.degree_histogram();
        const long a = deficiency_graph(g, k, table);
        const long b = deficiency_from_degrees(g.order(), g.edge_count(), hist, k, table);
        if (a != b)
            out.fail("deficiency forms disagree on " + encode_graph6(g));
        if (a < 0)
            out.fail("negative deficiency on a valid graph " + encode_graph6(g));
    }
    return out;
}

/// Every oracle graph for k in [k_lo,k_hi], n <= n_max, with the given k.
inline std::vector<std::pair<Graph, int>> oracle_corpus(int k_lo, int k_hi, int n_max)
{
    std::vector<std::pair<Graph, int>> c;
    for (int k = k_lo; k <= k_hi; ++k)
        for (int n = 0; n <= n_max; ++n)
            for (const auto& [f, g] : oracle_store(n, k).graphs)
                c.emplace_back(g, k);
    return c;
}

inline PropertyOutcome infinity_monotone(const EdgeBoundTable& t)
{
    PropertyOutcome out;
    out.cases = static_cast<long>(t.entries().size());
    if (!t.infinity_monotone())
        out.fail("a finite cell follows an infinite one");
    // finite values are non-decreasing in n
    for (const auto& [key, e] : t.entries()) {
        const BoundEntry* next = t.find(key.first, key.second + 1);
        if (next && !e.is_infinite() && !next->is_infinite() && next->value < e.value)
            out.fail("bound decreases at k=" + std::to_string(key.first) + " n=" + std::to_string(key.second));
    }
    return out;
}

} // namespace testing_support

#endif // RAMSEY_TESTS_SUPPORT_HPP
