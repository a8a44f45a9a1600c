#ifndef RAMSEY_DEGSEQ_HPP
#define RAMSEY_DEGSEQ_HPP

/// \file degseq.hpp
/// \brief Degree-sequence feasibility for (3,k;n,e)-graphs.
///
/// A (3,k;n,e)-graph with n_i vertices of degree i satisfies
///   n = sum n_i,  2e = sum i n_i,
///   gamma = n e - sum n_i (i^2 + e(3,k-1,n-i-1)) >= 0.
/// Everything here works on that integer system: enumerating its solutions,
/// deriving lower bounds on e(3,k,n), checking whether a set of extension
/// runs is guaranteed to have produced a complete class, and propagating
/// bounds from one k to the next.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsey/bound_table.hpp"

namespace ramsey {

struct DegreeSequenceSolution {
    int d_lo = 0;
    /// counts[j] = number of vertices of degree d_lo + j
    std::vector<int> counts;
    int n = 0;
    int e = 0;
    long slack = 0;

    int count(int degree) const
    {
        const int j = degree - d_lo;
        return j < 0 || j >= static_cast<int>(counts.size()) ? 0 : counts[static_cast<std::size_t>(j)];
    }

    int d_hi() const { return d_lo + static_cast<int>(counts.size()) - 1; }

    std::string describe() const
    {
        std::ostringstream s;
        bool first = true;
        for (std::size_t j = 0; j < counts.size(); ++j) {
            if (counts[j] == 0)
                continue;
            s << (first ? "" : " ") << 'n' << d_lo + static_cast<int>(j) << '=' << counts[j];
            first = false;
        }
        s << " e=" << e << " gamma=" << slack;
        return s.str();
    }

    friend bool operator==(const DegreeSequenceSolution&, const DegreeSequenceSolution&) = default;
};

namespace detail {

/// The integer system for one (n, e): degrees d_lo..d_hi with per-degree
/// weight i^2 + bound (nullopt marks a degree that cannot occur).
class SequenceSystem {
public:
    SequenceSystem(int n, int e, int d_lo, std::vector<std::optional<long>> weights)
        : n_(n), e_(e), d_lo_(d_lo), weights_(std::move(weights))
    {
        for (std::size_t j = 0; j < weights_.size(); ++j)
            if (weights_[j])
                allowed_.push_back(static_cast<int>(j));
        build_hulls();
    }

    /// Calls f(solution) in lexicographic order of the count vector; f
    /// returns false to stop early.
    template <typename F>
    void enumerate(F&& f) const
    {
        std::vector<int> counts(weights_.size(), 0);
        const long budget = static_cast<long>(n_) * e_;
        bool stop = false;
        walk(0, n_, 2L * e_, budget, counts, f, stop);
    }

    bool feasible() const
    {
        bool found = false;
        enumerate([&](const DegreeSequenceSolution&) {
            found = true;
            return false;
        });
        return found;
    }

private:
    struct HullPoint {
        long x;
        long w;
    };

    void build_hulls()
    {
        hulls_.resize(allowed_.size());
        for (std::size_t s = 0; s < allowed_.size(); ++s) {
            std::vector<HullPoint> h;
            for (std::size_t t = s; t < allowed_.size(); ++t) {
                HullPoint p{d_lo_ + allowed_[t], *weights_[static_cast<std::size_t>(allowed_[t])]};
                while (h.size() >= 2) {
                    const HullPoint& a = h[h.size() - 2];
                    const HullPoint& b = h.back();
                    // drop b if it lies on or above segment a-p
                    if ((b.w - a.w) * (p.x - a.x) >= (p.w - a.w) * (b.x - a.x))
                        h.pop_back();
                    else
                        break;
                }
                h.push_back(p);
            }
            hulls_[s] = std::move(h);
        }
    }

    // Whether the real relaxation over allowed_[s..] with `rest` vertices and
    // degree sum `deg` stays within `budget`.
    bool relaxation_fits(std::size_t s, long rest, long deg, long budget) const
    {
        if (rest == 0)
            return deg == 0 && budget >= 0;
        const auto& h = hulls_[s];
        if (deg < h.front().x * rest || deg > h.back().x * rest)
            return false;
        for (std::size_t t = 0; t + 1 < h.size(); ++t) {
            const HullPoint& a = h[t];
            const HullPoint& b = h[t + 1];
            if (deg <= b.x * rest) {
                // a.w (b.x R - D) + b.w (D - a.x R) <= budget (b.x - a.x)
                return a.w * (b.x * rest - deg) + b.w * (deg - a.x * rest) <= budget * (b.x - a.x);
            }
        }
        return h.back().w * rest <= budget; // single point hull
    }

    template <typename F>
    void walk(std::size_t s, long rest, long deg, long budget, std::vector<int>& counts, F& f, bool& stop) const
    {
        if (stop)
            return;
        if (s == allowed_.size()) {
            if (rest == 0 && deg == 0 && budget >= 0) {
                DegreeSequenceSolution sol{d_lo_, counts, n_, e_, budget};
                if (!f(sol))
                    stop = true;
            }
            return;
        }
        if (!relaxation_fits(s, rest, deg, budget))
            return;
        const int j = allowed_[s];
        const long degree = d_lo_ + j;
        const long w = *weights_[static_cast<std::size_t>(j)];
        if (s + 1 == allowed_.size()) {
            if (degree * rest == deg && w * rest <= budget) {
                counts[static_cast<std::size_t>(j)] = static_cast<int>(rest);
                walk(s + 1, 0, 0, budget - w * rest, counts, f, stop);
                counts[static_cast<std::size_t>(j)] = 0;
            }
            return;
        }
        const long next_lo = d_lo_ + allowed_[s + 1];
        const long top = d_lo_ + allowed_.back();
        // remaining degree sum must stay within [next_lo, top] per vertex
        long lo = 0;
        long hi = rest;
        if (next_lo * rest > deg)
            lo = std::max(lo, (next_lo * rest - deg + (next_lo - degree) - 1) / (next_lo - degree));
        if (top * rest < deg)
            return;
        hi = std::min(hi, (top * rest - deg) / (top - degree));
        for (long c = lo; c <= hi && !stop; ++c) {
            if (w * c > budget)
                break;
            counts[static_cast<std::size_t>(j)] = static_cast<int>(c);
            walk(s + 1, rest - c, deg - degree * c, budget - w * c, counts, f, stop);
        }
        counts[static_cast<std::size_t>(j)] = 0;
    }

    int n_;
    int e_;
    int d_lo_;
    std::vector<std::optional<long>> weights_;
    std::vector<int> allowed_;
    std::vector<std::vector<HullPoint>> hulls_;
};

} // namespace detail

/// Degrees a vertex of a (3,k;n)-graph may have: 0..min(k-1, n-1); -1 when n = 0.
inline int max_possible_degree(int k, int n) { return std::min(k - 1, n - 1); }

/// First degree i with a finite e(3,k-1,n-i-1).
inline int default_min_degree(int k, int n, const EdgeBoundTable& table)
{
    for (int i = 0; i <= max_possible_degree(k, n); ++i)
        if (table.finite_bound(k - 1, n - i - 1))
            return i;
    return max_possible_degree(k, n) + 1;
}

/// Per-degree weights i^2 + e(3,k-1,n-i-1) + extra[i], nullopt where the
/// bound is infinite or the degree is excluded.
inline std::vector<std::optional<long>> sequence_weights(int k, int n, int d_lo, int d_hi, const EdgeBoundTable& table,
                                                         const std::function<std::optional<long>(int)>& extra = {})
{
    std::vector<std::optional<long>> w;
    for (int i = d_lo; i <= d_hi; ++i) {
        auto b = table.finite_bound(k - 1, n - i - 1);
        if (!b) {
            w.emplace_back();
            continue;
        }
        long add = 0;
        if (extra) {
            auto x = extra(i);
            if (!x) {
                w.emplace_back();
                continue;
            }
            add = *x;
        }
        w.emplace_back(static_cast<long>(i) * i + *b + add);
    }
    return w;
}

/// All degree sequences of (3,k;n,e)-graphs with degrees in [d_lo, d_hi]
/// allowed by the system above, in lexicographic order of the counts.
inline std::vector<DegreeSequenceSolution> feasible_sequences(int k, int n, int e, const EdgeBoundTable& table,
                                                              std::optional<int> d_lo = std::nullopt,
                                                              std::optional<int> d_hi = std::nullopt)
{
    const int lo = d_lo.value_or(default_min_degree(k, n, table));
    const int hi = d_hi.value_or(max_possible_degree(k, n));
    if (hi > k - 1)
        throw std::invalid_argument("degree ceiling above k-1");
    std::vector<DegreeSequenceSolution> out;
    if (lo > hi)
        return out;
    detail::SequenceSystem sys(n, e, lo, sequence_weights(k, n, lo, hi, table));
    sys.enumerate([&](const DegreeSequenceSolution& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

inline int max_edges(int k, int n) { return (k - 1) * n / 2; }

/// Smallest e for which the system has a solution (a lower bound on
/// e(3,k,n)), or infinite when none exists up to (k-1)n/2.
inline BoundEntry min_edge_bound(int k, int n, const EdgeBoundTable& table)
{
    const int lo = 0;
    const int hi = max_possible_degree(k, n);
    auto weights = sequence_weights(k, n, lo, hi, table);
    for (int e = 0; e <= max_edges(k, n); ++e) {
        detail::SequenceSystem sys(n, e, lo, weights);
        if (sys.feasible())
            return BoundEntry::lower(e, "degree sequences");
    }
    return BoundEntry::infinite("degree sequences");
}

/// Largest Z(v) a degree-d vertex of a (3,k;n,e)-graph can have.
inline int z_upper_bound(int k, int n, int e, int d, const EdgeBoundTable& table)
{
    return e - table.bound(k - 1, n - d - 1);
}

/// Smallest n with an infinite e(3,k,n), i.e. an upper bound on R(3,k).
inline std::optional<int> r_upper(int k, const EdgeBoundTable& table) { return table.first_infinite(k); }

// ---------------------------------------------------------------------------
// Closure plans

struct ClosureRow {
    int degree = 0;
    int m = 0;        // order of G_v
    int base = 0;     // e(3,k,m)
    int increment = 0;
    /// Inputs G_v with at most this many edges are extended (base + increment - 1).
    int ceiling() const { return base + increment - 1; }

    friend bool operator==(const ClosureRow&, const ClosureRow&) = default;
};

struct ClosurePlan {
    std::vector<ClosureRow> rows;

    const ClosureRow* row(int degree) const
    {
        for (const auto& r : rows)
            if (r.degree == degree)
                return &r;
        return nullptr;
    }

    void write_csv(std::ostream& out) const
    {
        out << "degree,m,base,increment,ceiling\n";
        for (const auto& r : rows)
            out << r.degree << ',' << r.m << ',' << r.base << ',' << r.increment << ',' << r.ceiling() << '\n';
    }

    static ClosurePlan read_csv(std::istream& in)
    {
        ClosurePlan p;
        std::string line;
        bool header = false;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty() || line[0] == '#')
                continue;
            auto f = EdgeBoundTable::split_csv(line);
            if (!header) {
                header = true;
                if (f.empty() || f[0] != "degree")
                    throw std::runtime_error("closure plan: expected header degree,m,base,increment,ceiling");
                continue;
            }
            if (f.size() != 5)
                throw std::runtime_error("closure plan: expected 5 fields in '" + line + "'");
            ClosureRow r{std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[3])};
            if (r.increment < 0)
                throw std::runtime_error("closure plan: negative increment");
            if (std::stoi(f[4]) != r.ceiling())
                throw std::runtime_error("closure plan: ceiling disagrees with base+increment-1");
            p.rows.push_back(r);
        }
        return p;
    }

    std::string fingerprint_text() const
    {
        std::ostringstream s;
        write_csv(s);
        return s.str();
    }
};

class PlanGapError : public std::runtime_error {
public:
    explicit PlanGapError(int degree)
        : std::runtime_error("closure plan has no row for feasible degree " + std::to_string(degree)), degree_(degree)
    {
    }
    int degree() const { return degree_; }

private:
    int degree_;
};

struct ClosureCheck {
    bool certified = false;
    /// Degree sequences (over all e' <= e) still allowed by the incremented
    /// bounds; empty iff certified.
    std::vector<DegreeSequenceSolution> survivors;
};

/// Degrees that can occur in a (3,k_plus_1;n)-graph: finite e(3,k,n-i-1).
inline std::vector<int> feasible_degrees(int k_plus_1, int n, const EdgeBoundTable& table)
{
    std::vector<int> out;
    for (int i = 0; i <= max_possible_degree(k_plus_1, n); ++i)
        if (table.finite_bound(k_plus_1 - 1, n - i - 1))
            out.push_back(i);
    return out;
}

namespace detail {

// Weight adjustment for one plan row: nullopt once the increment covers
// every (3,k;m)-graph, so the degree cannot occur in an ungenerated graph.
inline std::optional<long> row_extra(int k, const ClosureRow& r)
{
    if (r.ceiling() >= max_edges(k, r.m))
        return std::nullopt;
    return r.increment;
}

template <typename F>
void for_each_survivor(int k_plus_1, int n, int e, const ClosurePlan& plan, const EdgeBoundTable& table, F&& f)
{
    const int k = k_plus_1 - 1;
    const auto degrees = feasible_degrees(k_plus_1, n, table);
    for (int i : degrees)
        if (!plan.row(i))
            throw PlanGapError(i);
    if (degrees.empty())
        return;
    const int lo = degrees.front();
    const int hi = degrees.back();
    auto weights = sequence_weights(k_plus_1, n, lo, hi, table, [&](int i) -> std::optional<long> {
        return row_extra(k, *plan.row(i));
    });
    for (int ep = 0; ep <= e; ++ep) {
        SequenceSystem sys(n, ep, lo, weights);
        bool more = true;
        sys.enumerate([&](const DegreeSequenceSolution& s) {
            more = f(s);
            return more;
        });
        if (!more)
            return;
    }
}

} // namespace detail

/// Certifies that extending every (3,k;m_i, <= ceiling_i)-graph at degree i
/// yields every (3,k+1;n,<=e)-graph: with e(3,k,m_i)+t_i in place of
/// e(3,k,m_i) the system has no solution for any e' <= e.
inline ClosureCheck closure_sufficiency_check(int k_plus_1, int n, int e, const ClosurePlan& plan,
                                              const EdgeBoundTable& table)
{
    ClosureCheck out;
    detail::for_each_survivor(k_plus_1, n, e, plan, table, [&](const DegreeSequenceSolution& s) {
        out.survivors.push_back(s);
        return true;
    });
    out.certified = out.survivors.empty();
    return out;
}

/// Plan with every increment zero.
inline ClosurePlan zero_plan(int k_plus_1, int n, const EdgeBoundTable& table)
{
    ClosurePlan p;
    for (int i : feasible_degrees(k_plus_1, n, table)) {
        const int m = n - i - 1;
        p.rows.push_back({i, m, table.bound(k_plus_1 - 1, m), 0});
    }
    return p;
}

class NoFinitePlanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Estimated number of (3,k;m,e)-graphs with exactly e edges; the marginal
/// cost of raising a row's increment by one.
using CostModel = std::function<double(int m, int e)>;

inline CostModel uniform_cost()
{
    return [](int, int) { return 1.0; };
}

/// Greedy plan: repeatedly raise the increment whose unit step removes the
/// most surviving sequences per unit of estimated cost, preferring degrees
/// near the average degree 2e/n on ties.
inline ClosurePlan plan_closure(int k_plus_1, int n, int e, const EdgeBoundTable& table, const CostModel& cost = uniform_cost())
{
    const int k = k_plus_1 - 1;
    ClosurePlan plan = zero_plan(k_plus_1, n, table);
    const double avg = n == 0 ? 0.0 : 2.0 * e / n;

    auto count_survivors = [&](const ClosurePlan& p) {
        long c = 0;
        detail::for_each_survivor(k_plus_1, n, e, p, table, [&](const DegreeSequenceSolution&) {
            ++c;
            return true;
        });
        return c;
    };
    auto usage = [&](const ClosurePlan& p, int degree) {
        long c = 0;
        detail::for_each_survivor(k_plus_1, n, e, p, table, [&](const DegreeSequenceSolution& s) {
            c += s.count(degree) > 0 ? 1 : 0;
            return true;
        });
        return c;
    };

    long survivors = count_survivors(plan);
    while (survivors > 0) {
        int best_row = -1;
        double best_score = -1.0;
        bool best_removes = false;
        for (std::size_t r = 0; r < plan.rows.size(); ++r) {
            ClosureRow& row = plan.rows[r];
            if (!detail::row_extra(k, row))
                continue; // already covers every input
            const double c = std::max(cost(row.m, row.base + row.increment), 1e-12);
            ++row.increment;
            const long after = count_survivors(plan);
            --row.increment;
            const long removed = survivors - after;
            const bool removes = removed > 0;
            double score = removes ? static_cast<double>(removed) / c : static_cast<double>(usage(plan, row.degree)) / c;
            if (!removes && score == 0.0)
                continue;
            auto better = [&] {
                if (removes != best_removes)
                    return removes;
                if (score != best_score)
                    return score > best_score;
                return std::abs(row.degree - avg) < std::abs(plan.rows[static_cast<std::size_t>(best_row)].degree - avg);
            };
            if (best_row < 0 || better()) {
                best_row = static_cast<int>(r);
                best_score = score;
                best_removes = removes;
            }
        }
        if (best_row < 0)
            throw NoFinitePlanError("no increment reduces the surviving degree sequences");
        ++plan.rows[static_cast<std::size_t>(best_row)].increment;
        survivors = count_survivors(plan);
    }
    return plan;
}

// ---------------------------------------------------------------------------
// Bound propagation

/// e(3,1,0) = 0 and no (3,1)-graph has a vertex.
inline EdgeBoundTable trivial_seed()
{
    EdgeBoundTable t;
    t.set(1, 0, BoundEntry::exact(0, "trivial"));
    t.set(1, 1, BoundEntry::infinite("trivial"));
    return t;
}

/// Fills levels k_from..k_to. For each n (ascending, until the first
/// infinite cell) the stronger of the seed entry, the closed form, and the
/// degree-sequence bound is installed; an infeasible system makes the cell
/// infinite. Requires level k_from-1 to be present in the seed.
inline EdgeBoundTable propagate_bounds(int k_from, int k_to, const EdgeBoundTable& seed, int n_limit = 256)
{
    if (k_from < 2)
        throw std::invalid_argument("propagation starts at k >= 2");
    EdgeBoundTable t = seed;
    if (!t.contains(k_from - 1, 0))
        throw MissingEntryError(k_from - 1, 0);
    for (int k = k_from; k <= k_to; ++k) {
        const auto seeded_inf = seed.first_infinite(k);
        for (int n = 0; n <= n_limit; ++n) {
            if (seeded_inf && n >= *seeded_inf) {
                t.set(k, *seeded_inf, BoundEntry::infinite(seed.find(k, *seeded_inf)->provenance));
                break;
            }
            const BoundEntry* have = seed.find(k, n);
            if (have && have->kind == BoundKind::exact) {
                t.set(k, n, *have);
                continue;
            }
            BoundEntry derived = min_edge_bound(k, n, t);
            if (derived.is_infinite()) {
                t.set(k, n, derived);
                break;
            }
            BoundEntry cf = closed_form_e(k, n);
            BoundEntry best = cf.kind == BoundKind::exact ? cf : (derived.value > cf.value ? derived : cf);
            if (have && have->kind == BoundKind::lower && have->value > best.value && best.kind == BoundKind::lower)
                best = *have;
            t.set(k, n, best);
        }
        // cells of the seed beyond the first infinite one must agree
        if (auto first = t.first_infinite(k)) {
            for (const auto& [key, entry] : seed.entries())
                if (key.first == k && key.second > *first && !entry.is_infinite())
                    t.set(k, key.second, BoundEntry::infinite("implied by smaller order"));
        }
    }
    return t;
}

} // namespace ramsey

#endif // RAMSEY_DEGSEQ_HPP
