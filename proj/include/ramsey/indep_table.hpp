#ifndef RAMSEY_INDEP_TABLE_HPP
#define RAMSEY_INDEP_TABLE_HPP

/// \file indep_table.hpp
/// \brief Precomputed independence numbers of every induced subgraph of a
/// small base graph, banded to the values an extension run can ask about,
/// and the pair-complement table used when all assigned sets share one order.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsey/graph.hpp"
#include "ramsey/independence.hpp"

namespace ramsey {

inline constexpr int kDefaultTableCap = 28;

/// One byte per vertex subset. cell(S) is min(alpha(S), band_high) when
/// alpha(S) >= band_low and 0 otherwise.
class IndependenceTable {
public:
    /// Fills the table for a base graph with alpha < k, for extensions of
    /// degree d: band [k+1-d, k-1].
    static IndependenceTable build(const Graph& base, int k, int d, int cap = kDefaultTableCap)
    {
        if (base.order() > cap)
            throw CapacityError("independence table for order " + std::to_string(base.order()) + " exceeds cap " +
                                std::to_string(cap) + "; use lazy queries");
        if (d < 1 || k + 1 - d < 1)
            throw std::invalid_argument("independence table needs d >= 1 and k+1-d >= 1");
        IndependenceTable t;
        t.base_ = base;
        t.band_low_ = k + 1 - d;
        t.band_high_ = k - 1;
        t.cells_.assign(std::size_t{1} << base.order(), 0);

        const VertexSet all = base.vertices();
        for (int j = t.band_high_; j >= t.band_low_; --j) {
            const auto value = static_cast<std::uint8_t>(j);
            for_each_independent_set(base, all, j, [&](VertexSet s) { t.fill_supersets(s, value); });
        }
        return t;
    }

    const Graph& base() const { return base_; }
    int band_low() const { return band_low_; }
    int band_high() const { return band_high_; }

    int cell(VertexSet s) const { return cells_[static_cast<std::size_t>(s)]; }

    /// Whether alpha(S) >= t, for t inside the band.
    bool has_independent_set(VertexSet s, int t) const
    {
        if (t < band_low_ || t > band_high_)
            throw std::out_of_range("query order " + std::to_string(t) + " outside band");
        return cell(s) >= t;
    }

private:
    // Upward closure from s. A filled cell has all of its supersets filled, so
    // the walk stops there.
    void fill_supersets(VertexSet s, std::uint8_t value)
    {
        std::vector<VertexSet> stack{s};
        const VertexSet all = base_.vertices();
        while (!stack.empty()) {
            VertexSet cur = stack.back();
            stack.pop_back();
            auto& c = cells_[static_cast<std::size_t>(cur)];
            if (c != 0)
                continue;
            c = value;
            for_each_vertex(all & ~cur, [&](int w) {
                if (cells_[static_cast<std::size_t>(cur | bit(w))] == 0)
                    stack.push_back(cur | bit(w));
            });
        }
    }

    Graph base_;
    int band_low_ = 0;
    int band_high_ = 0;
    std::vector<std::uint8_t> cells_;
};

/// For the independent sets of one order s (indexed in lowest-vertex-first
/// discovery order), whether the complement of each pair's union still holds
/// an independent set of order t. Pairs include (S,S).
class PairComplementTable {
public:
    static PairComplementTable build(const Graph& base, int s, int t)
    {
        PairComplementTable p;
        p.set_order_ = s;
        p.target_ = t;
        p.sets_ = independent_sets(base, s);
        const std::size_t m = p.sets_.size();
        p.bits_.assign(m * (m + 1) / 2, false);
        const VertexSet all = base.vertices();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j)
                p.bits_[p.slot(i, j)] = independence_number(base, all & ~(p.sets_[i] | p.sets_[j]), t) >= t;
        for (std::size_t i = 0; i < m; ++i)
            p.index_.emplace_back(p.sets_[i], i);
        std::sort(p.index_.begin(), p.index_.end());
        return p;
    }

    int set_order() const { return set_order_; }
    int target() const { return target_; }
    const std::vector<VertexSet>& sets() const { return sets_; }

    bool entry(std::size_t i, std::size_t j) const { return bits_[slot(i, j)]; }

    std::optional<std::size_t> index_of(VertexSet s) const
    {
        auto it = std::lower_bound(index_.begin(), index_.end(), std::make_pair(s, std::size_t{0}));
        if (it == index_.end() || it->first != s)
            return std::nullopt;
        return it->second;
    }

private:
    std::size_t slot(std::size_t i, std::size_t j) const
    {
        if (i > j)
            std::swap(i, j);
        return j * (j + 1) / 2 + i;
    }

    int set_order_ = 0;
    int target_ = 0;
    std::vector<VertexSet> sets_;
    std::vector<std::pair<VertexSet, std::size_t>> index_;
    std::vector<bool> bits_;
};

/// Answers "does base[S] contain an independent set of order t" either from
/// a precomputed table or by direct branch and bound with early exit.
class IndependenceOracle {
public:
    explicit IndependenceOracle(const Graph& base) : base_(&base) {}
    IndependenceOracle(const Graph& base, IndependenceTable table) : base_(&base), table_(std::move(table)) {}

    bool has_independent_set(VertexSet s, int t) const
    {
        if (t <= 0)
            return true;
        if (table_ && t >= table_->band_low() && t <= table_->band_high())
            return table_->cell(s) >= t;
        return independence_number(*base_, s, t) >= t;
    }

    bool uses_table() const { return table_.has_value(); }

private:
    const Graph* base_;
    std::optional<IndependenceTable> table_;
};

} // namespace ramsey

#endif // RAMSEY_INDEP_TABLE_HPP
