#ifndef RAMSEY_BOUND_TABLE_HPP
#define RAMSEY_BOUND_TABLE_HPP

/// \file bound_table.hpp
/// \brief Table of exact values and lower bounds for e(3,k,n), the minimum
/// number of edges of a triangle-free graph on n vertices with independence
/// number below k.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ramsey {

/// A (k,n) cell the caller needed is not in the table.
class MissingEntryError : public std::runtime_error {
public:
    MissingEntryError(int k, int n)
        : std::runtime_error("no bound for e(3," + std::to_string(k) + "," + std::to_string(n) + ")"), k_(k), n_(n)
    {
    }
    int k() const { return k_; }
    int n() const { return n_; }

private:
    int k_;
    int n_;
};

/// A finite bound was required but the table says no such graph exists.
class InfiniteEntryError : public std::runtime_error {
public:
    InfiniteEntryError(int k, int n)
        : std::runtime_error("e(3," + std::to_string(k) + "," + std::to_string(n) + ") is infinite")
    {
    }
};

enum class BoundKind { exact, lower, infinite };

inline const char* to_string(BoundKind kind)
{
    switch (kind) {
    case BoundKind::exact: return "exact";
    case BoundKind::lower: return "lower";
    case BoundKind::infinite: return "infinite";
    }
    return "?";
}

inline BoundKind parse_bound_kind(const std::string& s)
{
    if (s == "exact")
        return BoundKind::exact;
    if (s == "lower")
        return BoundKind::lower;
    if (s == "infinite")
        return BoundKind::infinite;
    throw std::invalid_argument("unknown bound kind '" + s + "'");
}

struct BoundEntry {
    BoundKind kind = BoundKind::lower;
    int value = 0; // unused when infinite
    std::string provenance;

    static BoundEntry exact(int v, std::string why) { return {BoundKind::exact, v, std::move(why)}; }
    static BoundEntry lower(int v, std::string why) { return {BoundKind::lower, v, std::move(why)}; }
    static BoundEntry infinite(std::string why) { return {BoundKind::infinite, 0, std::move(why)}; }

    bool is_infinite() const { return kind == BoundKind::infinite; }

    /// Same bound, ignoring provenance.
    bool same_bound(const BoundEntry& o) const
    {
        return kind == o.kind && (kind == BoundKind::infinite || value == o.value);
    }
};

/// e(3,k+1,n) from the classical closed forms with k = k_plus_1 - 1. Inside
/// their range (n <= 13k/4 - 1, or k = 4t and n = 13t) the value is exact
/// whenever e(3,k+1,n) is finite; elsewhere 6n - 13k is returned as a lower
/// bound.
inline BoundEntry closed_form_e(int k_plus_1, int n)
{
    if (k_plus_1 < 2)
        throw std::invalid_argument("closed_form_e needs k+1 >= 2");
    const int k = k_plus_1 - 1;
    if (n <= k)
        return BoundEntry::exact(0, "closed form");
    if (n <= 2 * k)
        return BoundEntry::exact(n - k, "closed form");
    if (2 * n <= 5 * k)
        return BoundEntry::exact(3 * n - 5 * k, "closed form");
    if (n <= 3 * k)
        return BoundEntry::exact(5 * n - 10 * k, "closed form");
    if (4 * n <= 13 * k - 4 || (k % 4 == 0 && 4 * n == 13 * k))
        return BoundEntry::exact(6 * n - 13 * k, "closed form");
    return BoundEntry::lower(std::max(0, 6 * n - 13 * k), "closed form");
}

/// Whether closed_form_e is exact (given finiteness) at this cell.
inline bool closed_form_applies(int k_plus_1, int n) { return closed_form_e(k_plus_1, n).kind == BoundKind::exact; }

class EdgeBoundTable {
public:
    void set(int k, int n, BoundEntry entry) { entries_[{k, n}] = std::move(entry); }

    /// Merges a bound into the cell keeping the stronger information:
    /// infinite beats everything, exact beats lower, larger lower wins.
    void merge(int k, int n, const BoundEntry& entry)
    {
        auto it = entries_.find({k, n});
        if (it == entries_.end()) {
            entries_.emplace(std::make_pair(k, n), entry);
            return;
        }
        BoundEntry& cur = it->second;
        if (cur.is_infinite())
            return;
        if (entry.is_infinite() || (entry.kind == BoundKind::exact && cur.kind == BoundKind::lower) ||
            (entry.kind == cur.kind && entry.value > cur.value && cur.kind == BoundKind::lower))
            cur = entry;
    }

    const BoundEntry* find(int k, int n) const
    {
        auto it = entries_.find({k, n});
        return it == entries_.end() ? nullptr : &it->second;
    }

    bool contains(int k, int n) const { return find(k, n) != nullptr || implied_infinite(k, n); }

    /// Effective entry: the stored one, or infinite when a smaller order at
    /// the same k is already infinite.
    BoundEntry lookup(int k, int n) const
    {
        if (const BoundEntry* e = find(k, n))
            return *e;
        if (implied_infinite(k, n))
            return BoundEntry::infinite("implied by smaller order");
        throw MissingEntryError(k, n);
    }

    /// Finite bound value, or nullopt when infinite. Throws on missing cells.
    std::optional<int> finite_bound(int k, int n) const
    {
        BoundEntry e = lookup(k, n);
        if (e.is_infinite())
            return std::nullopt;
        return e.value;
    }

    /// Finite bound value; infinite cells are an error.
    int bound(int k, int n) const
    {
        auto v = finite_bound(k, n);
        if (!v)
            throw InfiniteEntryError(k, n);
        return *v;
    }

    /// Smallest n with an infinite entry at this k.
    std::optional<int> first_infinite(int k) const
    {
        for (auto it = entries_.lower_bound({k, -1}); it != entries_.end() && it->first.first == k; ++it)
            if (it->second.is_infinite())
                return it->first.second;
        return std::nullopt;
    }

    /// Every cell at or beyond the first infinite n of its k is infinite.
    bool infinity_monotone() const
    {
        for (const auto& [key, entry] : entries_) {
            auto first = first_infinite(key.first);
            if (first && key.second > *first && !entry.is_infinite())
                return false;
        }
        return true;
    }

    const std::map<std::pair<int, int>, BoundEntry>& entries() const { return entries_; }

    bool empty() const { return entries_.empty(); }

    void write_csv(std::ostream& out) const
    {
        out << "k,n,kind,value,provenance\n";
        for (const auto& [key, e] : entries_) {
            out << key.first << ',' << key.second << ',' << to_string(e.kind) << ',';
            if (!e.is_infinite())
                out << e.value;
            out << ',' << quote(e.provenance) << '\n';
        }
    }

    void save(const std::string& path) const
    {
        std::ofstream out(path, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + path);
        write_csv(out);
    }

    static EdgeBoundTable read_csv(std::istream& in, const std::string& source = "<stream>")
    {
        EdgeBoundTable t;
        std::string line;
        int line_no = 0;
        bool header = false;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty() || line[0] == '#')
                continue;
            auto fields = split_csv(line);
            if (!header) {
                header = true;
                if (fields.size() < 5 || fields[0] != "k" || fields[1] != "n" || fields[2] != "kind")
                    throw std::runtime_error(source + ":" + std::to_string(line_no) +
                                             ": expected header k,n,kind,value,provenance");
                continue;
            }
            if (fields.size() != 5)
                throw std::runtime_error(source + ":" + std::to_string(line_no) + ": expected 5 fields");
            try {
                const int k = std::stoi(fields[0]);
                const int n = std::stoi(fields[1]);
                const BoundKind kind = parse_bound_kind(fields[2]);
                BoundEntry e{kind, 0, fields[4]};
                if (kind != BoundKind::infinite) {
                    e.value = std::stoi(fields[3]);
                    if (e.value < 0)
                        throw std::invalid_argument("negative bound");
                } else if (!fields[3].empty()) {
                    throw std::invalid_argument("infinite entry with a value");
                }
                t.merge(k, n, e);
            } catch (const std::invalid_argument& ex) {
                throw std::runtime_error(source + ":" + std::to_string(line_no) + ": " + ex.what());
            }
        }
        return t;
    }

    static EdgeBoundTable load(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open " + path);
        return read_csv(in, path);
    }

    static std::vector<std::string> split_csv(const std::string& line)
    {
        std::vector<std::string> out;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cur.push_back(c);
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                out.push_back(std::move(cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        out.push_back(std::move(cur));
        return out;
    }

private:
    static std::string quote(const std::string& s)
    {
        if (s.find_first_of(",\"") == std::string::npos)
            return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"')
                q.push_back('"');
            q.push_back(c);
        }
        q.push_back('"');
        return q;
    }

    bool implied_infinite(int k, int n) const
    {
        auto first = first_infinite(k);
        return first && n >= *first;
    }

    std::map<std::pair<int, int>, BoundEntry> entries_;
};

} // namespace ramsey

#endif // RAMSEY_BOUND_TABLE_HPP
