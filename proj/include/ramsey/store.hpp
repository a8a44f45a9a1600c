#ifndef RAMSEY_STORE_HPP
#define RAMSEY_STORE_HPP

/// \file store.hpp
/// \brief Isomorph-free graph collections. GraphSet is the in-memory
/// canonical-form-keyed set; GraphStore adds the parameter box, completeness
/// certificate and the on-disk layout (sorted graph6 + key=value sidecar).

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsey/canonical.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/graph6.hpp"

namespace ramsey {

class GraphSet {
public:
    /// Inserts the canonical representative of g; returns false for an
    /// isomorphic duplicate.
    bool insert(const Graph& g)
    {
        CanonicalLabeling lab = canonical_labeling(g);
        return graphs_.emplace(std::move(lab.form), std::move(lab.canonical)).second;
    }

    /// Inserts a graph that is already in canonical form.
    bool insert_canonical(CanonicalForm form, Graph canonical)
    {
        return graphs_.emplace(std::move(form), std::move(canonical)).second;
    }

    void merge(const GraphSet& other)
    {
        for (const auto& [f, g] : other.graphs_)
            graphs_.emplace(f, g);
    }

    bool contains(const Graph& g) const { return graphs_.count(canonical_form(g)) > 0; }
    bool contains(const CanonicalForm& f) const { return graphs_.count(f) > 0; }

    bool erase(const Graph& g) { return graphs_.erase(canonical_form(g)) > 0; }

    std::size_t size() const { return graphs_.size(); }
    bool empty() const { return graphs_.empty(); }

    auto begin() const { return graphs_.begin(); }
    auto end() const { return graphs_.end(); }

    std::vector<Graph> graphs() const
    {
        std::vector<Graph> out;
        out.reserve(graphs_.size());
        for (const auto& [f, g] : graphs_)
            out.push_back(g);
        return out;
    }

    /// (order, edges) -> count
    std::map<std::pair<int, int>, long> histogram() const
    {
        std::map<std::pair<int, int>, long> h;
        for (const auto& [f, g] : graphs_)
            ++h[{g.order(), g.edge_count()}];
        return h;
    }

    GraphSet filtered(const std::function<bool(const Graph&)>& keep) const
    {
        GraphSet out;
        for (const auto& [f, g] : graphs_)
            if (keep(g))
                out.graphs_.emplace(f, g);
        return out;
    }

    friend bool operator==(const GraphSet& a, const GraphSet& b)
    {
        if (a.size() != b.size())
            return false;
        auto it = b.graphs_.begin();
        for (const auto& [f, g] : a.graphs_) {
            if (f != it->first)
                return false;
            ++it;
        }
        return true;
    }

private:
    std::map<CanonicalForm, Graph> graphs_;
};

/// Parameter box of a store: (3,k)-graphs with order and edge count in range.
struct StoreBox {
    int k = 0;
    int n_min = 0;
    int n_max = 0;
    int e_min = 0;
    int e_max = 0;

    bool contains(int n, int e) const { return n >= n_min && n <= n_max && e >= e_min && e <= e_max; }
    /// Whether the box holds every (3,k;m)-graph with at most `ceiling`
    /// edges; no such graph has more than (k-1)m/2 edges.
    bool covers_class(int k_class, int m, int ceiling) const
    {
        const int needed = std::min(ceiling, (k_class - 1) * m / 2);
        return k == k_class && n_min <= m && n_max >= m && e_min <= 0 && (needed < 0 || e_max >= needed);
    }

    bool covers(const StoreBox& o) const
    {
        return k == o.k && n_min <= o.n_min && n_max >= o.n_max && e_min <= o.e_min && e_max >= o.e_max;
    }

    friend bool operator==(const StoreBox&, const StoreBox&) = default;
};

/// 64-bit FNV-1a, used for content fingerprints written into metadata.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 1469598103934665603ULL)
{
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v)
{
    std::ostringstream s;
    s << std::hex;
    s.width(16);
    s.fill('0');
    s << v;
    return s.str();
}

struct GraphStore {
    StoreBox box;
    GraphSet graphs;
    /// Set only when the contents are known to be every graph of the box.
    bool complete = false;
    /// Fingerprint of the closure certificate backing `complete`.
    std::string certificate;

    static std::string meta_path(const std::string& path) { return path + ".meta"; }

    void save(const std::string& path) const
    {
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot write " + path);
            for (const auto& [f, g] : graphs)
                out << encode_graph6(g) << '\n';
        }
        std::ofstream meta(meta_path(path), std::ios::binary | std::ios::trunc);
        if (!meta)
            throw std::runtime_error("cannot write " + meta_path(path));
        meta << "k=" << box.k << '\n'
             << "n_min=" << box.n_min << '\n'
             << "n_max=" << box.n_max << '\n'
             << "e_min=" << box.e_min << '\n'
             << "e_max=" << box.e_max << '\n'
             << "complete=" << (complete ? 1 : 0) << '\n'
             << "certificate=" << certificate << '\n'
             << "count=" << graphs.size() << '\n';
        for (const auto& [key, count] : graphs.histogram())
            meta << "count." << key.first << '.' << key.second << '=' << count << '\n';
    }

    /// Loads a store. The sidecar is optional; without it the box is
    /// inferred from the contents and k is taken from `default_k`.
    static GraphStore load(const std::string& path, int default_k = 0)
    {
        GraphStore s;
        std::map<std::string, std::string> meta;
        std::ifstream m(meta_path(path));
        if (m) {
            std::string line;
            while (std::getline(m, line)) {
                auto eq = line.find('=');
                if (eq != std::string::npos)
                    meta[line.substr(0, eq)] = line.substr(eq + 1);
            }
        }
        int n_lo = kMaxOrder;
        int n_hi = 0;
        int e_lo = kMaxOrder * kMaxOrder;
        int e_hi = 0;
        for (const Graph& g : read_graph6_file(path)) {
            s.graphs.insert(g);
            n_lo = std::min(n_lo, g.order());
            n_hi = std::max(n_hi, g.order());
            e_lo = std::min(e_lo, g.edge_count());
            e_hi = std::max(e_hi, g.edge_count());
        }
        auto get = [&](const std::string& key, int fallback) {
            auto it = meta.find(key);
            return it == meta.end() ? fallback : std::stoi(it->second);
        };
        if (s.graphs.empty()) {
            n_lo = n_hi = e_lo = e_hi = 0;
        }
        s.box = {get("k", default_k), get("n_min", n_lo), get("n_max", n_hi), get("e_min", e_lo), get("e_max", e_hi)};
        if (get("count", static_cast<int>(s.graphs.size())) != static_cast<int>(s.graphs.size()))
            throw std::runtime_error(path + ": graph count differs from its metadata");
        s.complete = get("complete", 0) != 0;
        if (auto it = meta.find("certificate"); it != meta.end())
            s.certificate = it->second;
        return s;
    }
};

} // namespace ramsey

#endif // RAMSEY_STORE_HPP
