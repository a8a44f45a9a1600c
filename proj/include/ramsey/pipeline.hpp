#ifndef RAMSEY_PIPELINE_HPP
#define RAMSEY_PIPELINE_HPP

/// \file pipeline.hpp
/// \brief Batch orchestration: job manifests, sharded and resumable
/// extension runs, recursive bootstrapping of complete stores, and text
/// tables.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ramsey/bound_table.hpp"
#include "ramsey/degseq.hpp"
#include "ramsey/extender.hpp"
#include "ramsey/graph6.hpp"
#include "ramsey/oracle.hpp"
#include "ramsey/store.hpp"

namespace ramsey {

namespace fs = std::filesystem;

class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EngineOptions {
    PruneOptions prune;
    bool regular = false;
    std::vector<StructuralRule> filters;
    std::optional<std::pair<int, int>> pair_prune;
};

/// Applies a named pruning switch; returns false for an unknown name.
inline bool disable_prune_rule(PruneOptions& p, const std::string& name)
{
    if (name == "pair")
        p.pair = false;
    else if (name == "forbidden")
        p.forbidden = false;
    else if (name == "ascending")
        p.ascending = false;
    else if (name == "edge_bound")
        p.edge_bound = false;
    else if (name == "degree_floor")
        p.degree_floor = false;
    else
        return false;
    return true;
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty())
            out.push_back(cur);
    return out;
}

/// A gluing job: target class, closure plan, input stores per degree,
/// engine options and the ledger of finished shards. Stored as key=value
/// lines; `done=` lines are appended as shards finish.
struct JobManifest {
    ClassParams target;
    ClosurePlan plan;
    std::map<int, std::vector<std::string>> inputs;
    std::string table_path;
    std::size_t shard_size = 10000;
    bool allow_partial = false;
    EngineOptions engine;
    std::vector<std::string> done;
    /// File the manifest was read from; ledger lines go here.
    std::string path;

    static JobManifest parse(std::istream& in, const std::string& origin = "")
    {
        JobManifest m;
        m.path = origin;
        const fs::path base = origin.empty() ? fs::path() : fs::path(origin).parent_path();
        auto resolve = [&](const std::string& p) {
            fs::path q(p);
            return (q.is_absolute() || base.empty() ? q : base / q).string();
        };
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty() || line[0] == '#')
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("manifest line " + std::to_string(line_no) + ": expected key=value");
            const std::string key = line.substr(0, eq);
            const std::string value = line.substr(eq + 1);
            try {
                if (key == "target.k")
                    m.target.k = std::stoi(value);
                else if (key == "target.n")
                    m.target.n = std::stoi(value);
                else if (key == "target.e_max")
                    m.target.e = std::stoi(value);
                else if (key.rfind("plan.", 0) == 0) {
                    auto f = split(value, ',');
                    if (f.size() != 3)
                        throw std::invalid_argument("plan row needs m,base,increment");
                    m.plan.rows.push_back({std::stoi(key.substr(5)), std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2])});
                } else if (key.rfind("input.", 0) == 0) {
                    for (const auto& f : split(value, ','))
                        m.inputs[std::stoi(key.substr(6))].push_back(resolve(f));
                } else if (key == "table")
                    m.table_path = resolve(value);
                else if (key == "shard_size")
                    m.shard_size = static_cast<std::size_t>(std::stoul(value));
                else if (key == "allow_partial")
                    m.allow_partial = value == "1" || value == "true";
                else if (key == "regular")
                    m.engine.regular = value == "1" || value == "true";
                else if (key == "no_prune") {
                    for (const auto& r : split(value, ','))
                        if (!disable_prune_rule(m.engine.prune, r))
                            throw std::invalid_argument("unknown pruning rule '" + r + "'");
                } else if (key == "weak_forbidden_bound")
                    m.engine.prune.forbidden_independent = value == "1" || value == "true";
                else if (key == "pair_prune") {
                    auto f = split(value, ':');
                    if (f.size() != 2)
                        throw std::invalid_argument("pair_prune needs s:t");
                    m.engine.pair_prune = std::make_pair(std::stoi(f[0]), std::stoi(f[1]));
                } else if (key == "filter") {
                    for (const auto& r : split(value, ';')) {
                        auto f = split(r, ':');
                        if (f.size() != 3)
                            throw std::invalid_argument("filter rule needs subject:neighbor:count");
                        m.engine.filters.push_back({std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2])});
                    }
                } else if (key == "done")
                    m.done.push_back(value);
                else
                    throw std::invalid_argument("unknown key '" + key + "'");
            } catch (const std::invalid_argument& e) {
                throw std::runtime_error("manifest line " + std::to_string(line_no) + ": " + e.what());
            } catch (const std::out_of_range& e) {
                throw std::runtime_error("manifest line " + std::to_string(line_no) + ": number out of range");
            }
        }
        std::sort(m.plan.rows.begin(), m.plan.rows.end(),
                  [](const ClosureRow& a, const ClosureRow& b) { return a.degree < b.degree; });
        return m;
    }

    static JobManifest load(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open manifest " + path);
        return parse(in, path);
    }

    void write(std::ostream& out) const
    {
        out << "target.k=" << target.k << '\n' << "target.n=" << target.n << '\n' << "target.e_max=" << target.e << '\n';
        for (const auto& r : plan.rows)
            out << "plan." << r.degree << '=' << r.m << ',' << r.base << ',' << r.increment << '\n';
        for (const auto& [d, files] : inputs) {
            out << "input." << d << '=';
            for (std::size_t i = 0; i < files.size(); ++i)
                out << (i ? "," : "") << files[i];
            out << '\n';
        }
        if (!table_path.empty())
            out << "table=" << table_path << '\n';
        out << "shard_size=" << shard_size << '\n';
        if (allow_partial)
            out << "allow_partial=1\n";
        if (engine.regular)
            out << "regular=1\n";
        std::vector<std::string> off;
        if (!engine.prune.pair)
            off.push_back("pair");
        if (!engine.prune.forbidden)
            off.push_back("forbidden");
        if (!engine.prune.ascending)
            off.push_back("ascending");
        if (!engine.prune.edge_bound)
            off.push_back("edge_bound");
        if (!engine.prune.degree_floor)
            off.push_back("degree_floor");
        if (!off.empty()) {
            out << "no_prune=";
            for (std::size_t i = 0; i < off.size(); ++i)
                out << (i ? "," : "") << off[i];
            out << '\n';
        }
        if (engine.prune.forbidden_independent)
            out << "weak_forbidden_bound=1\n";
        if (engine.pair_prune)
            out << "pair_prune=" << engine.pair_prune->first << ':' << engine.pair_prune->second << '\n';
        if (!engine.filters.empty()) {
            out << "filter=";
            for (std::size_t i = 0; i < engine.filters.size(); ++i)
                out << (i ? ";" : "") << engine.filters[i].subject_degree << ':' << engine.filters[i].neighbor_degree
                    << ':' << engine.filters[i].required_count;
            out << '\n';
        }
        for (const auto& d : done)
            out << "done=" << d << '\n';
    }

    void save(const std::string& file) const
    {
        std::ofstream out(file, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write manifest " + file);
        write(out);
    }

    std::string plan_fingerprint() const
    {
        std::ostringstream s;
        s << target.k << ',' << target.n << ',' << target.e << '\n' << plan.fingerprint_text();
        return hex64(fnv1a(s.str()));
    }
};

/// Worker count: explicit value, else RAMSEY_WORKERS, else hardware.
inline int resolve_workers(std::optional<int> requested)
{
    if (requested && *requested > 0)
        return *requested;
    if (const char* env = std::getenv("RAMSEY_WORKERS")) {
        try {
            int w = std::stoi(env);
            if (w > 0)
                return w;
        } catch (const std::exception&) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

struct RunReport {
    bool certified = false;
    bool inputs_complete = true;
    std::size_t shards_total = 0;
    std::size_t shards_run = 0;
    std::vector<DegreeSequenceSolution> survivors;
};

namespace detail {

struct Shard {
    std::string id;
    int degree = 0;
    std::vector<Graph> graphs;
};

inline void write_atomically(const std::string& path, const std::vector<Graph>& graphs)
{
    const std::string tmp = path + ".tmp";
    write_graph6_file(tmp, graphs);
    fs::rename(tmp, path);
}

} // namespace detail

/// Runs every pending shard of the manifest, appending a ledger line to the
/// manifest file after each one, and merges all shard outputs into the store
/// written at out_path. The result does not depend on worker count or on
/// where an earlier run was interrupted.
inline GraphStore run_manifest(JobManifest& m, const std::string& out_path, int workers = 1,
                               RunReport* report = nullptr)
{
    RunReport local;
    RunReport& rep = report ? *report : local;
    const int k_in = m.target.k - 1;

    if (!m.table_path.empty()) {
        const EdgeBoundTable table = EdgeBoundTable::load(m.table_path);
        ClosureCheck c = closure_sufficiency_check(m.target.k, m.target.n, m.target.e, m.plan, table);
        rep.certified = c.certified;
        rep.survivors = std::move(c.survivors);
    }
    if (!rep.certified && !m.allow_partial)
        throw CertificationError("closure plan is not certified for (3," + std::to_string(m.target.k) + ";" +
                                 std::to_string(m.target.n) + ",<=" + std::to_string(m.target.e) +
                                 "); set allow_partial=1 to run anyway");

    std::vector<detail::Shard> shards;
    for (const auto& row : m.plan.rows) {
        if (row.increment == 0)
            continue;
        auto it = m.inputs.find(row.degree);
        if (it == m.inputs.end())
            throw std::runtime_error("no input files for degree " + std::to_string(row.degree));
        std::vector<Graph> graphs;
        for (const auto& file : it->second) {
            if (!fs::exists(file))
                throw std::runtime_error("missing input file " + file);
            GraphStore s = GraphStore::load(file, k_in);
            const bool covers = s.complete && s.box.covers_class(k_in, row.m, row.ceiling());
            rep.inputs_complete = rep.inputs_complete && covers;
            for (const auto& [f, g] : s.graphs)
                if (g.order() == row.m && g.edge_count() <= row.ceiling())
                    graphs.push_back(g);
        }
        // one (possibly empty) shard per segment; an empty degree still gets a ledger entry
        const std::size_t size = std::max<std::size_t>(1, m.shard_size);
        const std::size_t count = std::max<std::size_t>(1, (graphs.size() + size - 1) / size);
        for (std::size_t idx = 0; idx < count; ++idx) {
            detail::Shard sh;
            std::ostringstream id;
            id << 'd' << row.degree << '-' << std::setw(5) << std::setfill('0') << idx;
            sh.id = id.str();
            sh.degree = row.degree;
            const std::size_t lo = idx * size;
            for (std::size_t j = lo; j < std::min(graphs.size(), lo + size); ++j)
                sh.graphs.push_back(graphs[j]);
            shards.push_back(std::move(sh));
        }
    }
    rep.shards_total = shards.size();

    const std::string shard_dir = out_path + ".shards";
    fs::create_directories(shard_dir);
    auto shard_file = [&](const std::string& id) { return (fs::path(shard_dir) / (id + ".g6")).string(); };

    std::set<std::string> known;
    for (const auto& s : shards)
        known.insert(s.id);
    std::set<std::string> finished;
    for (const auto& d : m.done) {
        if (!known.count(d))
            throw std::runtime_error("ledger names unknown shard " + d);
        if (!fs::exists(shard_file(d)))
            throw std::runtime_error("missing shard file for ledgered shard " + d);
        finished.insert(d);
    }

    std::vector<const detail::Shard*> pending;
    for (const auto& s : shards)
        if (!finished.count(s.id))
            pending.push_back(&s);

    std::mutex ledger_mutex;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pending.size())
                return;
            const detail::Shard& sh = *pending[i];
            try {
                const ClosureRow& row = *m.plan.row(sh.degree);
                ExtensionTask task = ExtensionTask::make(k_in, row.m, sh.degree, m.target.e, 0);
                task.prune = m.engine.prune;
                task.filters = m.engine.filters;
                task.pair_prune = m.engine.pair_prune;
                task.regular = m.engine.regular;
                if (task.regular)
                    task.d_min = sh.degree;
                GraphSet out;
                if (!(task.regular && sh.degree > task.max_degree())) {
                    for (const Graph& h : sh.graphs) {
                        GlueExtender x(h, task);
                        x.run([&](const Graph& g) { out.insert(g); });
                    }
                }
                detail::write_atomically(shard_file(sh.id), out.graphs());
                std::lock_guard<std::mutex> lock(ledger_mutex);
                m.done.push_back(sh.id);
                if (!m.path.empty()) {
                    std::ofstream ledger(m.path, std::ios::app);
                    ledger << "done=" << sh.id << '\n';
                }
                ++rep.shards_run;
            } catch (...) {
                std::lock_guard<std::mutex> lock(ledger_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = pending.size();
                return;
            }
        }
    };
    const int w = std::max(1, std::min<int>(workers, static_cast<int>(pending.size())));
    if (w <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < w; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    GraphStore store;
    store.box = {m.target.k, m.target.n, m.target.n, 0, m.target.e};
    for (const auto& s : shards)
        for (const Graph& g : read_graph6_file(shard_file(s.id)))
            store.graphs.insert(g);
    store.complete = rep.certified && rep.inputs_complete;
    store.certificate = store.complete ? "closure:" + m.plan_fingerprint() : "";
    if (!out_path.empty())
        store.save(out_path);
    return store;
}

/// Builds complete (3,k;n,<=e)-stores from K0 upward: plan the closure,
/// generate the planned inputs one level down, write a manifest and run it.
class Bootstrapper {
public:
    struct Options {
        std::string work_dir;
        int workers = 1;
        /// Assumed ratio between graph counts at consecutive edge numbers.
        double cost_growth = 3.0;
        std::size_t shard_size = 10000;
        std::ostream* log = nullptr;
    };

    Bootstrapper(EdgeBoundTable table, Options options) : table_(std::move(table)), opt_(std::move(options))
    {
        if (opt_.work_dir.empty())
            throw std::invalid_argument("bootstrap needs a work directory");
        // manifests resolve relative paths against their own directory
        opt_.work_dir = fs::absolute(opt_.work_dir).string();
        fs::create_directories(opt_.work_dir);
        table_path_ = (fs::path(opt_.work_dir) / "bounds.csv").string();
        table_.save(table_path_);
    }

    /// Path of a complete store holding every (3,k;n,<=e_max)-graph.
    std::string generate(int k, int n, int e_max)
    {
        auto it = made_.find({k, n});
        if (it != made_.end() && it->second.first >= e_max)
            return it->second.second;
        const std::string path = store_path(k, n, e_max);
        GraphStore store;
        store.box = {k, n, n, 0, e_max};
        store.complete = true;

        const BoundEntry b = n == 0 ? BoundEntry::exact(0, "empty graph") : table_.lookup(k, n);
        if (n == 0) {
            store.graphs.insert(Graph(0));
            store.certificate = "empty graph";
            store.save(path);
        } else if (k <= 1 || b.is_infinite() || b.value > e_max) {
            store.certificate = "bound table";
            store.save(path);
        } else {
            run_level(k, n, e_max, path);
        }
        made_[{k, n}] = {e_max, path};
        return path;
    }

    GraphStore generate_store(int k, int n, int e_max)
    {
        GraphStore s = GraphStore::load(generate(k, n, e_max), k);
        s.graphs = s.graphs.filtered([&](const Graph& g) { return g.edge_count() <= e_max; });
        s.box.e_max = e_max;
        return s;
    }

    const EdgeBoundTable& table() const { return table_; }

private:
    std::string store_path(int k, int n, int e) const
    {
        return (fs::path(opt_.work_dir) /
                ("k" + std::to_string(k) + "_n" + std::to_string(n) + "_e" + std::to_string(e) + ".g6"))
            .string();
    }

    void run_level(int k, int n, int e_max, const std::string& path)
    {
        CostModel cost = [&](int m, int e) {
            auto base = table_.finite_bound(k - 1, m);
            return std::pow(opt_.cost_growth, e - (base ? *base : 0));
        };
        JobManifest job;
        job.target = {k, n, e_max};
        job.plan = plan_closure(k, n, e_max, table_, cost);
        job.table_path = table_path_;
        job.shard_size = opt_.shard_size;
        for (const auto& row : job.plan.rows)
            if (row.increment > 0)
                job.inputs[row.degree].push_back(generate(k - 1, row.m, row.ceiling()));
        const std::string manifest = path + ".manifest";
        job.path = manifest;
        if (fs::exists(manifest)) {
            JobManifest old = JobManifest::load(manifest);
            if (old.plan_fingerprint() == job.plan_fingerprint())
                job.done = old.done;
        }
        job.save(manifest);
        RunReport rep;
        GraphStore s = run_manifest(job, path, opt_.workers, &rep);
        if (!s.complete)
            throw CertificationError("bootstrap produced an uncertified store for (3," + std::to_string(k) + ";" +
                                     std::to_string(n) + ",<=" + std::to_string(e_max) + ")");
        if (opt_.log) {
            *opt_.log << "(3," << k << ';' << n << ",<=" << e_max << "): " << s.graphs.size() << " graphs, plan";
            for (const auto& r : job.plan.rows)
                if (r.increment > 0)
                    *opt_.log << " d" << r.degree << ":(3," << k - 1 << ';' << r.m << ",<=" << r.ceiling() << ')';
            *opt_.log << '\n';
        }
    }

    EdgeBoundTable table_;
    Options opt_;
    std::string table_path_;
    std::map<std::pair<int, int>, std::pair<int, std::string>> made_;
};

/// Count table for one store: graphs per edge count (rows) and order (columns).
inline std::string emit_count_table(const GraphStore& store)
{
    EnumerationReport r;
    r.k = store.box.k;
    r.add(store.graphs);
    std::ostringstream s;
    r.write(s);
    return s.str();
}

/// Bound column for one k: value, kind and provenance per n. Lower bounds
/// that come from the closed form carry a 't' suffix.
inline std::string emit_bound_table(const EdgeBoundTable& table, int k, int n_from, int n_to)
{
    std::ostringstream s;
    s << std::setw(4) << "n" << std::setw(12) << ("e(3," + std::to_string(k) + ",n)") << "  kind      provenance\n";
    for (int n = n_from; n <= n_to; ++n) {
        const BoundEntry* stored = table.find(k, n);
        if (!stored && !table.contains(k, n))
            continue;
        const BoundEntry e = table.lookup(k, n);
        std::string cell = e.is_infinite() ? "inf" : std::to_string(e.value);
        if (e.kind == BoundKind::lower && e.provenance == "closed form")
            cell += 't';
        s << std::setw(4) << n << std::setw(12) << cell << "  " << std::left << std::setw(10) << to_string(e.kind)
          << std::right << e.provenance << '\n';
    }
    return s.str();
}

} // namespace ramsey

#endif // RAMSEY_PIPELINE_HPP
