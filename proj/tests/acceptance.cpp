// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//
// Expected values come from the bundled data files (table1.csv,
// tables7_11.csv, table12.csv) or are stated inline with their source
// table. Timing limits are part of each criterion.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ramsey/pipeline.hpp"
#include "support.hpp"

using namespace ramsey;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
    std::vector<std::string> notes;

    void fail(const std::string& why)
    {
        if (ok)
            detail = why;
        ok = false;
    }
};

struct Cell {
    int k;
    int n;
    std::optional<int> value;
    bool flag;
};

// Rows of a k,n,value,flag CSV; "inf" becomes nullopt.
std::vector<Cell> read_cells(const std::string& name)
{
    std::ifstream in(data_path(name));
    if (!in)
        throw std::runtime_error("cannot open " + data_path(name));
    std::vector<Cell> cells;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.starts_with("k,"))
            continue;
        const auto f = EdgeBoundTable::split_csv(line);
        cells.push_back({std::stoi(f[0]), std::stoi(f[1]),
                         f[2] == "inf" ? std::nullopt : std::optional<int>(std::stoi(f[2])), f.size() > 3 && f[3] == "1"});
    }
    return cells;
}

// (n, e) -> number of (3,7;n,e)-graphs.
std::map<std::pair<int, int>, long> read_counts()
{
    std::ifstream in(data_path("table12.csv"));
    if (!in)
        throw std::runtime_error("cannot open " + data_path("table12.csv"));
    std::map<std::pair<int, int>, long> counts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.starts_with("n,"))
            continue;
        const auto f = EdgeBoundTable::split_csv(line);
        counts[{std::stoi(f[0]), std::stoi(f[1])}] = std::stol(f[2]);
    }
    return counts;
}

bool cell_matches(const EdgeBoundTable& t, const Cell& c)
{
    if (!t.contains(c.k, c.n))
        return false;
    const BoundEntry got = t.lookup(c.k, c.n);
    return c.value ? got.same_bound(BoundEntry::exact(*c.value, "")) : got.is_infinite();
}

std::string cell_name(int k, int n) { return "e(3," + std::to_string(k) + "," + std::to_string(n) + ")"; }

std::string seconds(double s)
{
    std::ostringstream o;
    o.precision(s < 10 ? 3 : 4);
    o << s << " s";
    return o.str();
}

std::string scratch_dir(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("ramsey_acceptance_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p.string();
}

Verdict closed_forms_via_cli()
{
    Verdict v;
    const std::string dir = scratch_dir("etable");
    const std::string out = dir + "/etable.csv";
    const std::string cmd = std::string("\"") + RAMSEY_CLI + "\" etable --k 16 --n-from 0 --n-to 31 --seed \"" +
                            data_path("known_bounds.csv") + "\" --out \"" + out + "\" > /dev/null";
    const auto t0 = std::chrono::steady_clock::now();
    const int rc = std::system(cmd.c_str());
    const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (rc != 0) {
        v.fail("etable exited with status " + std::to_string(rc));
        return v;
    }
    const EdgeBoundTable t = EdgeBoundTable::load(out);
    int checked = 0;
    for (const Cell& c : read_cells("table1.csv")) {
        if (c.flag)
            continue;
        ++checked;
        if (!cell_matches(t, c))
            v.fail(cell_name(c.k, c.n) + " differs from the table");
    }
    if (took >= 1.0)
        v.fail("etable took " + seconds(took));
    if (v.ok)
        v.detail = std::to_string(checked) + " non-bold cells exact, etable in " + seconds(took);

    // how far the k=1 base alone gets, for the record
    const EdgeBoundTable bare = propagate_bounds(2, 16, trivial_seed(), 31);
    int finite = 0;
    int finite_ok = 0;
    int inf_small = 0;
    int inf_small_ok = 0;
    std::vector<std::string> missed;
    for (const Cell& c : read_cells("table1.csv")) {
        if (c.flag)
            continue;
        if (c.value) {
            ++finite;
            finite_ok += cell_matches(bare, c) ? 1 : 0;
        } else if (c.k <= 5) {
            ++inf_small;
            inf_small_ok += cell_matches(bare, c) ? 1 : 0;
        } else if (!cell_matches(bare, c)) {
            missed.push_back(cell_name(c.k, c.n));
        }
    }
    std::string line = "from the k=1 base alone: " + std::to_string(finite_ok) + "/" + std::to_string(finite) +
                       " finite cells, " + std::to_string(inf_small_ok) + "/" + std::to_string(inf_small) +
                       " infinite cells with k<=5; not derivable:";
    for (const auto& m : missed)
        line += " " + m + "=inf";
    v.notes.push_back(line);
    fs::remove_all(dir);
    return v;
}

Verdict small_oracle()
{
    Verdict v;
    int checked = 0;
    for (const Cell& c : read_cells("table1.csv")) {
        if (c.n > 11)
            continue;
        ++checked;
        if (c.value) {
            // the minimum inside the box <= value is the value exactly when e(3,k,n) = value
            const GraphStore s = brute_force_graphs(c.n, c.k, *c.value);
            const auto me = min_edges(s.graphs);
            if (!me || *me != *c.value)
                v.fail(cell_name(c.k, c.n) + ": oracle gives " + (me ? std::to_string(*me) : std::string("none")));
        } else if (!brute_force_graphs(c.n, c.k).graphs.empty()) {
            v.fail(cell_name(c.k, c.n) + ": oracle finds a graph where none should exist");
        }
    }
    if (v.ok) {
        const auto a = min_edges(brute_force_graphs(8, 4).graphs);
        const auto b = min_edges(brute_force_graphs(11, 5).graphs);
        if (a != 10 || b != 15)
            v.fail("e(3,4,8) or e(3,5,11) differs on an unbounded run");
        else
            v.detail = std::to_string(checked) + " cells with n<=11, e(3,4,8)=10, e(3,5,11)=15";
    }
    return v;
}

Verdict table_three(const EdgeBoundTable& t)
{
    // n7, n8, n9, e, gamma in ascending (e, n7)
    const std::vector<std::array<int, 5>> expected{
        {0, 8, 34, 185, 24}, {1, 6, 35, 185, 25}, {2, 4, 36, 185, 26}, {3, 2, 37, 185, 27}, {4, 0, 38, 185, 28},
        {0, 6, 36, 186, 60}, {1, 4, 37, 186, 61}, {2, 2, 38, 186, 62}, {3, 0, 39, 186, 63}, {0, 4, 38, 187, 96},
        {1, 2, 39, 187, 97}, {2, 0, 40, 187, 98}, {0, 2, 40, 188, 132}, {1, 0, 41, 188, 133}, {0, 0, 42, 189, 168},
    };
    Verdict v;
    std::vector<std::array<int, 5>> got;
    for (int e = 185; e <= 189; ++e)
        for (const auto& s : feasible_sequences(10, 42, e, t, 7, 9))
            got.push_back({s.count(7), s.count(8), s.count(9), s.e, static_cast<int>(s.slack)});
    std::sort(got.begin(), got.end(),
              [](const auto& a, const auto& b) { return std::tie(a[3], a[0]) < std::tie(b[3], b[0]); });
    if (got != expected)
        v.fail(std::to_string(got.size()) + " rows, expected the 15 published rows");
    else
        v.detail = "15 rows, gamma 24..168";
    return v;
}

Verdict table_two(const EdgeBoundTable& t)
{
    Verdict v;
    auto plan = [&](int k_plus_1, int n, int first, const std::vector<int>& inc) {
        ClosurePlan p;
        for (std::size_t j = 0; j < inc.size(); ++j) {
            const int i = first + static_cast<int>(j);
            p.rows.push_back({i, n - i - 1, t.bound(k_plus_1 - 1, n - i - 1), inc[j]});
        }
        return p;
    };
    const ClosureCheck c8 = closure_sufficiency_check(8, 25, 65, plan(8, 25, 2, {1, 1, 2, 3, 2, 1}), t);
    if (!c8.certified)
        v.fail("(3,8;25,<=65) plan leaves " + std::to_string(c8.survivors.size()) + " survivors");
    const ClosureCheck c9 = closure_sufficiency_check(9, 32, 108, plan(9, 32, 4, {10, 5, 4, 4, 1}), t);
    if (c9.survivors.size() != 1)
        v.fail("(3,9;32,108) plan leaves " + std::to_string(c9.survivors.size()) + " survivors");
    else if (c9.survivors[0].count(6) != 8 || c9.survivors[0].count(7) != 24 || c9.survivors[0].e != 108)
        v.fail("(3,9;32,108) survivor is " + c9.survivors[0].describe());
    if (v.ok)
        v.detail = "(3,8;25,<=65) certified; (3,9;32,108) sole survivor " + c9.survivors[0].describe();
    return v;
}

Verdict propagation_chain()
{
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    const EdgeBoundTable t = seeded_bounds(16);
    int rows = 0;
    for (const Cell& c : read_cells("tables7_11.csv")) {
        if (c.flag)
            continue;
        ++rows;
        // these rows are lower bounds, so only the value has to agree
        const BoundEntry got = t.lookup(c.k, c.n);
        if (c.value ? got.is_infinite() || got.value != *c.value : !got.is_infinite())
            v.fail(cell_name(c.k, c.n) + " differs");
        else if (c.value && got.provenance == "closed form")
            v.fail(cell_name(c.k, c.n) + " is marked as a closed-form row");
    }
    const std::vector<int> expected{50, 59, 68, 77, 87, 98};
    std::string r;
    for (int k = 11; k <= 16; ++k) {
        const auto got = r_upper(k, t);
        r += (k > 11 ? ", " : "") + std::string("R(3,") + std::to_string(k) + ")<=" + (got ? std::to_string(*got) : "?");
        if (got != expected[static_cast<std::size_t>(k - 11)])
            v.fail("r_upper(" + std::to_string(k) + ") differs");
    }
    const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (took >= 10.0)
        v.fail("propagation took " + seconds(took));
    if (v.ok)
        v.detail = std::to_string(rows) + " rows; " + r + "; " + seconds(took);
    return v;
}

Verdict generation(std::vector<std::string>& stretch, GraphSet& corpus)
{
    Verdict v;
    const std::string dir = scratch_dir("generate");
    Bootstrapper::Options opt;
    opt.work_dir = dir;
    opt.workers = resolve_workers(std::nullopt);
    Bootstrapper b(seeded_bounds(7), opt);
    const GraphStore s = b.generate_store(7, 16, 23);
    if (!s.complete)
        v.fail("store is not certified complete");
    EnumerationReport rep;
    rep.k = 7;
    rep.add(s.graphs);
    const auto published = read_counts();
    std::string got;
    for (int e = 20; e <= 23; ++e) {
        const auto it = published.find({16, e});
        if (it == published.end()) {
            v.fail("table12.csv has no (16," + std::to_string(e) + ") row");
            continue;
        }
        const long n = rep.count(16, e);
        got += (got.empty() ? "" : ", ") + std::to_string(e) + "->" + std::to_string(n);
        if (n != it->second)
            v.fail("(3,7;16," + std::to_string(e) + "): " + std::to_string(n) + " graphs, expected " +
                   std::to_string(it->second));
    }
    if (rep.count(16, 19) != 0)
        v.fail("graphs below e(3,7,16)");
    if (v.ok)
        v.detail = "(3,7;16,e) " + got;
    corpus = s.graphs;

    for (auto [n, e] : std::vector<std::pair<int, int>>{{17, 25}, {18, 30}}) {
        const long want = published.count({n, e}) ? published.at({n, e}) : -1;
        const auto t0 = std::chrono::steady_clock::now();
        std::string line = "stretch (3,7;" + std::to_string(n) + "," + std::to_string(e) + "): ";
        try {
            const GraphStore x = b.generate_store(7, n, e);
            EnumerationReport r;
            r.k = 7;
            r.add(x.graphs);
            const long got_n = r.count(n, e);
            line += std::to_string(got_n) + " graphs (published " + std::to_string(want) + ")" +
                    (got_n == want ? ", match" : ", MISMATCH");
        } catch (const std::exception& ex) {
            line += std::string("not run: ") + ex.what();
        }
        line += ", " + seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        stretch.push_back(line);
    }
    fs::remove_all(dir);
    return v;
}

Verdict circulant_witness()
{
    Verdict v;
    const Graph g = circulant(35, {1, 7, 11, 16});
    if (g.min_degree() != 8 || g.max_degree() != 8)
        v.fail("not 8-regular");
    if (g.edge_count() != 140)
        v.fail(std::to_string(g.edge_count()) + " edges");
    if (!is_triangle_free(g) || !naive_triangle_free(g))
        v.fail("has a triangle");
    if (independence_number(g) != 8)
        v.fail("alpha is " + std::to_string(independence_number(g)));
    if (!verify_minimality(g, 9))
        v.fail("some edge deletion keeps alpha below 9");
    if (v.ok)
        v.detail = "8-regular, 140 edges, triangle-free, alpha 8, edge-minimal for k=9";
    return v;
}

Verdict property_suites(const GraphSet& generated)
{
    Verdict v;
    auto run = [&](const std::string& name, const PropertyOutcome& r) {
        v.notes.push_back(name + ": " + (r.ok ? "ok" : "FAILED " + r.first_failure) + " (" + std::to_string(r.cases) +
                          " cases)");
        if (!r.ok)
            v.fail(name + ": " + r.first_failure);
    };
    run("canonical-form invariance", canonical_invariance(1000, 20240611));

    const EdgeBoundTable seven = seeded_bounds(7);
    PropertyOutcome pn = pruning_neutrality(1, 5, 10, seven);
    const PropertyOutcome pn6 = pruning_neutrality(6, 6, 6, seven);
    pn.cases += pn6.cases;
    if (!pn6.ok)
        pn.fail(pn6.first_failure);
    run("pruning neutrality", pn);

    run("min-degree extension vs oracle", min_degree_equivalence(2, 11, 10));

    const EdgeBoundTable sixteen = seeded_bounds(16);
    auto corpus = oracle_corpus(2, 11, 10);
    for (const auto& [f, g] : generated)
        corpus.emplace_back(g, 7);
    corpus.emplace_back(circulant(35, {1, 7, 11, 16}), 9);
    corpus.emplace_back(circulant(13, {1, 5}), 5);
    corpus.emplace_back(petersen_graph(), 5);
    run("deficiency identity", deficiency_identity(corpus, sixteen));

    PropertyOutcome mono;
    for (const EdgeBoundTable& t :
         {sixteen, seven, propagate_bounds(2, 16, trivial_seed(), 31), propagate_bounds(2, 12, trivial_seed(), 60)}) {
        const PropertyOutcome r = infinity_monotone(t);
        mono.cases += r.cases;
        if (!r.ok)
            mono.fail(r.first_failure);
    }
    run("infinity monotone", mono);
    if (v.ok)
        v.detail = "all suites clean";
    return v;
}

} // namespace

// Optional arguments select criteria by number; default is all of them.
int main(int argc, char** argv)
{
    struct Criterion {
        int id;
        std::string title;
        std::function<Verdict()> check;
        double limit_s;
    };

    const EdgeBoundTable table = seeded_bounds(16);
    std::vector<std::string> stretch;
    GraphSet generated;

    const std::vector<Criterion> criteria{
        {1, "closed forms reproduce Table 1", closed_forms_via_cli, 1e9},
        {2, "small-order oracle matches Table 1", small_oracle, 600},
        {3, "Table 3 degree sequences", [&] { return table_three(table); }, 1},
        {4, "Table 2 certificate and sole survivor", [&] { return table_two(table); }, 1},
        {5, "bound propagation chain", propagation_chain, 1e9},
        {6, "desk-scale generation", [&] { return generation(stretch, generated); }, 3600},
        {7, "circulant witness", circulant_witness, 5},
        {8, "property suites", [&] { return property_suites(generated); }, 1e9},
    };

    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id))
            continue;
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (v.ok && took >= c.limit_s)
            v.fail("took " + seconds(took) + ", limit " + seconds(c.limit_s));
        failed += v.ok ? 0 : 1;
        std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << v.detail << "] ("
                  << seconds(took) << ")" << std::endl;
        for (const auto& n : v.notes)
            std::cout << "    " << n << '\n';
        if (c.id == 6)
            for (const auto& s : stretch)
                std::cout << "    " << s << " [not gating]\n";
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
