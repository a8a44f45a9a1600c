// Command-line front end for the ramsey library.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 capacity error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/bound_table.hpp"
#include "ramsey/degseq.hpp"
#include "ramsey/extender.hpp"
#include "ramsey/membership.hpp"
#include "ramsey/oracle.hpp"
#include "ramsey/pipeline.hpp"
#include "ramsey/store.hpp"

namespace {

using namespace ramsey;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

EdgeBoundTable seeded_table(const std::string& seed_file)
{
    EdgeBoundTable t = trivial_seed();
    if (seed_file.empty())
        return t;
    const EdgeBoundTable seed = EdgeBoundTable::load(seed_file);
    for (const auto& [key, entry] : seed.entries())
        t.set(key.first, key.second, entry);
    return t;
}

void print_store_status(const GraphStore& s, std::ostream& out)
{
    out << "# (3," << s.box.k << "; n " << s.box.n_min << ".." << s.box.n_max << ", e " << s.box.e_min << ".."
        << s.box.e_max << ") " << s.graphs.size() << " graphs";
    if (s.complete && !s.certificate.empty())
        out << ", complete [" << s.certificate << "]";
    else
        out << ", not certified complete";
    out << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generation and bounds for triangle-free graphs with bounded independence number"};
    app.require_subcommand(1);

    // etable
    auto* etable = app.add_subcommand("etable", "closed forms plus degree-sequence propagation of e(3,k,n)");
    int et_k = 0, et_from = 0, et_to = 0;
    std::string et_seed, et_out;
    bool et_show = false;
    etable->add_option("--k", et_k, "largest k")->required()->check(CLI::Range(2, 64));
    etable->add_option("--n-from", et_from, "smallest n")->required();
    etable->add_option("--n-to", et_to, "largest n")->required();
    etable->add_option("--seed", et_seed, "CSV of known values")->check(CLI::ExistingFile);
    etable->add_option("--out", et_out, "output CSV")->required();
    etable->add_flag("--show", et_show, "print the bound column for k");

    // degseq
    auto* degseq = app.add_subcommand("degseq", "feasible degree sequences of (3,k;n,e)-graphs");
    int ds_k = 0, ds_n = 0, ds_e = 0;
    std::optional<int> ds_dmin, ds_dmax;
    std::string ds_table;
    degseq->add_option("--k", ds_k)->required();
    degseq->add_option("--n", ds_n)->required();
    degseq->add_option("--e", ds_e)->required();
    degseq->add_option("--dmin", ds_dmin);
    degseq->add_option("--dmax", ds_dmax);
    degseq->add_option("--table", ds_table)->required()->check(CLI::ExistingFile);

    // plan
    auto* plan = app.add_subcommand("plan", "closure plan certifying a complete (3,k;n,<=e) generation");
    int pl_k = 0, pl_n = 0, pl_e = 0;
    double pl_growth = 3.0;
    std::string pl_table, pl_out, pl_check;
    plan->add_option("--k", pl_k)->required();
    plan->add_option("--n", pl_n)->required();
    plan->add_option("--e", pl_e)->required();
    plan->add_option("--table", pl_table)->required()->check(CLI::ExistingFile);
    plan->add_option("--out", pl_out, "plan CSV to write");
    plan->add_option("--check", pl_check, "check an existing plan instead")->check(CLI::ExistingFile);
    plan->add_option("--growth", pl_growth, "assumed count ratio per extra edge");

    // extend
    auto* extend = app.add_subcommand("extend", "run a gluing manifest");
    std::string ex_manifest, ex_out;
    std::optional<int> ex_workers;
    bool ex_regular = false;
    std::vector<std::string> ex_no_prune;
    extend->add_option("--manifest", ex_manifest)->required()->check(CLI::ExistingFile);
    extend->add_option("--out", ex_out)->required();
    extend->add_option("--workers", ex_workers);
    extend->add_flag("--regular", ex_regular);
    extend->add_option("--no-prune", ex_no_prune, "pair, forbidden, ascending, edge_bound, degree_floor");

    // generate
    auto* generate = app.add_subcommand("generate", "bootstrap a complete (3,k;n,<=e) store from K0");
    int gn_k = 0, gn_n = 0, gn_e = 0;
    std::string gn_seed, gn_work, gn_out;
    std::optional<int> gn_workers;
    double gn_growth = 3.0;
    generate->add_option("--k", gn_k)->required();
    generate->add_option("--n", gn_n)->required();
    generate->add_option("--e", gn_e)->required();
    generate->add_option("--seed", gn_seed)->check(CLI::ExistingFile);
    generate->add_option("--work", gn_work, "directory for intermediate stores")->required();
    generate->add_option("--out", gn_out)->required();
    generate->add_option("--workers", gn_workers);
    generate->add_option("--growth", gn_growth);

    // closure
    auto* closure = app.add_subcommand("closure", "edge-removal closure of maximal triangle-free graphs");
    std::string cl_mtf, cl_out;
    int cl_k = 0;
    std::optional<int> cl_emax;
    closure->add_option("--mtf", cl_mtf)->required()->check(CLI::ExistingFile);
    closure->add_option("--k", cl_k)->required();
    closure->add_option("--e-max", cl_emax);
    closure->add_option("--out", cl_out)->required();

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exhaustive generation for small orders");
    int or_n = 0, or_k = 0;
    std::optional<int> or_emax;
    std::string or_out;
    oracle->add_option("--n", or_n)->required();
    oracle->add_option("--k", or_k)->required();
    oracle->add_option("--e-max", or_emax);
    oracle->add_option("--out", or_out)->required();

    // verify
    auto* verify = app.add_subcommand("verify", "membership and consistency checks on a store");
    std::string vf_store, vf_gv;
    int vf_k = 0;
    bool vf_min = false;
    std::vector<std::string> vf_add;
    verify->add_option("--store", vf_store)->required()->check(CLI::ExistingFile);
    verify->add_option("--k", vf_k)->required();
    verify->add_flag("--minimality", vf_min, "every edge deletion creates an independent k-set");
    verify->add_option("--gv", vf_gv, "reference store of (3,k-1)-graphs")->check(CLI::ExistingFile);
    verify->add_option("--add-edges", vf_add, "F REF: adding up to F edges stays inside REF")->expected(2);

    // count
    auto* count = app.add_subcommand("count", "count table of a store");
    std::string ct_store;
    count->add_option("--store", ct_store)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*etable) {
            EdgeBoundTable t = propagate_bounds(2, et_k, seeded_table(et_seed));
            EdgeBoundTable out;
            for (const auto& [key, entry] : t.entries())
                if (key.first >= 2 && key.first <= et_k && key.second >= et_from && key.second <= et_to)
                    out.set(key.first, key.second, entry);
            // cells past the first infinite one are implied; write them explicitly
            for (int k = 2; k <= et_k; ++k)
                for (int n = et_from; n <= et_to; ++n)
                    if (!out.find(k, n) && t.contains(k, n))
                        out.set(k, n, t.lookup(k, n));
            out.save(et_out);
            if (et_show)
                std::cout << emit_bound_table(t, et_k, et_from, et_to);
            return kExitOk;
        }
        if (*degseq) {
            const EdgeBoundTable t = EdgeBoundTable::load(ds_table);
            const auto sols = feasible_sequences(ds_k, ds_n, ds_e, t, ds_dmin, ds_dmax);
            for (const auto& s : sols)
                std::cout << s.describe() << '\n';
            std::cout << "# " << sols.size() << " feasible degree sequences\n";
            return kExitOk;
        }
        if (*plan) {
            const EdgeBoundTable t = EdgeBoundTable::load(pl_table);
            ClosurePlan p;
            if (!pl_check.empty()) {
                std::ifstream in(pl_check);
                p = ClosurePlan::read_csv(in);
            } else {
                CostModel cost = [&](int m, int e) {
                    auto base = t.finite_bound(pl_k - 1, m);
                    return std::pow(pl_growth, e - (base ? *base : 0));
                };
                p = plan_closure(pl_k, pl_n, pl_e, t, cost);
            }
            const ClosureCheck c = closure_sufficiency_check(pl_k, pl_n, pl_e, p, t);
            if (!pl_out.empty()) {
                std::ofstream out(pl_out);
                p.write_csv(out);
            }
            p.write_csv(std::cout);
            if (c.certified) {
                std::cout << "# certified: no degree sequence survives\n";
                return kExitOk;
            }
            for (const auto& s : c.survivors)
                std::cout << "# survivor " << s.describe() << '\n';
            std::cout << "# not certified: " << c.survivors.size() << " surviving degree sequences\n";
            return kExitVerify;
        }
        if (*extend) {
            JobManifest m = JobManifest::load(ex_manifest);
            if (ex_regular)
                m.engine.regular = true;
            for (const auto& r : ex_no_prune)
                if (!disable_prune_rule(m.engine.prune, r)) {
                    std::cerr << "unknown pruning rule '" << r << "'\n";
                    return kExitUsage;
                }
            RunReport rep;
            const GraphStore s = run_manifest(m, ex_out, resolve_workers(ex_workers), &rep);
            std::cerr << "shards: " << rep.shards_run << " run, " << rep.shards_total << " total\n";
            print_store_status(s, std::cout);
            return kExitOk;
        }
        if (*generate) {
            const EdgeBoundTable t = propagate_bounds(2, gn_k, seeded_table(gn_seed));
            Bootstrapper::Options opt;
            opt.work_dir = gn_work;
            opt.workers = resolve_workers(gn_workers);
            opt.cost_growth = gn_growth;
            opt.log = &std::cerr;
            Bootstrapper b(t, opt);
            GraphStore s = b.generate_store(gn_k, gn_n, gn_e);
            s.save(gn_out);
            print_store_status(s, std::cout);
            std::cout << emit_count_table(s);
            return kExitOk;
        }
        if (*closure) {
            const GraphStore s = edge_removal_closure(read_graph6_file(cl_mtf), cl_k, cl_emax);
            s.save(cl_out);
            print_store_status(s, std::cout);
            return kExitOk;
        }
        if (*oracle) {
            const GraphStore s = brute_force_graphs(or_n, or_k, or_emax.value_or(kUnboundedEdges));
            s.save(or_out);
            print_store_status(s, std::cout);
            std::cout << emit_count_table(s);
            return kExitOk;
        }
        if (*verify) {
            const GraphStore s = GraphStore::load(vf_store, vf_k);
            bool ok = true;
            for (const auto& [f, g] : s.graphs) {
                const Membership mem = validate_member(g, vf_k);
                if (const auto* r = std::get_if<Rejection>(&mem)) {
                    std::cout << "FAIL membership " << encode_graph6(g) << ": " << r->describe() << '\n';
                    ok = false;
                } else if (vf_min && !verify_minimality(g, vf_k)) {
                    std::cout << "FAIL minimality " << encode_graph6(g) << '\n';
                    ok = false;
                }
            }
            if (!vf_gv.empty()) {
                const CheckResult r = gv_consistency_check(s, vf_k, GraphStore::load(vf_gv, vf_k - 1));
                if (!r) {
                    std::cout << "FAIL G_v consistency: " << r.detail << ' ' << encode_graph6(*r.witness) << '\n';
                    ok = false;
                }
            }
            if (!vf_add.empty()) {
                const int f = std::stoi(vf_add[0]);
                const CheckResult r = add_edge_closure_check(s, f, vf_k, GraphStore::load(vf_add[1], vf_k));
                if (!r) {
                    std::cout << "FAIL edge addition: " << r.detail << ' ' << encode_graph6(*r.witness) << '\n';
                    ok = false;
                }
            }
            std::cout << (ok ? "ok" : "failed") << ": " << s.graphs.size() << " graphs checked\n";
            return ok ? kExitOk : kExitVerify;
        }
        if (*count) {
            const GraphStore s = GraphStore::load(ct_store);
            print_store_status(s, std::cout);
            std::cout << emit_count_table(s);
            return kExitOk;
        }
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const CertificationError& e) {
        std::cerr << "certification: " << e.what() << '\n';
        return kExitVerify;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
