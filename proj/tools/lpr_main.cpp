// lpr: find monochromatic loose paths in r-colored complete k-uniform
// hypergraphs. Subcommands: bounds, gen, run, verify, oracle, bench,
// selfcheck. Exit codes: 0 success, 1 verification failure or invariant
// violation, 2 usage or parse error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpr/bounds.hpp"
#include "lpr/dfs_finder.hpp"
#include "lpr/io.hpp"
#include "lpr/oracle.hpp"
#include "lpr/rational.hpp"
#include "lpr/reduction.hpp"
#include "lpr/selfcheck.hpp"

namespace {

using nlohmann::json;

struct CommonArgs {
    int k = 3;
    int ell = 3;
    int r = 2;
    long n = 0;
};

void add_params(CLI::App* cmd, CommonArgs& args, bool with_n) {
    cmd->add_option("-k,--uniformity", args.k, "edge size k");
    cmd->add_option("-l,--ell", args.ell, "path length ell");
    cmd->add_option("-r,--colors", args.r, "number of colors");
    if (with_n) cmd->add_option("-n,--vertices", args.n, "vertex count");
}

lpr::Params to_params(const CommonArgs& a) { return {a.k, a.ell, a.r, a.n}; }

int run_bounds(const CommonArgs& args) {
    lpr::Params p = to_params(args);
    if (p.r >= 2 && p.r <= p.k && p.ell >= 3) {
        std::cout << "n_min_con = " << lpr::bounds::n_min_con(p) << "\n";
        std::cout << "n_min_con2 = " << lpr::bounds::n_min_con2(p) << "\n";
        std::cout << "round targets:";
        for (int i = 1; i <= p.r - 1; ++i)
            std::cout << " i=" << i << ":" << lpr::rational_str(lpr::bounds::round_target(i, p));
        std::cout << "\n";
        std::cout << "tau:";
        for (int i = 1; i <= p.r - 1; ++i)
            std::cout << " i=" << i << ":" << lpr::rational_str(lpr::bounds::tau(i, p));
        std::cout << "\n";
        std::cout << "t:";
        for (int i = 1; i <= p.r - 1; ++i)
            std::cout << " i=" << i << ":" << lpr::rational_str(lpr::bounds::t_bin(i, p));
        std::cout << "\n";
    }
    for (const auto& entry : lpr::bounds::bound_table(p))
        std::cout << entry.id << " = " << lpr::rational_str(entry.value) << "    ["
                  << (entry.constructive ? "constructive" : "non-constructive") << "; "
                  << entry.validity << "]\n";
    return 0;
}

struct RunReportData {
    lpr::Params params;
    std::string coloring;
    std::string method;
    lpr::FinderResult result;
    bool verified = false;
    std::string verify_diag;
    double wall_ms = 0.0;
};

void print_run_report(const RunReportData& rep) {
    std::cout << "params: k=" << rep.params.k << " l=" << rep.params.ell << " r=" << rep.params.r
              << " n=" << rep.params.n << "\n";
    std::cout << "coloring: " << rep.coloring << "\n";
    std::cout << "method: " << rep.method << "\n";
    std::cout << "color: " << rep.result.color << "\n";
    std::cout << "witness:";
    for (auto v : rep.result.path.seq) std::cout << ' ' << v;
    std::cout << "\n";
    std::cout << "queries: " << rep.result.stats.queries << "\n";
    std::cout << "budget: " << rep.result.stats.budget
              << (rep.result.stats.budget_guaranteed ? "" : " (not guaranteed)") << "\n";
    std::cout << "rounds: " << rep.result.stats.rounds_run << "\n";
    std::cout << "stuck:";
    for (auto s : rep.result.stats.stuck_events) std::cout << ' ' << s;
    std::cout << "\n";
    std::cout << "pads:";
    for (auto s : rep.result.stats.pad_events) std::cout << ' ' << s;
    std::cout << "\n";
    std::cout << "wall_ms: " << rep.wall_ms << "\n";
    std::cout << "verified: " << (rep.verified ? "yes" : "no");
    if (!rep.verified && !rep.verify_diag.empty()) std::cout << " (" << rep.verify_diag << ")";
    std::cout << "\n";
}

void write_json_report(const std::string& path, const RunReportData& rep) {
    json j;
    j["params"] = {{"k", rep.params.k},
                   {"l", rep.params.ell},
                   {"r", rep.params.r},
                   {"n", rep.params.n}};
    j["coloring"] = rep.coloring;
    j["method"] = rep.method;
    j["color"] = rep.result.color;
    j["witness"] = rep.result.path.seq;
    j["stats"] = {{"queries", rep.result.stats.queries},
                  {"budget", rep.result.stats.budget},
                  {"budget_guaranteed", rep.result.stats.budget_guaranteed},
                  {"rounds", rep.result.stats.rounds_run},
                  {"stuck_events", rep.result.stats.stuck_events},
                  {"pad_events", rep.result.stats.pad_events}};
    j["wall_ms"] = rep.wall_ms;
    j["verified"] = rep.verified;
    std::ofstream out(path);
    if (!out) throw lpr::ParseError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monochromatic loose paths in colored complete k-uniform hypergraphs"};
    app.require_subcommand(1);

    // bounds
    CommonArgs bounds_args;
    auto* cmd_bounds = app.add_subcommand("bounds", "print thresholds and the bound table");
    add_params(cmd_bounds, bounds_args, false);

    // gen
    CommonArgs gen_args;
    std::string gen_spec_text = "seed:0";
    std::string gen_out;
    bool gen_as_table = false;
    auto* cmd_gen = app.add_subcommand("gen", "write a coloring file");
    add_params(cmd_gen, gen_args, true);
    cmd_gen->add_option("--coloring", gen_spec_text, "constant:C | seed:S | star:V:C1:C2");
    cmd_gen->add_option("-o,--out", gen_out, "output path")->required();
    cmd_gen->add_flag("--as-table", gen_as_table, "materialize as a dense table");

    // run
    CommonArgs run_args;
    std::string run_spec_text = "seed:0";
    std::string run_method = "dfs";
    bool run_permissive = false;
    std::string run_witness_out, run_report_out;
    auto* cmd_run = app.add_subcommand("run", "find a monochromatic loose path");
    add_params(cmd_run, run_args, true);
    cmd_run->add_option("--coloring", run_spec_text,
                        "constant:C | seed:S | star:V:C1:C2 | file:PATH");
    cmd_run->add_option("--method", run_method, "dfs | reduction")
        ->check(CLI::IsMember({"dfs", "reduction"}));
    bool run_strict = false;
    cmd_run->add_flag("--strict", run_strict, "require n >= the guaranteed threshold (default)");
    cmd_run->add_flag("--permissive", run_permissive, "accept n below the strict threshold")
        ->excludes("--strict");
    cmd_run->add_option("--witness-out", run_witness_out, "write the witness file here");
    cmd_run->add_option("--report", run_report_out, "write a JSON report here");

    // verify
    std::string verify_spec_text, verify_witness_path;
    auto* cmd_verify = app.add_subcommand("verify", "check a witness file against a coloring");
    cmd_verify->add_option("--coloring", verify_spec_text, "coloring spec")->required();
    cmd_verify->add_option("--witness", verify_witness_path, "witness file")->required();

    // oracle
    auto* cmd_oracle = app.add_subcommand("oracle", "exhaustive ground truth");
    cmd_oracle->require_subcommand(1);
    CommonArgs osearch_args;
    std::string osearch_spec = "seed:0";
    std::uint64_t osearch_guard = 100'000'000;
    auto* cmd_osearch = cmd_oracle->add_subcommand("search", "exhaustive monochromatic-path search");
    add_params(cmd_osearch, osearch_args, true);
    cmd_osearch->add_option("--coloring", osearch_spec, "coloring spec");
    cmd_osearch->add_option("--guard", osearch_guard, "max r*C(n,k) search nodes");
    CommonArgs oramsey_args;
    std::uint64_t oramsey_guard = 1ull << 24;
    auto* cmd_oramsey =
        cmd_oracle->add_subcommand("ramsey", "verify R by enumerating every coloring");
    add_params(cmd_oramsey, oramsey_args, true);
    cmd_oramsey->add_option("--guard", oramsey_guard, "max colorings to enumerate");

    // bench
    CommonArgs bench_args;
    std::string bench_method = "dfs";
    std::uint64_t bench_seeds = 10, bench_seed0 = 0;
    std::string bench_out;
    auto* cmd_bench = app.add_subcommand("bench", "sweep seeds, emit CSV of queries vs budget");
    add_params(cmd_bench, bench_args, true);
    cmd_bench->add_option("--method", bench_method, "dfs | reduction")
        ->check(CLI::IsMember({"dfs", "reduction"}));
    cmd_bench->add_option("--seeds", bench_seeds, "number of seeds");
    cmd_bench->add_option("--seed0", bench_seed0, "first seed");
    cmd_bench->add_option("-o,--out", bench_out, "CSV output path (default stdout)");

    // selfcheck
    auto* cmd_selfcheck = app.add_subcommand("selfcheck", "run the module invariant suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_bounds->parsed()) return run_bounds(bounds_args);

        if (cmd_gen->parsed()) {
            lpr::Params p = to_params(gen_args);
            lpr::GenSpec spec = lpr::io::parse_coloring_spec(gen_spec_text);
            auto src = lpr::io::make_coloring(spec, p);
            lpr::io::write_coloring_file(gen_out, *src, gen_as_table);
            std::cout << "wrote " << gen_out << " (" << src->describe() << ")\n";
            return 0;
        }

        if (cmd_run->parsed()) {
            lpr::Params p = to_params(run_args);
            lpr::GenSpec spec = lpr::io::parse_coloring_spec(run_spec_text);
            auto src = lpr::io::make_coloring(spec, p);
            RunReportData rep;
            rep.params = p;
            rep.coloring = src->describe();
            rep.method = run_method;
            const auto t0 = std::chrono::steady_clock::now();
            if (run_method == "dfs")
                rep.result = lpr::dfs::find_monochromatic_path(
                    *src, p,
                    run_permissive ? lpr::dfs::Mode::Permissive : lpr::dfs::Mode::Strict);
            else
                rep.result = lpr::reduction::find_via_reduction(*src, p);
            rep.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            std::string diag;
            rep.verified =
                lpr::oracle::verify_witness(*src, rep.result.path, rep.result.color, p, &diag);
            rep.verify_diag = diag;
            print_run_report(rep);
            if (!run_witness_out.empty())
                lpr::io::write_witness_file(run_witness_out,
                                            {p, rep.result.color, rep.result.path});
            if (!run_report_out.empty()) write_json_report(run_report_out, rep);
            return rep.verified ? 0 : 1;
        }

        if (cmd_verify->parsed()) {
            lpr::io::WitnessFile w = lpr::io::read_witness_file(verify_witness_path);
            lpr::GenSpec spec = lpr::io::parse_coloring_spec(verify_spec_text);
            auto src = lpr::io::make_coloring(spec, w.params);
            std::string diag;
            const bool ok = lpr::oracle::verify_witness(*src, w.path, w.color, w.params, &diag);
            std::cout << (ok ? "witness ok" : "witness INVALID: " + diag) << "\n";
            return ok ? 0 : 1;
        }

        if (cmd_osearch->parsed()) {
            lpr::Params p = to_params(osearch_args);
            lpr::GenSpec spec = lpr::io::parse_coloring_spec(osearch_spec);
            auto src = lpr::io::make_coloring(spec, p);
            lpr::oracle::SearchGuard guard{osearch_guard};
            const auto verdict = lpr::oracle::exhaustive_mono_path_search(*src, p, nullptr, guard);
            if (verdict.found) {
                std::cout << "found color=" << verdict.color << " witness:";
                for (auto v : verdict.path.seq) std::cout << ' ' << v;
                std::cout << "\nnodes: " << verdict.nodes << "\n";
            } else {
                std::cout << "absent (exhausted " << verdict.nodes << " candidate edges)\n";
            }
            return 0;
        }

        if (cmd_oramsey->parsed()) {
            lpr::Params p = to_params(oramsey_args);
            std::uint64_t checked = 0;
            const bool holds =
                lpr::oracle::verify_small_ramsey(p.k, p.ell, p.r, p.n, oramsey_guard, &checked);
            std::cout << (holds ? "every" : "not every") << " " << p.r << "-coloring of K_" << p.n
                      << "^(" << p.k << ") contains a monochromatic P_" << p.ell << " (" << checked
                      << " colorings checked)\n";
            return 0;
        }

        if (cmd_bench->parsed()) {
            lpr::Params p = to_params(bench_args);
            std::ostream* out = &std::cout;
            std::ofstream file;
            if (!bench_out.empty()) {
                file.open(bench_out);
                if (!file) throw lpr::ParseError("cannot open " + bench_out);
                out = &file;
            }
            *out << "k,l,r,n,seed,method,color,queries,budget,ok\n";
            bool all_ok = true;
            for (std::uint64_t s = bench_seed0; s < bench_seed0 + bench_seeds; ++s) {
                lpr::SeededRandomColoring src(p.k, p.n, p.r, s);
                lpr::FinderResult res = (bench_method == "dfs")
                                            ? lpr::dfs::find_monochromatic_path(src, p)
                                            : lpr::reduction::find_via_reduction(src, p);
                const bool verified = lpr::oracle::verify_witness(src, res.path, res.color, p);
                const bool in_budget =
                    !res.stats.budget_guaranteed || res.stats.queries <= res.stats.budget;
                *out << p.k << ',' << p.ell << ',' << p.r << ',' << p.n << ',' << s << ','
                     << bench_method << ',' << res.color << ',' << res.stats.queries << ','
                     << res.stats.budget << ',' << (verified && in_budget ? 1 : 0) << "\n";
                all_ok = all_ok && verified && in_budget;
            }
            return all_ok ? 0 : 1;
        }

        if (cmd_selfcheck->parsed())
            return lpr::selfcheck::run_all(std::cout) ? 0 : 1;
    } catch (const lpr::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lpr::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const lpr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
