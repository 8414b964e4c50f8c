#include "cdsw/abelian.hpp"
#include "cdsw/affweyl.hpp"
#include "cdsw/report.hpp"
#include "cdsw/suites.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

using namespace cdsw;

namespace {

struct Options {
    std::string type = "A";
    int rank = 1;
    std::string format = "md";
    std::string cache_dir = "cache";
    bool no_cache = false;
    int max_total_degree = 0;
    long max_block_dim = 20000;
    std::uint64_t seed = 0;
    int samples = 100;
    unsigned threads = 0;
    std::string suite = "full";
    int degree = 0;
    std::string u, v, w;
};

void add_common(CLI::App* cmd, Options& o)
{
    cmd->add_option("--type", o.type, "Type letter A-G")->required();
    cmd->add_option("--rank", o.rank, "Rank")->required();
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "md"}));
}

void add_budget(CLI::App* cmd, Options& o)
{
    cmd->add_option("--cache-dir", o.cache_dir, "Cache root (CDSW_CACHE_DIR overrides)");
    cmd->add_flag("--no-cache", o.no_cache, "Disable the on-disk cache");
    cmd->add_option("--max-total-degree", o.max_total_degree, "Largest p+q (default 2h)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-block-dim", o.max_block_dim, "Largest weight block eliminated")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

void add_sampling(CLI::App* cmd, Options& o)
{
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--samples", o.samples, "Random samples per identity")->check(CLI::PositiveNumber);
}

SuiteOptions suite_options(const Options& o)
{
    SuiteOptions s;
    s.max_total_degree = o.max_total_degree;
    s.max_block_dim = o.max_block_dim;
    s.threads = o.threads;
    s.seed = o.seed;
    s.samples = o.samples;
    if (o.degree > 0)
        s.cocycle_degree = o.degree;
    if (!o.no_cache) {
        if (const char* env = std::getenv("CDSW_CACHE_DIR"); env && *env)
            s.cache_dir = env;
        else
            s.cache_dir = o.cache_dir;
    }
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact checks for affine Weyl groups, abelian ideals and the CDSW quotient algebras"};
    app.require_subcommand(1);
    Options o;

    auto* cartan = app.add_subcommand("cartan", "Root system data and dual Coxeter number");
    auto* aff2 = app.add_subcommand("aff2", "Minimal alcove representatives inside 2C");
    auto* abelian = app.add_subcommand("abelian", "Abelian ideals of the Borel subalgebra");
    auto* zeta = app.add_subcommand("zeta", "Correspondence between abelian ideals and Aff2 elements");
    auto* invariants = app.add_subcommand("invariants", "Invariant dimensions of the quotients A and B");
    auto* spower = app.add_subcommand("spower", "Nilpotency order of S in A");
    auto* ddegree = app.add_subcommand("ddegree", "Degeneration degree for words u, v, w");
    auto* cocycle = app.add_subcommand("cocycle", "Loop-algebra cocycle checks");
    auto* verify = app.add_subcommand("verify", "Run a check suite");

    for (auto* cmd : {cartan, aff2, abelian, zeta, invariants, spower, ddegree, cocycle, verify})
        add_common(cmd, o);
    for (auto* cmd : {invariants, spower, verify})
        add_budget(cmd, o);
    for (auto* cmd : {cocycle, verify})
        add_sampling(cmd, o);
    cocycle->add_option("--degree", o.degree, "Cocycle degree d (default: 1 and 2)")->check(CLI::Range(1, 2));
    verify->add_option("--suite", o.suite, "Suite")->check(
        CLI::IsMember({"combinatorial", "algebraic", "cocycle", "full"}));
    ddegree->add_option("--u", o.u, "Word u, e.g. 0,1");
    ddegree->add_option("--v", o.v, "Word v");
    ddegree->add_option("--w", o.w, "Word w");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (o.type.size() != 1 || !valid_type(o.type[0], o.rank)) {
        std::cerr << "error: no simple type " << o.type << o.rank << '\n';
        return 2;
    }

    try {
        Session s(o.type[0], o.rank, suite_options(o));
        std::vector<Report> reports;
        if (cartan->parsed()) {
            reports.push_back(run_check(s, "cartan"));
        } else if (aff2->parsed()) {
            Report r = run_check(s, "aff2");
            r.details["elements"] = nlohmann::ordered_json::parse(aff2_to_json(s.roots(), s.aff2()).dump());
            reports.push_back(r);
        } else if (abelian->parsed()) {
            Report r = run_check(s, "abelian_ideals");
            r.details["summary"] = nlohmann::ordered_json::parse(abelian_summary(s.roots(), s.ideals()).dump());
            r.details["ideals"] = s.ideals();
            reports.push_back(r);
            reports.push_back(run_check(s, "suter_bound"));
        } else if (zeta->parsed()) {
            reports.push_back(run_check(s, "zeta"));
        } else if (invariants->parsed()) {
            reports.push_back(run_check(s, "invariants_A"));
            reports.push_back(run_check(s, "series_B"));
        } else if (spower->parsed()) {
            reports.push_back(run_check(s, "s_power_order"));
        } else if (ddegree->parsed()) {
            reports.push_back(ddegree_report(s, parse_word(o.u), parse_word(o.v), parse_word(o.w)));
        } else if (cocycle->parsed()) {
            reports = run_suite(s, "cocycle");
        } else if (verify->parsed()) {
            reports = run_suite(s, o.suite);
        }
        std::cout << render(reports, parse_format(o.format));
        return exit_code(reports);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
