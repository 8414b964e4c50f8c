#include "doctest.h"

#include "cdsw/report.hpp"
#include "cdsw/suites.hpp"

#include <stdexcept>

using namespace cdsw;

TEST_CASE("report fields keep their order")
{
    Report r;
    r.check = "x";
    r.type = "A1";
    r.rank = 1;
    r.details["b"] = 1;
    r.details["a"] = 2;
    const auto j = to_json(r);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items())
        keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"check", "type", "rank", "params", "status", "details", "wall_time"});
    CHECK(j["details"].dump() == R"({"b":1,"a":2})");
    CHECK_FALSE(to_json(r, false).contains("wall_time"));
}

TEST_CASE("csv quoting and exit codes")
{
    Report r;
    r.check = "c";
    r.type = "A1";
    r.details["note"] = "a,b";
    const std::string csv = render({r}, Format::Csv);
    CHECK(csv.find(R"("{""note"":""a,b""}")") != std::string::npos);

    Report skipped = r;
    skipped.status = Status::SkippedResource;
    CHECK(exit_code({r, skipped}) == 0);
    Report failed = r;
    failed.status = Status::Fail;
    CHECK(exit_code({r, failed}) == 1);
    CHECK(status_name(Status::SkippedResource) == "skipped-resource");
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("dual Coxeter table")
{
    for (auto [t, r] : {std::pair{'A', 3}, {'B', 4}, {'C', 3}, {'D', 5}, {'E', 6}, {'E', 7}, {'E', 8}, {'F', 4},
                        {'G', 2}})
        CHECK(build_root_system(t, r).dual_coxeter == tabulated_dual_coxeter(t, r));
}

TEST_CASE("suites")
{
    CHECK(suite_checks("combinatorial").size() == 8);
    CHECK(suite_checks("full").back() == "poincare_series");
    CHECK_THROWS_AS(suite_checks("everything"), std::invalid_argument);
    for (const auto& suite : {"combinatorial", "algebraic", "cocycle"})
        for (const auto& name : suite_checks(suite))
            CHECK(std::find(all_checks().begin(), all_checks().end(), name) != all_checks().end());

    Session s('A', 1);
    CHECK(s.max_total_degree() == 4);
    const auto reports = run_suite(s, "full");
    for (const auto& r : reports)
        CHECK_MESSAGE(r.status == Status::Pass, r.check);
    CHECK_THROWS_AS(run_check(s, "nope"), std::invalid_argument);
}

TEST_CASE("resource limits become skipped checks")
{
    Session e6('E', 6);
    CHECK(run_check(e6, "s_power_order").status == Status::SkippedResource);

    SuiteOptions tight;
    tight.max_block_dim = 5;
    Session a2('A', 2, tight);
    const Report r = run_check(a2, "invariants_A");
    CHECK(r.status == Status::SkippedResource);
    CHECK(r.details["reason"].get<std::string>().find("max-block-dim") != std::string::npos);

    Session g2('G', 2);
    CHECK(run_check(g2, "cocycle_d2").status == Status::SkippedResource);
    // (4,4) is counted before anything is eliminated
    const Report sp = run_check(g2, "s_power_order");
    CHECK(sp.status == Status::SkippedResource);
    CHECK(sp.details["reason"].get<std::string>().find("(4,4)") != std::string::npos);
}

TEST_CASE("ddegree report")
{
    Session s('A', 2);
    CHECK(ddegree_report(s, {0}, {}, {0}).details["d"] == "0");
    CHECK(ddegree_report(s, {0}, {1}, {0, 1}).details["d"] == "0");
    CHECK_THROWS_AS(ddegree_report(s, {3}, {}, {}), std::invalid_argument);
}
