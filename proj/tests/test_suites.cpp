#include <doctest.h>

#include "modflow/errors.hpp"
#include "modflow/report.hpp"
#include "modflow/suites.hpp"

using namespace modflow;

TEST_SUITE("suites")
{
    TEST_CASE("config parsing")
    {
        RunConfig cfg;
        apply_config_json(cfg, R"({"seed": 9, "tolerance": 0.5, "by_betas": [2, 3], "psdo_grid": 2048})");
        CHECK(cfg.seed == 9);
        CHECK(cfg.tolerance.value() == 0.5);
        CHECK(cfg.by_betas == std::vector<double>{2, 3});
        CHECK(cfg.psdo_grid == 2048);
        CHECK_THROWS_AS(apply_config_json(cfg, R"({"bogus": 1})"), ConfigError);
        CHECK_THROWS_AS(apply_config_json(cfg, R"({"tolerance": 0})"), ConfigError);
        CHECK_THROWS_AS(apply_config_json(cfg, R"({"tolerance": -1e-3})"), ConfigError);
        CHECK_THROWS_AS(apply_config_json(cfg, R"({"seed": "x"})"), ConfigError);
        CHECK_THROWS_AS(apply_config_json(cfg, "[1, 2]"), ConfigError);
        CHECK_THROWS_AS(apply_config_json(cfg, "{"), ConfigError);
        CHECK_THROWS_AS(load_config_file("/nonexistent/modflow.json"), ConfigError);
    }

    TEST_CASE("digest ignores threads and output path only")
    {
        RunConfig a, b;
        b.threads = 7;
        b.out = "elsewhere";
        CHECK(config_digest(a) == config_digest(b));
        b.seed = 1;
        CHECK(config_digest(a) != config_digest(b));
    }

    TEST_CASE("CSV quoting")
    {
        CsvTable t;
        t.meta = {"m"};
        t.header = {"a", "b"};
        t.add_row({"x,y", "say \"hi\""});
        CHECK(t.str() == "# m\na,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
    }

    TEST_CASE("tolerance override makes checks unsatisfiable")
    {
        RunConfig cfg;
        cfg.tolerance = 1e-99;
        auto out = run_suite("psdo", cfg);
        CHECK_FALSE(out.report.passed());
        CHECK_THROWS_AS(run_suite("nope", RunConfig{}), ConfigError);
    }

    TEST_CASE("suite output is independent of the thread count")
    {
        RunConfig one, four;
        one.threads = 1;
        four.threads = 4;
        for (const char* s : {"thermal", "psdo", "geometry"}) {
            auto a = run_suite(s, one), b = run_suite(s, four);
            REQUIRE(a.tables.size() == b.tables.size());
            for (const auto& [k, t] : a.tables)
                CHECK(t.str() == b.tables.at(k).str());
        }
    }

    TEST_CASE("tables carry header metadata")
    {
        auto out = run_suite("thermal", RunConfig{});
        for (const auto& [k, t] : out.tables) {
            REQUIRE(t.meta.size() >= 3);
            CHECK(t.meta[1].rfind("config_digest=", 0) == 0);
            CHECK_FALSE(t.header.empty());
        }
        CHECK(out.report.annotations.count("diamond_tau0") == 1);
    }
}
