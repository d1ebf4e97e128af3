#include <doctest.h>

#include <sstream>

#include "peaont/bench.hpp"
#include "peaont/errors.hpp"

using namespace peaont;

TEST_CASE("scheme spec strings parse") {
    auto s = scheme_spec_from_string("pe-aont:4,3");
    CHECK(s.id == SchemeId::PeAont);
    CHECK(s.k == 4);
    CHECK(s.e == 3);
    CHECK(s.label() == "PE-AONT(4,3)");

    s = scheme_spec_from_string("pe-aont:8");
    CHECK(s.k == 8);
    CHECK(s.e == 7);

    s = scheme_spec_from_string("bastion");
    CHECK(s.id == SchemeId::Bastion);
    CHECK(s.label() == "BASTION");

    CHECK_THROWS_AS(scheme_spec_from_string("pe-aont:x,y"), ParamsError);
    CHECK_THROWS_AS(scheme_spec_from_string("nonsense"), ParamsError);
}

TEST_CASE("degenerate config: one rep of 16 bytes") {
    BenchConfig config;
    config.schemes = {{SchemeId::PeAont, 4, 3}};
    config.data_sizes = {16};
    config.repetitions = 1;
    config.warmup_runs = 0;

    const auto report = run_bench(config);
    REQUIRE(report.rows.size() == 1);
    REQUIRE(report.summaries.size() == 1);
    CHECK(report.summaries[0].stddev_mb_per_s == 0.0);
    CHECK(report.summaries[0].counters_match_law);
    CHECK(report.rows[0].seconds > 0);
}

TEST_CASE("counters are deterministic under a fixed seed") {
    BenchConfig config;
    config.schemes = default_bench_schemes();
    config.data_sizes = {4096};
    config.repetitions = 2;
    config.warmup_runs = 0;
    config.seed = 1234;

    const auto a = run_bench(config);
    const auto b = run_bench(config);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].cipher_ops == b.rows[i].cipher_ops);
        CHECK(a.rows[i].xor_ops == b.rows[i].xor_ops);
    }
    for (const auto& s : a.summaries) {
        CHECK(s.counters_match_law);
    }
}

TEST_CASE("csv carries the pinned columns") {
    BenchConfig config;
    config.schemes = {{SchemeId::EncSplit, 4, 3}};
    config.data_sizes = {1024};
    config.repetitions = 2;
    config.warmup_runs = 0;

    const auto report = run_bench(config);
    std::ostringstream out;
    write_csv(out, report);
    const std::string text = out.str();
    CHECK(text.rfind("scheme,k,e,size_bytes,rep,seconds,mb_per_s,cipher_ops,xor_ops\n", 0) == 0);
    CHECK(text.find("ENC_SPLIT,4,3,1024,0,") != std::string::npos);
    CHECK(text.find("ENC_SPLIT,4,3,1024,1,") != std::string::npos);
}

TEST_CASE("recovery timing adds recover rows") {
    BenchConfig config;
    config.schemes = {{SchemeId::PeAont, 4, 3}};
    config.data_sizes = {2048};
    config.repetitions = 1;
    config.warmup_runs = 0;
    config.time_recovery = true;

    const auto report = run_bench(config);
    REQUIRE(report.rows.size() == 2);
    CHECK(!report.rows[0].recovery);
    CHECK(report.rows[1].recovery);
    CHECK(report.summaries[0].recover_mean_mb_per_s > 0);

    std::ostringstream out;
    write_csv(out, report);
    CHECK(out.str().find("PE-AONT(4,3)/recover") != std::string::npos);
}

TEST_CASE("environment probe fills the record") {
    const auto env = probe_environment();
    CHECK(!env.cpu_model.empty());
    CHECK(!env.crypto_backend.empty());
}

TEST_CASE("config validation") {
    BenchConfig config;
    CHECK_THROWS_AS(run_bench(config), ParamsError);
    config.schemes = {{SchemeId::PeAont, 4, 3}};
    CHECK_THROWS_AS(run_bench(config), ParamsError);
    config.data_sizes = {16};
    config.repetitions = 0;
    CHECK_THROWS_AS(run_bench(config), ParamsError);
}
