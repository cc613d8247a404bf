#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "floorforge/report.hpp"
#include "support/random_values.hpp"

using namespace floorforge;

TEST_CASE("partition_range splits evenly and drops empty parts") {
    auto parts = partition_range(1, 10, 3);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == std::pair<BigInt, BigInt>{1, 4});
    CHECK(parts[1] == std::pair<BigInt, BigInt>{5, 7});
    CHECK(parts[2] == std::pair<BigInt, BigInt>{8, 10});

    parts = partition_range(1, 2, 5);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == std::pair<BigInt, BigInt>{1, 1});
    CHECK(parts[1] == std::pair<BigInt, BigInt>{2, 2});

    parts = partition_range(5, 5, 1);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == std::pair<BigInt, BigInt>{5, 5});

    CHECK_THROWS_AS(partition_range(3, 2, 1), DomainError);
    CHECK_THROWS_AS(partition_range(1, 5, 0), DomainError);
}

TEST_CASE("partition_range covers the range disjointly") {
    std::mt19937_64 rng(0x5eed0501);
    for (int i = 0; i < 1000; ++i) {
        BigInt lo = fftest::random_int(rng, -10000, 10000);
        BigInt hi = lo + fftest::random_int(rng, 0, 5000);
        std::uint64_t parts = static_cast<std::uint64_t>(fftest::random_int(rng, 1, 64));
        auto out = partition_range(lo, hi, parts);
        BigInt covered = 0;
        BigInt expect_next = lo;
        BigInt min_size = hi - lo + 1, max_size = 0;
        for (const auto& [a, b] : out) {
            CHECK(a == expect_next);  // consecutive, disjoint
            CHECK(a <= b);
            BigInt size = b - a + 1;
            covered += size;
            if (size < min_size) min_size = size;
            if (size > max_size) max_size = size;
            expect_next = b + 1;
        }
        CHECK(covered == hi - lo + 1);
        CHECK(expect_next == hi + 1);
        CHECK(max_size - min_size <= 1);
    }
}

namespace {

CheckReport sample_report() {
    CheckReport r;
    r.identity = "eq1";
    r.params.emplace_back("flavor", "test");
    r.range = "n=1..10";
    r.checked_count = 10;
    r.counterexample_count = 1;
    r.counterexamples.push_back({{{"n", "3"}}, "2", "1"});
    r.duration_ms = 12;
    r.finalize_status();
    return r;
}

}  // namespace

TEST_CASE("emit_report json carries the report fields") {
    CheckReport r = sample_report();
    std::string json = emit_report(r, ReportFormat::json);
    CHECK(json.find("\"identity\": \"eq1\"") != std::string::npos);
    CHECK(json.find("\"status\": \"counterexample\"") != std::string::npos);
    CHECK(json.find("\"checked_count\": 10") != std::string::npos);
    CHECK(json.find("\"n\": \"3\"") != std::string::npos);
    CHECK(json.find("\"duration_ms\": 12") != std::string::npos);

    // machine-parse it back
    auto parsed = nlohmann::json::parse(json);
    CHECK(parsed["counterexamples"].size() == 1);
    CHECK(parsed["counterexamples"][0]["lhs"] == "2");
    CHECK(parsed["params"]["flavor"] == "test");

    CheckReport ok;
    ok.identity = "eq1";
    ok.finalize_status();
    CHECK(emit_report(ok, ReportFormat::json).find("\"status\": \"all_hold\"") !=
          std::string::npos);
}

TEST_CASE("emit_report csv has one row per failure unless verbose rows exist") {
    CheckReport r = sample_report();
    std::string csv = emit_report(r, ReportFormat::csv);
    CHECK(csv == "identity,binding,lhs,rhs,holds\neq1,n=3,2,1,false\n");

    r.verbose_rows = {{{{"n", "1"}}, "0", "0", true}, {{{"n", "3"}}, "2", "1", false}};
    csv = emit_report(r, ReportFormat::csv);
    CHECK(csv ==
          "identity,binding,lhs,rhs,holds\n"
          "eq1,n=1,0,0,true\n"
          "eq1,n=3,2,1,false\n");
}

TEST_CASE("emit_report is byte-deterministic") {
    CheckReport r = sample_report();
    for (ReportFormat f : {ReportFormat::text, ReportFormat::json, ReportFormat::csv})
        CHECK(emit_report(r, f) == emit_report(r, f));
}

TEST_CASE("status precedence and exit codes") {
    CheckReport r;
    r.finalize_status();
    CHECK(r.status == ReportStatus::all_hold);
    CHECK(exit_code(r.status) == 0);

    r.error_count = 2;
    r.finalize_status();
    CHECK(r.status == ReportStatus::error);
    CHECK(exit_code(r.status) == 2);

    r.undecided_count = 1;
    r.finalize_status();
    CHECK(r.status == ReportStatus::undecided);
    CHECK(exit_code(r.status) == 3);

    r.counterexample_count = 1;
    r.finalize_status();
    CHECK(r.status == ReportStatus::counterexample);
    CHECK(exit_code(r.status) == 1);
}

TEST_CASE("csv fields with separators are quoted") {
    CheckReport r;
    r.identity = "dsl";
    r.counterexample_count = 1;
    r.counterexamples.push_back({{{"n", "1"}}, "1,5", "a\"b"});
    r.finalize_status();
    std::string csv = emit_report(r, ReportFormat::csv);
    CHECK(csv.find("\"1,5\"") != std::string::npos);
    CHECK(csv.find("\"a\"\"b\"") != std::string::npos);
}
