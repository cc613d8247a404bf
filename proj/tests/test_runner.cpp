#include <catch2/catch_amalgamated.hpp>

#include "floorforge/runner.hpp"

using namespace floorforge;

namespace {

JobSpec job(unsigned workers = 1) {
    JobSpec j;
    j.worker_count = workers;
    return j;
}

}  // namespace

TEST_CASE("run_builtin eq1 sweeps the range") {
    CheckReport r = run_builtin("eq1", {}, {{"n", 1, 20000}}, job());
    CHECK(r.identity == "eq1");
    CHECK(r.checked_count == 20000);
    CHECK(r.counterexample_count == 0);
    CHECK(r.status == ReportStatus::all_hold);
    CHECK(r.range == "n=1..20000");
}

TEST_CASE("run_builtin validates ids, params and ranges") {
    CHECK_THROWS_AS(run_builtin("nope", {}, {{"n", 1, 5}}, job()), DomainError);
    CHECK_THROWS_AS(run_builtin("eq1", {{"bogus", "1"}}, {{"n", 1, 5}}, job()), DomainError);
    CHECK_THROWS_AS(run_builtin("eq1", {}, {}, job()), DomainError);
    CHECK_THROWS_AS(run_builtin("eq1", {}, {{"m", 1, 5}}, job()), DomainError);
    CHECK_THROWS_AS(run_builtin("eq1", {}, {{"n", 1, 5}, {"m", 1, 5}}, job()), DomainError);
    JobSpec bad = job();
    bad.precision_cap_bits = 32;
    CHECK_THROWS_AS(run_builtin("eq1", {}, {{"n", 1, 5}}, bad), DomainError);
    JobSpec bad2 = job();
    bad2.worker_count = 0;
    CHECK_THROWS_AS(run_builtin("eq1", {}, {{"n", 1, 5}}, bad2), DomainError);
}

TEST_CASE("run_builtin multi-range sweeps count skips") {
    // a = 0 column is skipped, the rest checked
    CheckReport r = run_builtin("prop1", {}, {{"x", -30, 30}, {"a", -3, 3}, {"b", 1, 4}},
                                job(3));
    CHECK(r.checked_count == 61 * 6 * 4);
    CHECK(r.skipped_count == 61 * 1 * 4);
    CHECK(r.status == ReportStatus::all_hold);

    r = run_builtin("hermite", {}, {{"p", -20, 20}, {"q", 1, 6}, {"b", 1, 5}}, job());
    CHECK(r.checked_count == 41 * 6 * 5);
    CHECK(r.status == ReportStatus::all_hold);
}

TEST_CASE("run_builtin corollary checkers") {
    CheckReport r = run_builtin("corollary5", {{"den", "7"}}, {{"p", -300, 300}, {"n", 2, 5}},
                                job(2));
    CHECK(r.status == ReportStatus::all_hold);
    CHECK(r.checked_count == 601 * 4);

    r = run_builtin("corollary6", {}, {{"m", 1, 3000}}, job());
    CHECK(r.status == ReportStatus::all_hold);

    r = run_builtin("corollary7", {}, {{"n", 1, 200}, {"a", 1, 3}, {"b", 1, 3}}, job(2));
    CHECK(r.status == ReportStatus::all_hold);
    CHECK(r.skipped_count > 0);  // below-bound pairs skipped

    CheckReport unchecked = run_builtin("corollary7", {{"unchecked", "1"}},
                                        {{"n", 1, 200}, {"a", 1, 3}, {"b", 1, 3}}, job(2));
    CHECK(unchecked.skipped_count == 0);
    CHECK(unchecked.checked_count == 200 * 9);

    r = run_builtin("corollary8", {}, {{"n", 1, 150}, {"a", 1, 3}, {"b", 1, 3}}, job(2));
    CHECK(r.status == ReportStatus::all_hold);

    r = run_builtin("corollary9", {},
                    {{"n", 1, 100}, {"a", 2, 3}, {"b", 1, 2}, {"c", 0, 1}, {"m", 2, 3}},
                    job(2));
    CHECK(r.status == ReportStatus::all_hold);
    CHECK(r.checked_count > 0);
}

TEST_CASE("run_builtin prop2_chain uses function params") {
    CheckReport r = run_builtin(
        "prop2_chain",
        {{"kind", "polynomial"}, {"fa", "2"}, {"fb", "1"}, {"fk", "2"}, {"modulus", "4"},
         {"ra", "2"}, {"rb", "2"}},
        {{"k", 1, 300}}, job());
    CHECK(r.status == ReportStatus::all_hold);
    CHECK(r.checked_count == 300);

    // attained residue in the window is a hard precondition error
    CHECK_THROWS_AS(
        run_builtin("prop2_chain",
                    {{"kind", "polynomial"}, {"fa", "2"}, {"fb", "1"}, {"fk", "2"},
                     {"modulus", "4"}, {"ra", "1"}, {"rb", "2"}},
                    {{"k", 1, 10}}, job()),
        PreconditionError);

    r = run_builtin("prop2_chain",
                    {{"kind", "exponential"}, {"fa", "2"}, {"fb", "1"}, {"fc", "0"},
                     {"modulus", "8"}, {"ra", "5"}, {"rb", "7"}},
                    {{"k", 1, 50}}, job());
    CHECK(r.status == ReportStatus::all_hold);
}

TEST_CASE("run_builtin theorem3 attaches candidates and margins") {
    CheckReport r = run_builtin("theorem3", {{"candidates", "1"}},
                                {{"k", 2, 10}, {"n", 1, 100}}, job(4));
    CHECK(r.status == ReportStatus::all_hold);
    REQUIRE(r.candidates.has_value());
    REQUIRE(r.margins.has_value());
    CHECK(r.candidates->size() == 9);
    CHECK(r.margins->size() == 9);
    for (const auto& c : *r.candidates) {
        CHECK(c.is_candidate);
        CHECK(c.holds);
    }
    for (const auto& m : *r.margins) CHECK_FALSE(m.satisfies_eq6);

    CheckReport plain = run_builtin("theorem3", {}, {{"k", 2, 6}, {"n", 1, 50}}, job());
    CHECK_FALSE(plain.candidates.has_value());
    CHECK(plain.status == ReportStatus::all_hold);
}

TEST_CASE("run_builtin theorem4 sweeps n for a fixed instance") {
    CheckReport r = run_builtin("theorem4", {{"l", "3"}, {"k", "2"}, {"xs", "0,1,3"}},
                                {{"n", 1, 300}}, job(2));
    CHECK(r.status == ReportStatus::all_hold);
    CHECK(r.skipped_count == 14);  // bound is 15: n = 1..14 skipped
    CHECK(r.checked_count == 286);

    CheckReport unchecked = run_builtin(
        "theorem4", {{"l", "3"}, {"k", "2"}, {"xs", "0,1,3"}, {"unchecked", "1"}},
        {{"n", 1, 300}}, job(2));
    CHECK(unchecked.skipped_count == 0);
    CHECK(unchecked.checked_count == 300);

    // witness-free instances refuse to run without unchecked
    CHECK_THROWS_AS(run_builtin("theorem4", {{"l", "3"}, {"k", "2"}, {"xs", "0,1,2"}},
                                {{"n", 1, 10}}, job()),
                    PreconditionError);
    CHECK_NOTHROW(run_builtin(
        "theorem4", {{"l", "3"}, {"k", "2"}, {"xs", "0,1,2"}, {"unchecked", "1"}},
        {{"n", 1, 10}}, job()));
}

TEST_CASE("run_builtin lemmas grid") {
    CheckReport r = run_builtin("lemmas", {}, {{"k", 2, 6}, {"n", 1, 100}}, job(4));
    CHECK(r.status == ReportStatus::all_hold);
    CHECK(r.checked_count == 500);
}

TEST_CASE("reports are byte-identical across worker counts") {
    for (const char* id : {"eq1", "eq3"}) {
        CheckReport r1 = run_builtin(id, {}, {{"n", 1, 2000}}, job(1));
        CheckReport r4 = run_builtin(id, {}, {{"n", 1, 2000}}, job(4));
        CheckReport r8 = run_builtin(id, {}, {{"n", 1, 2000}}, job(8));
        r1.duration_ms = r4.duration_ms = r8.duration_ms = 0;
        CAPTURE(id);
        CHECK(emit_report(r1, ReportFormat::json) == emit_report(r4, ReportFormat::json));
        CHECK(emit_report(r1, ReportFormat::json) == emit_report(r8, ReportFormat::json));
        CHECK(emit_report(r1, ReportFormat::csv) == emit_report(r8, ReportFormat::csv));
        CHECK(emit_report(r1, ReportFormat::text) == emit_report(r8, ReportFormat::text));
    }
}

TEST_CASE("verbose sweeps carry per-item rows in order") {
    JobSpec j = job(3);
    j.verbose = true;
    CheckReport r = run_builtin("eq1", {}, {{"n", 1, 12}}, j);
    REQUIRE(r.verbose_rows.size() == 12);
    for (std::size_t i = 0; i < r.verbose_rows.size(); ++i) {
        CHECK(r.verbose_rows[i].bindings[0].second == std::to_string(i + 1));
        CHECK(r.verbose_rows[i].holds);
    }
    std::string csv = emit_report(r, ReportFormat::csv);
    CHECK(csv.find("eq1,n=1,") != std::string::npos);
}

TEST_CASE("counterexamples keep deterministic order under workers") {
    // theorem4 in unchecked mode below its bound can fail at scattered n,
    // which exercises counterexample ordering across chunk merges
    CheckReport a = run_builtin(
        "theorem4", {{"l", "4"}, {"k", "2"}, {"xs", "0,0,0,2"}, {"unchecked", "1"}},
        {{"n", 1, 2000}}, job(1));
    CheckReport b = run_builtin(
        "theorem4", {{"l", "4"}, {"k", "2"}, {"xs", "0,0,0,2"}, {"unchecked", "1"}},
        {{"n", 1, 2000}}, job(8));
    a.duration_ms = b.duration_ms = 0;
    CHECK(emit_report(a, ReportFormat::json) == emit_report(b, ReportFormat::json));
}
