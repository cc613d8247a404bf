#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "floorforge/dsl.hpp"
#include "floorforge/report.hpp"
#include "floorforge/sweep.hpp"

namespace floorforge {

struct StatementCheckOptions {
    std::uint64_t counterexample_cap = 100;
    unsigned workers = 1;
    bool verbose = false;
    RefineOptions refine;
};

// Sweeps the statement's full Cartesian range and compares both sides as
// exact rationals. A side that evaluates to an irrational value is an
// evaluation error for that binding (wrap it in floor), counted separately
// from counterexamples.
inline CheckReport check_statement(const IdentityStatement& stmt,
                                   const StatementCheckOptions& opts = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<RangeVar> ranges;
    for (const auto& q : stmt.quantifiers) ranges.push_back({q.var, q.lo, q.hi});

    ItemFn fn = [&stmt, &opts](const std::vector<BigInt>& values, bool) -> ItemResult {
        Env env;
        for (std::size_t i = 0; i < stmt.quantifiers.size(); ++i)
            env[stmt.quantifiers[i].var] = values[i];
        EvalValue lv = eval_expr(stmt.lhs, env, opts.refine);
        EvalValue rv = eval_expr(stmt.rhs, env, opts.refine);
        if (!std::holds_alternative<Rational>(lv) || !std::holds_alternative<Rational>(rv))
            throw UnsupportedError("side evaluates to an irrational value; wrap it in floor()");
        const Rational& lq = std::get<Rational>(lv);
        const Rational& rq = std::get<Rational>(rv);
        ItemResult item;
        item.status = lq == rq ? ItemStatus::hold : ItemStatus::fail;
        item.lhs = report_detail::rational_str(lq);
        item.rhs = report_detail::rational_str(rq);
        return item;
    };

    SweepOptions sweep_opts;
    sweep_opts.workers = opts.workers;
    sweep_opts.counterexample_cap = opts.counterexample_cap;
    sweep_opts.verbose = opts.verbose;
    SweepOutcome out = run_sweep(ranges, fn, sweep_opts);

    CheckReport report;
    report.identity = "dsl";
    report.params.emplace_back("statement", pretty(stmt));
    std::string range;
    for (const auto& q : stmt.quantifiers) {
        if (!range.empty()) range += ",";
        range += q.var + "=" + q.lo.str() + ".." + q.hi.str();
    }
    report.range = range;
    report.checked_count = out.checked;
    report.skipped_count = out.skipped;
    report.counterexample_count = out.counterexample_count;
    report.counterexamples = std::move(out.counterexamples);
    report.error_count = out.error_count;
    report.undecided_count = out.undecided_count;
    report.error_samples = std::move(out.error_samples);
    report.verbose_rows = std::move(out.verbose_rows);
    report.duration_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              t0)
            .count());
    report.finalize_status();
    return report;
}

}  // namespace floorforge
