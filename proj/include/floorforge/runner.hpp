#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floorforge/checkers.hpp"
#include "floorforge/errors.hpp"
#include "floorforge/monotone.hpp"
#include "floorforge/radical_identities.hpp"
#include "floorforge/report.hpp"
#include "floorforge/sweep.hpp"

namespace floorforge {

// One verification job: a builtin identity id (or DSL file) plus ranges,
// parameters, and execution knobs.
struct JobSpec {
    std::string target;
    std::vector<RangeVar> ranges;
    std::map<std::string, std::string> params;
    unsigned worker_count = 1;
    unsigned precision_cap_bits = 16384;
    ReportFormat format = ReportFormat::text;
    std::uint64_t counterexample_cap = 100;
    bool verbose = false;

    void validate() const {
        if (worker_count < 1) throw DomainError("worker_count must be >= 1");
        if (precision_cap_bits < 64) throw DomainError("precision_cap_bits must be >= 64");
    }

    RefineOptions refine() const { return RefineOptions{64, precision_cap_bits}; }
};

namespace runner_detail {

using ParamMap = std::map<std::string, std::string>;

inline BigInt parse_bigint(const std::string& s, const std::string& what) {
    try {
        return BigInt(s);
    } catch (const std::exception&) {
        throw DomainError("malformed integer for " + what + ": '" + s + "'");
    }
}

inline BigInt param_int(const ParamMap& params, const std::string& name, const BigInt& fallback) {
    auto it = params.find(name);
    if (it == params.end()) return fallback;
    return parse_bigint(it->second, "param " + name);
}

inline std::vector<BigInt> param_int_list(const ParamMap& params, const std::string& name) {
    auto it = params.find(name);
    std::vector<BigInt> out;
    if (it == params.end()) return out;
    const std::string& s = it->second;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string piece = s.substr(pos, comma == std::string::npos ? s.size() - pos : comma - pos);
        if (!piece.empty()) out.push_back(parse_bigint(piece, "param " + name));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline std::int64_t to_small(const BigInt& v, const std::string& what) {
    if (v < -(BigInt(1) << 40) || v > (BigInt(1) << 40))
        throw DomainError(what + " out of supported range");
    return v.convert_to<std::int64_t>();
}

inline std::string big_str(const BigInt& v) { return v.str(); }

struct BuiltinDef {
    std::vector<std::string> range_vars;
    std::vector<std::string> known_params;
};

inline const std::map<std::string, BuiltinDef>& builtin_table() {
    static const std::map<std::string, BuiltinDef> table = {
        {"eq1", {{"n"}, {}}},
        {"eq2", {{"n"}, {}}},
        {"eq3", {{"n"}, {}}},
        {"hermite", {{"p", "q", "b"}, {}}},
        {"prop1", {{"x", "a", "b"}, {}}},
        {"corollary5", {{"p", "n"}, {"den"}}},
        {"corollary6", {{"m"}, {}}},
        {"corollary7", {{"n", "a", "b"}, {"unchecked"}}},
        {"corollary8", {{"n", "a", "b"}, {}}},
        {"corollary9", {{"n", "a", "b", "c", "m"}, {}}},
        {"prop2_chain",
         {{"k"}, {"kind", "fa", "fb", "fc", "fk", "modulus", "ra", "rb"}}},
        {"theorem3", {{"k", "n"}, {"candidates"}}},
        {"theorem4", {{"n"}, {"l", "k", "xs", "unchecked"}}},
        {"lemmas", {{"k", "n"}, {}}},
    };
    return table;
}

}  // namespace runner_detail

inline std::vector<std::string> builtin_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, def] : runner_detail::builtin_table()) ids.push_back(id);
    return ids;
}

// Sweeps the named builtin checker over the given ranges. Ranges are
// reordered into the builtin's canonical variable order, so reports are
// independent of both the worker count and the order of --range flags.
inline CheckReport run_builtin(const std::string& id,
                               const std::map<std::string, std::string>& params,
                               const std::vector<RangeVar>& user_ranges, const JobSpec& job) {
    using namespace runner_detail;
    job.validate();
    const auto t0 = std::chrono::steady_clock::now();

    auto table_it = builtin_table().find(id);
    if (table_it == builtin_table().end()) throw DomainError("unknown builtin id '" + id + "'");
    const BuiltinDef& def = table_it->second;
    for (const auto& [k, v] : params) {
        if (std::find(def.known_params.begin(), def.known_params.end(), k) ==
            def.known_params.end())
            throw DomainError("builtin '" + id + "' does not take param '" + k + "'");
    }

    std::vector<RangeVar> ranges;
    for (const auto& name : def.range_vars) {
        auto it = std::find_if(user_ranges.begin(), user_ranges.end(),
                               [&](const RangeVar& r) { return r.name == name; });
        if (it == user_ranges.end())
            throw DomainError("builtin '" + id + "' requires --range " + name + "=LO..HI");
        ranges.push_back(*it);
    }
    if (user_ranges.size() != def.range_vars.size())
        throw DomainError("builtin '" + id + "' takes exactly " +
                          std::to_string(def.range_vars.size()) + " range(s)");

    const RefineOptions refine = job.refine();
    ItemFn fn;

    if (id == "eq1") {
        fn = [](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            const BigInt& n = v[0];
            if (n < 1) return {ItemStatus::skip, "", ""};
            BigInt lhs = floor_div(n, 3) + floor_div(n + 2, 6) + floor_div(n + 4, 6);
            BigInt rhs = floor_div(n, 2) + floor_div(n + 3, 6);
            ItemResult item{lhs == rhs ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = lhs.str();
                item.rhs = rhs.str();
            }
            return item;
        };
    } else if (id == "eq2") {
        fn = [refine](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            const BigInt& n = v[0];
            if (n < 1) return {ItemStatus::skip, "", ""};
            const Rational half(1, 2);
            BigInt lhs = floor_radical_sum(
                RadicalSum(half) + RadicalSum(std::vector<RadicalTerm>{normalize_radical(
                                       Rational(1), Rational(n) + half, 2)}),
                refine);
            BigInt rhs = floor_radical_sum(
                RadicalSum(half) + RadicalSum(std::vector<RadicalTerm>{normalize_radical(
                                       Rational(1), Rational(n) + Rational(1, 4), 2)}),
                refine);
            ItemResult item{lhs == rhs ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = lhs.str();
                item.rhs = rhs.str();
            }
            return item;
        };
    } else if (id == "eq3") {
        fn = [refine](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            const BigInt& n = v[0];
            if (n < 1) return {ItemStatus::skip, "", ""};
            BigInt lhs =
                floor_radical_sum(RadicalSum::root(n, 2) + RadicalSum::root(n + 1, 2), refine);
            BigInt rhs = ikrt(4 * n + 2, 2);
            ItemResult item{lhs == rhs ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = lhs.str();
                item.rhs = rhs.str();
            }
            return item;
        };
    } else if (id == "hermite") {
        fn = [](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            const BigInt &p = v[0], &q = v[1], &b = v[2];
            if (q < 1 || b < 1 || b > 100000) return {ItemStatus::skip, "", ""};
            Rational t = make_rational(p, q);
            std::int64_t bs = b.convert_to<std::int64_t>();
            BigInt lhs = 0;
            for (std::int64_t i = 0; i < bs; ++i) lhs += floor_rat(t + Rational(i, bs));
            BigInt rhs = floor_rat(t * bs);
            ItemResult item{lhs == rhs ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = lhs.str();
                item.rhs = rhs.str();
            }
            return item;
        };
    } else if (id == "prop1") {
        fn = [](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            const BigInt &x = v[0], &a = v[1], &b = v[2];
            if (a == 0 || b < 1 || b > 100000) return {ItemStatus::skip, "", ""};
            std::int64_t as = to_small(a, "a"), bs = b.convert_to<std::int64_t>();
            BigInt lhs = floor_rat(make_rational(x, a));
            BigInt rhs = 0;
            const Rational ab = Rational(as) * bs;
            for (std::int64_t i = 0; i < bs; ++i)
                rhs += floor_rat((Rational(x) + Rational(i) * as) / ab);
            ItemResult item{lhs == rhs ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = lhs.str();
                item.rhs = rhs.str();
            }
            return item;
        };
    } else if (id == "corollary5") {
        BigInt den = param_int(params, "den", 1);
        if (den < 1) throw DomainError("corollary5: den must be >= 1");
        fn = [den](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            const BigInt &p = v[0], &n = v[1];
            if (n < 2 || n > 1000) return {ItemStatus::skip, "", ""};
            Rational x = make_rational(p, den);
            BigInt value = corollary5_value(x, n.convert_to<std::int64_t>());
            BigInt expected = floor_rat(x) + (x < 0 ? 1 : 0);
            ItemResult item{value == expected ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = value.str();
                item.rhs = expected.str();
            }
            return item;
        };
    } else if (id == "corollary6") {
        fn = [](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            const BigInt& m = v[0];
            if (m < 1) return {ItemStatus::skip, "", ""};
            BigInt value = corollary6_value(m);
            ItemResult item{value == m ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = value.str();
                item.rhs = m.str();
            }
            return item;
        };
    } else if (id == "corollary7") {
        const bool unchecked = param_int(params, "unchecked", 0) != 0;
        fn = [refine, unchecked](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            const BigInt &n = v[0], &a = v[1], &b = v[2];
            if (n < 1 || a < 1 || b < 1) return {ItemStatus::skip, "", ""};
            std::int64_t as = to_small(a, "a"), bs = to_small(b, "b");
            if (!unchecked && n < ceil_rat(Rational(2 * bs, as))) return {ItemStatus::skip, "", ""};
            bool ok = check_corollary7(n, as, bs, /*unchecked=*/true, refine);
            ItemResult item{ok ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = ok ? "equal" : "unequal";
                item.rhs = "equal";
            }
            return item;
        };
    } else if (id == "corollary8") {
        fn = [refine](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            const BigInt &n = v[0], &a = v[1], &b = v[2];
            if (n < 1 || a < 1 || b < 1) return {ItemStatus::skip, "", ""};
            bool ok = check_corollary8(n, to_small(a, "a"), to_small(b, "b"), refine);
            ItemResult item{ok ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = ok ? "equal" : "unequal";
                item.rhs = "equal";
            }
            return item;
        };
    } else if (id == "corollary9") {
        fn = [](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            const BigInt &n = v[0], &a = v[1], &b = v[2], &c = v[3], &m = v[4];
            if (n < 1 || a < 2 || m < 2 || b < 1 || c < 0) return {ItemStatus::skip, "", ""};
            std::int64_t as = to_small(a, "a"), bs = to_small(b, "b"), cs = to_small(c, "c"),
                         ms = to_small(m, "m");
            if (bs < ms - 1 - cs) return {ItemStatus::skip, "", ""};
            bool ok = check_corollary9(n, as, bs, cs, ms);
            ItemResult item{ok ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = ok ? "equal" : "unequal";
                item.rhs = "equal";
            }
            return item;
        };
    } else if (id == "prop2_chain") {
        auto kind_it = params.find("kind");
        const std::string kind = kind_it == params.end() ? "polynomial" : kind_it->second;
        MonotoneFnSpec f = [&] {
            if (kind == "polynomial")
                return MonotoneFnSpec::polynomial(
                    to_small(param_int(params, "fa", 2), "fa"),
                    to_small(param_int(params, "fb", 1), "fb"),
                    static_cast<unsigned>(to_small(param_int(params, "fk", 2), "fk")));
            if (kind == "exponential")
                return MonotoneFnSpec::exponential(
                    to_small(param_int(params, "fa", 2), "fa"),
                    to_small(param_int(params, "fb", 1), "fb"),
                    to_small(param_int(params, "fc", 0), "fc"));
            throw DomainError("prop2_chain: kind must be polynomial or exponential");
        }();
        BigInt modulus = param_int(params, "modulus", 4);
        BigInt ra = param_int(params, "ra", 2);
        BigInt rb = param_int(params, "rb", ra);
        // the residue hypothesis depends only on the params; fail fast
        {
            ResidueProfile profile = residue_scan(f, modulus);
            for (BigInt y = ra; y <= rb; ++y)
                if (profile.attained.count(detail::mod_floor(y, modulus)))
                    throw PreconditionError("prop2_chain: residue " +
                                            detail::mod_floor(y, modulus).str() +
                                            " is attained by f");
        }
        fn = [f, modulus, ra, rb](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            ChainCheck chain = check_prop2_chain(f, modulus, ra, rb, v[0]);
            ItemResult item{chain.holds ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                std::string floors;
                for (const auto& [arg, c] : chain.values) {
                    if (!floors.empty()) floors += ' ';
                    floors += c.str();
                }
                item.lhs = floors;
                item.rhs = chain.values.empty() ? "" : chain.values.front().second.str();
            }
            return item;
        };
    } else if (id == "theorem3") {
        fn = [refine](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            const BigInt &kv = v[0], &n = v[1];
            if (kv < 2 || kv > 4096 || n < 1) return {ItemStatus::skip, "", ""};
            Theorem3Result r = check_theorem3(n, kv.convert_to<unsigned>(), refine);
            ItemResult item{r.holds ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = r.lhs_floor.str();
                item.rhs = r.rhs_floor.str();
            }
            return item;
        };
    } else if (id == "theorem4") {
        BigInt l = param_int(params, "l", 2);
        unsigned kk = static_cast<unsigned>(to_small(param_int(params, "k", 2), "k"));
        std::vector<BigInt> xs = param_int_list(params, "xs");
        if (xs.empty()) throw DomainError("theorem4: requires --param xs=a,b,...");
        const bool unchecked = param_int(params, "unchecked", 0) != 0;
        Theorem4Instance inst = make_theorem4_instance(l, kk, xs);
        if (!inst.witness && !unchecked)
            throw PreconditionError(
                "theorem4: no witness prime for this (l, k, xs); use unchecked mode");
        Theorem4Options t4opts;
        t4opts.unchecked = true;  // per-item hypotheses handled by skip below
        t4opts.refine = refine;
        fn = [l, kk, xs, inst, unchecked, t4opts](const std::vector<BigInt>& v,
                                                  bool detail) -> ItemResult {
            const BigInt& n = v[0];
            bool in_domain = true;
            for (const auto& x : xs) in_domain = in_domain && n + x >= 0;
            if (!in_domain) return {ItemStatus::skip, "", ""};
            const bool within = inst.witness.has_value() && Rational(n) >= inst.bound_n;
            if (!within && !unchecked) return {ItemStatus::skip, "", ""};
            Theorem4Evaluation ev = evaluate_theorem4(n, l, kk, xs, t4opts);
            ItemResult item{ev.holds ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = ev.lhs_floor.str();
                item.rhs = ev.rhs_floor.str();
            }
            return item;
        };
    } else if (id == "lemmas") {
        fn = [refine](const std::vector<BigInt>& v, bool detail) -> ItemResult {
            const BigInt &kv = v[0], &n = v[1];
            if (kv < 2 || kv > 4096 || n < 1) return {ItemStatus::skip, "", ""};
            unsigned k = kv.convert_to<unsigned>();
            bool l10 = lemma10_check(n, k);
            LemmaPair lp = lemma11_12_check(n, k, refine);
            bool ok = l10 && lp.lemma11 && lp.lemma12;
            ItemResult item{ok ? ItemStatus::hold : ItemStatus::fail, "", ""};
            if (item.status == ItemStatus::fail || detail) {
                item.lhs = std::string(l10 ? "1" : "0") + (lp.lemma11 ? "1" : "0") +
                           (lp.lemma12 ? "1" : "0");
                item.rhs = "111";
            }
            return item;
        };
    }

    SweepOptions sweep_opts;
    sweep_opts.workers = job.worker_count;
    sweep_opts.counterexample_cap = job.counterexample_cap;
    sweep_opts.verbose = job.verbose;
    SweepOutcome out = run_sweep(ranges, fn, sweep_opts);

    CheckReport report;
    report.identity = id;
    for (const auto& [k, v] : params) report.params.emplace_back(k, v);
    std::string range;
    for (const auto& r : ranges) {
        if (!range.empty()) range += ",";
        range += r.name + "=" + r.lo.str() + ".." + r.hi.str();
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

    if (id == "theorem3" && param_int(params, "candidates", 0) != 0) {
        const RangeVar& krange = ranges[0];
        unsigned k_lo = static_cast<unsigned>(to_small(krange.lo < 2 ? BigInt(2) : krange.lo, "k"));
        unsigned k_hi = static_cast<unsigned>(to_small(krange.hi, "k"));
        std::vector<Theorem3Result> cands;
        std::vector<MahlerMargin> margins;
        for (unsigned k = k_lo; k <= k_hi; ++k) {
            cands.push_back(check_theorem3(theorem3_candidate(k), k, refine));
            margins.push_back(mahler_margin(k));
        }
        report.candidates = std::move(cands);
        report.margins = std::move(margins);
    }

    report.duration_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              t0)
            .count());
    report.finalize_status();
    return report;
}

}  // namespace floorforge
