#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "floorforge/errors.hpp"
#include "floorforge/numeric.hpp"
#include "floorforge/radical_identities.hpp"

namespace floorforge {

enum class ReportStatus { all_hold, counterexample, error, undecided };

inline const char* to_string(ReportStatus s) {
    switch (s) {
        case ReportStatus::all_hold: return "all_hold";
        case ReportStatus::counterexample: return "counterexample";
        case ReportStatus::error: return "error";
        case ReportStatus::undecided: return "undecided";
    }
    return "error";
}

// Exit codes for scripting: 0 all hold, 1 counterexample, 2 usage or domain
// error, 3 undecided at the precision cap.
inline int exit_code(ReportStatus s) {
    switch (s) {
        case ReportStatus::all_hold: return 0;
        case ReportStatus::counterexample: return 1;
        case ReportStatus::error: return 2;
        case ReportStatus::undecided: return 3;
    }
    return 2;
}

struct Counterexample {
    std::vector<std::pair<std::string, std::string>> bindings;  // (var, decimal value)
    std::string lhs;
    std::string rhs;
};

struct VerboseRow {
    std::vector<std::pair<std::string, std::string>> bindings;
    std::string lhs;
    std::string rhs;
    bool holds = true;
};

// Result of one range sweep. Counterexample storage is capped (the sweep
// keeps counting past the cap); candidates and margins are attached by the
// exception-candidate scans only.
struct CheckReport {
    std::string identity;
    std::vector<std::pair<std::string, std::string>> params;
    std::string range;
    std::uint64_t checked_count = 0;
    std::uint64_t skipped_count = 0;
    std::uint64_t counterexample_count = 0;
    std::vector<Counterexample> counterexamples;
    std::uint64_t error_count = 0;
    std::uint64_t undecided_count = 0;
    std::vector<std::string> error_samples;  // capped; text output only
    std::optional<std::vector<Theorem3Result>> candidates;
    std::optional<std::vector<MahlerMargin>> margins;
    std::vector<VerboseRow> verbose_rows;  // filled only in verbose sweeps
    std::uint64_t duration_ms = 0;
    ReportStatus status = ReportStatus::all_hold;

    void finalize_status() {
        if (counterexample_count > 0)
            status = ReportStatus::counterexample;
        else if (undecided_count > 0)
            status = ReportStatus::undecided;
        else if (error_count > 0)
            status = ReportStatus::error;
        else
            status = ReportStatus::all_hold;
    }
};

// Splits [lo, hi] into at most `parts` consecutive subranges whose sizes
// differ by no more than one; empty parts are dropped.
inline std::vector<std::pair<BigInt, BigInt>> partition_range(const BigInt& lo, const BigInt& hi,
                                                              std::uint64_t parts) {
    if (lo > hi) throw DomainError("partition_range: requires lo <= hi");
    if (parts < 1) throw DomainError("partition_range: requires parts >= 1");
    BigInt total = hi - lo + 1;
    BigInt base = total / parts;
    BigInt extra = total % parts;
    std::vector<std::pair<BigInt, BigInt>> out;
    BigInt start = lo;
    for (std::uint64_t p = 0; p < parts; ++p) {
        BigInt size = base + (BigInt(p) < extra ? 1 : 0);
        if (size == 0) continue;
        out.emplace_back(start, start + size - 1);
        start += size;
    }
    return out;
}

enum class ReportFormat { text, json, csv };

inline std::optional<ReportFormat> parse_format(const std::string& name) {
    if (name == "text") return ReportFormat::text;
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    return std::nullopt;
}

namespace report_detail {

inline std::string rational_str(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string binding_str(const std::vector<std::pair<std::string, std::string>>& bs) {
    std::string out;
    for (const auto& [name, value] : bs) {
        if (!out.empty()) out += ';';
        out += name + "=" + value;
    }
    return out;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace report_detail

// Serializes a report. Output is byte-deterministic for a fixed report:
// same struct in, same bytes out.
inline std::string emit_report(const CheckReport& r, ReportFormat format) {
    using report_detail::binding_str;
    using report_detail::csv_field;
    using report_detail::rational_str;
    if (format == ReportFormat::json) {
        nlohmann::ordered_json j;
        j["identity"] = r.identity;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.params) params[k] = v;
        j["params"] = std::move(params);
        j["range"] = r.range;
        j["checked_count"] = r.checked_count;
        j["skipped_count"] = r.skipped_count;
        j["counterexample_count"] = r.counterexample_count;
        nlohmann::ordered_json ces = nlohmann::ordered_json::array();
        for (const auto& ce : r.counterexamples) {
            nlohmann::ordered_json e;
            nlohmann::ordered_json bindings = nlohmann::ordered_json::object();
            for (const auto& [name, value] : ce.bindings) bindings[name] = value;
            e["bindings"] = std::move(bindings);
            e["lhs"] = ce.lhs;
            e["rhs"] = ce.rhs;
            ces.push_back(std::move(e));
        }
        j["counterexamples"] = std::move(ces);
        j["error_count"] = r.error_count;
        j["undecided_count"] = r.undecided_count;
        if (r.candidates) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& c : *r.candidates) {
                nlohmann::ordered_json e;
                e["k"] = c.k;
                e["n"] = c.n.str();
                e["lhs_floor"] = c.lhs_floor.str();
                e["rhs_floor"] = c.rhs_floor.str();
                e["holds"] = c.holds;
                e["is_candidate"] = c.is_candidate;
                e["below_bound"] = c.below_bound;
                arr.push_back(std::move(e));
            }
            j["candidates"] = std::move(arr);
        }
        if (r.margins) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& m : *r.margins) {
                nlohmann::ordered_json e;
                e["k"] = m.k;
                e["n"] = m.n.str();
                e["gap"] = rational_str(m.gap);
                e["bound"] = rational_str(m.bound);
                e["satisfies_eq6"] = m.satisfies_eq6;
                arr.push_back(std::move(e));
            }
            j["margins"] = std::move(arr);
        }
        j["duration_ms"] = r.duration_ms;
        j["status"] = to_string(r.status);
        return j.dump(2) + "\n";
    }
    if (format == ReportFormat::csv) {
        std::string out = "identity,binding,lhs,rhs,holds\n";
        auto row = [&](const std::vector<std::pair<std::string, std::string>>& bs,
                       const std::string& lhs, const std::string& rhs, bool holds) {
            out += csv_field(r.identity) + ',' + csv_field(binding_str(bs)) + ',' +
                   csv_field(lhs) + ',' + csv_field(rhs) + ',' + (holds ? "true" : "false") +
                   '\n';
        };
        if (!r.verbose_rows.empty()) {
            for (const auto& v : r.verbose_rows) row(v.bindings, v.lhs, v.rhs, v.holds);
        } else {
            for (const auto& ce : r.counterexamples) row(ce.bindings, ce.lhs, ce.rhs, false);
        }
        return out;
    }
    // text
    std::string out;
    out += "identity: " + r.identity + "\n";
    if (!r.params.empty()) {
        out += "params:";
        for (const auto& [k, v] : r.params) out += " " + k + "=" + v;
        out += "\n";
    }
    if (!r.range.empty()) out += "range: " + r.range + "\n";
    out += "checked: " + std::to_string(r.checked_count);
    if (r.skipped_count) out += "  skipped: " + std::to_string(r.skipped_count);
    out += "\n";
    out += "counterexamples: " + std::to_string(r.counterexample_count);
    if (r.counterexample_count > r.counterexamples.size())
        out += " (first " + std::to_string(r.counterexamples.size()) + " stored)";
    out += "\n";
    for (const auto& ce : r.counterexamples)
        out += "  " + binding_str(ce.bindings) + ": lhs=" + ce.lhs + " rhs=" + ce.rhs + "\n";
    if (r.error_count) {
        out += "errors: " + std::to_string(r.error_count) + "\n";
        for (const auto& e : r.error_samples) out += "  " + e + "\n";
    }
    if (r.undecided_count)
        out += "undecided: " + std::to_string(r.undecided_count) + "\n";
    if (r.candidates) {
        out += "candidates (n = floor((3/2)^k)):\n";
        for (const auto& c : *r.candidates)
            out += "  k=" + std::to_string(c.k) + " n=" + c.n.str() + " lhs=" +
                   c.lhs_floor.str() + " rhs=" + c.rhs_floor.str() +
                   (c.holds ? " holds" : " FAILS") + "\n";
    }
    if (r.margins) {
        out += "margins |2*(3/2)^k - (2n+1)| vs 1/(4*(3/2)^k):\n";
        for (const auto& m : *r.margins)
            out += "  k=" + std::to_string(m.k) + " n=" + m.n.str() + " gap=" +
                   rational_str(m.gap) + " bound=" + rational_str(m.bound) +
                   (m.satisfies_eq6 ? " WITHIN-EQ6" : "") + "\n";
    }
    out += "duration_ms: " + std::to_string(r.duration_ms) + "\n";
    out += "status: " + std::string(to_string(r.status)) + "\n";
    return out;
}

}  // namespace floorforge
