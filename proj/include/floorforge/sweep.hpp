#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "floorforge/errors.hpp"
#include "floorforge/numeric.hpp"
#include "floorforge/radical.hpp"
#include "floorforge/report.hpp"

namespace floorforge {

struct RangeVar {
    std::string name;
    BigInt lo;
    BigInt hi;  // inclusive; lo <= hi
};

enum class ItemStatus { hold, fail, skip };

// Outcome of evaluating one binding tuple. lhs/rhs must be filled on fail;
// on hold they are only needed when the sweep records verbose rows.
struct ItemResult {
    ItemStatus status = ItemStatus::hold;
    std::string lhs;
    std::string rhs;
};

using ItemFn = std::function<ItemResult(const std::vector<BigInt>& values, bool want_detail)>;

struct SweepOptions {
    unsigned workers = 1;
    std::uint64_t counterexample_cap = 100;
    std::uint64_t error_sample_cap = 20;
    bool verbose = false;
};

struct SweepOutcome {
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0;
    std::uint64_t counterexample_count = 0;
    std::uint64_t error_count = 0;
    std::uint64_t undecided_count = 0;
    std::vector<Counterexample> counterexamples;
    std::vector<std::string> error_samples;
    std::vector<VerboseRow> verbose_rows;
};

namespace sweep_detail {

struct Layout {
    std::vector<BigInt> sizes;
    std::uint64_t total = 0;
};

inline Layout layout_of(const std::vector<RangeVar>& ranges) {
    Layout lay;
    BigInt total = 1;
    for (const auto& r : ranges) {
        if (r.lo > r.hi) throw DomainError("sweep: empty range for '" + r.name + "'");
        lay.sizes.push_back(r.hi - r.lo + 1);
        total *= lay.sizes.back();
    }
    if (total > (BigInt(1) << 62)) throw DomainError("sweep: range cardinality too large");
    lay.total = total.convert_to<std::uint64_t>();
    return lay;
}

// Row-major decode of a flat index into per-variable values.
inline void decode(const Layout& lay, const std::vector<RangeVar>& ranges, std::uint64_t flat,
                   std::vector<BigInt>& values) {
    values.resize(ranges.size());
    BigInt rest = flat;
    for (std::size_t i = ranges.size(); i-- > 0;) {
        BigInt q, r;
        boost::multiprecision::divide_qr(rest, lay.sizes[i], q, r);
        values[i] = ranges[i].lo + r;
        rest = std::move(q);
    }
}

}  // namespace sweep_detail

// Evaluates fn over the whole Cartesian range, split into one contiguous
// chunk of flat indices per worker and merged back in index order, so the
// outcome is identical for every worker count. Exceptions from fn are
// per-item results: UndecidedError counts as undecided, other library and
// runtime errors count as errors.
inline SweepOutcome run_sweep(const std::vector<RangeVar>& ranges, const ItemFn& fn,
                              const SweepOptions& opts = {}) {
    const sweep_detail::Layout lay = sweep_detail::layout_of(ranges);
    const unsigned workers = opts.workers < 1 ? 1 : opts.workers;
    const std::uint64_t nchunks =
        lay.total == 0 ? 0 : std::min<std::uint64_t>(workers, lay.total);

    std::vector<SweepOutcome> partial(nchunks);
    std::vector<std::exception_ptr> crashed(nchunks);

    auto run_chunk = [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
        SweepOutcome& out = partial[c];
        std::vector<BigInt> values;
        for (std::uint64_t flat = begin; flat < end; ++flat) {
            sweep_detail::decode(lay, ranges, flat, values);
            auto bindings = [&] {
                std::vector<std::pair<std::string, std::string>> bs;
                for (std::size_t i = 0; i < ranges.size(); ++i)
                    bs.emplace_back(ranges[i].name, values[i].str());
                return bs;
            };
            try {
                ItemResult item = fn(values, opts.verbose);
                if (item.status == ItemStatus::skip) {
                    ++out.skipped;
                    continue;
                }
                ++out.checked;
                if (item.status == ItemStatus::fail) {
                    ++out.counterexample_count;
                    if (out.counterexamples.size() < opts.counterexample_cap)
                        out.counterexamples.push_back({bindings(), item.lhs, item.rhs});
                }
                if (opts.verbose)
                    out.verbose_rows.push_back(
                        {bindings(), item.lhs, item.rhs, item.status == ItemStatus::hold});
            } catch (const UndecidedError& e) {
                ++out.checked;
                ++out.undecided_count;
                if (out.error_samples.size() < opts.error_sample_cap)
                    out.error_samples.push_back(report_detail::binding_str(bindings()) + ": " +
                                                e.what());
            } catch (const std::exception& e) {
                ++out.checked;
                ++out.error_count;
                if (out.error_samples.size() < opts.error_sample_cap)
                    out.error_samples.push_back(report_detail::binding_str(bindings()) + ": " +
                                                e.what());
            }
        }
    };

    if (nchunks <= 1) {
        if (nchunks == 1) run_chunk(0, 0, lay.total);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t base = lay.total / nchunks, extra = lay.total % nchunks;
        std::uint64_t begin = 0;
        for (std::uint64_t c = 0; c < nchunks; ++c) {
            std::uint64_t end = begin + base + (c < extra ? 1 : 0);
            pool.emplace_back([&, c, begin, end] {
                try {
                    run_chunk(c, begin, end);
                } catch (...) {
                    crashed[c] = std::current_exception();
                }
            });
            begin = end;
        }
        for (auto& t : pool) t.join();
        for (auto& e : crashed)
            if (e) std::rethrow_exception(e);
    }

    SweepOutcome merged;
    for (auto& p : partial) {
        merged.checked += p.checked;
        merged.skipped += p.skipped;
        merged.counterexample_count += p.counterexample_count;
        merged.error_count += p.error_count;
        merged.undecided_count += p.undecided_count;
        for (auto& ce : p.counterexamples)
            if (merged.counterexamples.size() < opts.counterexample_cap)
                merged.counterexamples.push_back(std::move(ce));
        for (auto& es : p.error_samples)
            if (merged.error_samples.size() < opts.error_sample_cap)
                merged.error_samples.push_back(std::move(es));
        for (auto& vr : p.verbose_rows) merged.verbose_rows.push_back(std::move(vr));
    }
    return merged;
}

}  // namespace floorforge
