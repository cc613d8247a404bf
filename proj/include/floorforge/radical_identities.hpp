#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "floorforge/errors.hpp"
#include "floorforge/numeric.hpp"
#include "floorforge/radical.hpp"

namespace floorforge {

// floor(sqrt(n) + sqrt(n+1)) = floor(sqrt(4n+2)).
inline bool check_eq3(const BigInt& n, const RefineOptions& opts = {}) {
    if (n < 1) throw PreconditionError("check_eq3: n must be >= 1");
    RadicalSum lhs = RadicalSum::root(n, 2) + RadicalSum::root(n + 1, 2);
    return floor_radical_sum(lhs, opts) == ikrt(4 * n + 2, 2);
}

// Exception candidate floor((3/2)^k) = 3^k >> k, the only n at which the
// degree-k comparison below can fail.
inline BigInt theorem3_candidate(unsigned k) {
    if (k < 2) throw DomainError("theorem3_candidate: k must be >= 2");
    BigInt p3 = pow(BigInt(3), k);
    return p3 >> k;
}

// One grid point of floor(n^(1/k) + (n+1)^(1/k)) = floor(2*(n+1/2)^(1/k)).
// The right side is evaluated as floor((2^k*n + 2^(k-1))^(1/k)), the exact
// integer-radicand form of 2*(n+1/2)^(1/k).
struct Theorem3Result {
    BigInt n;
    unsigned k = 2;
    BigInt lhs_floor;
    BigInt rhs_floor;
    bool holds = false;
    bool is_candidate = false;  // n = floor((3/2)^k)
    bool below_bound = false;   // n < 2^(k-3), exact dyadic comparison
};

inline Theorem3Result check_theorem3(const BigInt& n, unsigned k, const RefineOptions& opts = {}) {
    if (n < 1) throw PreconditionError("check_theorem3: n must be >= 1");
    if (k < 2) throw PreconditionError("check_theorem3: k must be >= 2");
    Theorem3Result res;
    res.n = n;
    res.k = k;
    RadicalSum lhs = RadicalSum::root(n, k) + RadicalSum::root(n + 1, k);
    res.lhs_floor = floor_radical_sum(lhs, opts);
    res.rhs_floor = ikrt((BigInt(n) << k) + (BigInt(1) << (k - 1)), k);
    res.holds = res.lhs_floor == res.rhs_floor;
    res.is_candidate = n == theorem3_candidate(k);
    res.below_bound = Rational(n) < pow2_rational(static_cast<long>(k) - 3);
    return res;
}

// floor((2^k*n + 2^(k-1) - 1)^(1/k)) = floor((2^k*n + 2^(k-1))^(1/k)).
// Equivalently: 2^k*n + 2^(k-1) is never a perfect k-th power (its 2-adic
// valuation is k-1), so no integer k-th power separates the two radicands.
inline bool lemma10_check(const BigInt& n, unsigned k) {
    if (n < 1 || k < 2) throw PreconditionError("lemma10_check: needs n >= 1, k >= 2");
    BigInt upper = (BigInt(n) << k) + (BigInt(1) << (k - 1));
    bool floors_equal = ikrt(upper - 1, k) == ikrt(upper, k);
    return floors_equal && !is_perfect_kth_power(upper, k);
}

// The strict sandwich around n^(1/k) + (n+1)^(1/k):
//   lemma11: n >= 2^(k-3)  implies  (2^k*n + 2^(k-1) - 1)^(1/k) < n^(1/k) + (n+1)^(1/k)
//   lemma12: n^(1/k) + (n+1)^(1/k) < (2^k*n + 2^(k-1))^(1/k)
// Both strict inequalities are decided by the exact sign of the difference.
struct LemmaPair {
    bool lemma11 = false;
    bool lemma12 = false;
};

inline LemmaPair lemma11_12_check(const BigInt& n, unsigned k, const RefineOptions& opts = {}) {
    if (n < 1 || k < 2) throw PreconditionError("lemma11_12_check: needs n >= 1, k >= 2");
    BigInt upper = (BigInt(n) << k) + (BigInt(1) << (k - 1));
    RadicalSum mid = RadicalSum::root(n, k) + RadicalSum::root(n + 1, k);
    LemmaPair out;
    if (Rational(n) >= pow2_rational(static_cast<long>(k) - 3))
        out.lemma11 = sign_radical_sum(mid - RadicalSum::root(upper - 1, k), opts) > 0;
    else
        out.lemma11 = true;  // vacuous below the bound
    out.lemma12 = sign_radical_sum(RadicalSum::root(upper, k) - mid, opts) > 0;
    return out;
}

// Exact margin data for an exception candidate: how far 2*(3/2)^k sits from
// the odd integer 2n+1, versus the shrinking admissibility bound
// 1/(4*(3/2)^k). A genuine exception would need gap < bound.
struct MahlerMargin {
    unsigned k = 2;
    BigInt n;
    Rational gap;
    Rational bound;
    bool satisfies_eq6 = false;
};

inline MahlerMargin mahler_margin(unsigned k) {
    if (k < 2) throw DomainError("mahler_margin: k must be >= 2");
    MahlerMargin m;
    m.k = k;
    m.n = theorem3_candidate(k);
    Rational three_halves_k = make_rational(pow(BigInt(3), k), BigInt(1) << k);
    BigInt odd = 2 * m.n + 1;
    m.gap = abs(2 * three_halves_k - Rational(odd));
    m.bound = Rational(1) / (4 * three_halves_k);
    m.satisfies_eq6 = m.gap < m.bound;
    return m;
}

// Grid sweep of check_theorem3 over k in [k_lo, k_hi] and n in [n_lo, n_hi]
// (the n range may be empty for a candidate-only sweep). Retains failures
// and candidate rows only. When include_candidates is set, the candidate n
// of every k in range is checked even if it lies outside the n range. The
// grid is split into disjoint chunks (one per worker) and merged back in
// (k, n) order, so results do not depend on the worker count.
inline std::vector<Theorem3Result> scan_theorem3(unsigned k_lo, unsigned k_hi,
                                                 const BigInt& n_lo, const BigInt& n_hi,
                                                 bool include_candidates, unsigned workers = 1,
                                                 const RefineOptions& opts = {}) {
    if (k_lo < 2 || k_hi < k_lo) throw DomainError("scan_theorem3: bad k range");
    if (workers < 1) workers = 1;

    const std::uint64_t n_count =
        n_lo <= n_hi ? (n_hi - n_lo + 1).convert_to<std::uint64_t>() : 0;
    const std::uint64_t total = (static_cast<std::uint64_t>(k_hi) - k_lo + 1) * n_count;

    auto eval_flat = [&](std::uint64_t flat) {
        unsigned k = k_lo + static_cast<unsigned>(flat / n_count);
        BigInt n = n_lo + flat % n_count;
        return check_theorem3(n, k, opts);
    };

    std::vector<Theorem3Result> retained;
    if (total > 0) {
        const std::uint64_t nchunks = std::min<std::uint64_t>(workers, total);
        std::vector<std::vector<Theorem3Result>> partial(nchunks);
        std::vector<std::thread> pool;
        const std::uint64_t base = total / nchunks, extra = total % nchunks;
        std::uint64_t begin = 0;
        for (std::uint64_t c = 0; c < nchunks; ++c) {
            std::uint64_t end = begin + base + (c < extra ? 1 : 0);
            pool.emplace_back([&, c, begin, end] {
                for (std::uint64_t flat = begin; flat < end; ++flat) {
                    Theorem3Result r = eval_flat(flat);
                    if (!r.holds || r.is_candidate) partial[c].push_back(std::move(r));
                }
            });
            begin = end;
        }
        for (auto& t : pool) t.join();
        for (auto& p : partial)
            retained.insert(retained.end(), std::make_move_iterator(p.begin()),
                            std::make_move_iterator(p.end()));
    }
    if (include_candidates) {
        for (unsigned k = k_lo; k <= k_hi; ++k) {
            BigInt cand = theorem3_candidate(k);
            if (n_count > 0 && cand >= n_lo && cand <= n_hi) continue;  // already in the grid
            retained.push_back(check_theorem3(cand, k, opts));
        }
        std::sort(retained.begin(), retained.end(), [](const auto& a, const auto& b) {
            if (a.k != b.k) return a.k < b.k;
            return a.n < b.n;
        });
    }
    return retained;
}

// Smallest prime p with p | l, p^k not | l, and p not | sum(xs); the
// hypothesis that keeps the combined radicand free of k-th powers. Found by
// trial division of l.
inline std::optional<BigInt> theorem4_witness(const BigInt& l, unsigned k,
                                              const std::vector<BigInt>& xs) {
    if (l < 1) throw DomainError("theorem4_witness: l must be >= 1");
    BigInt sum = 0;
    for (const auto& x : xs) sum += x;
    BigInt rest = l;
    auto is_witness = [&](const BigInt& p) {
        return l % pow(p, k) != 0 && sum % p != 0;
    };
    for (BigInt p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        if (is_witness(p)) return p;
        while (rest % p == 0) rest /= p;
    }
    if (rest > 1 && is_witness(rest)) return rest;
    return std::nullopt;
}

struct Theorem4Instance {
    BigInt l;
    unsigned k = 1;
    std::vector<BigInt> xs;
    std::optional<BigInt> witness;
    Rational bound_n;  // l^(k-1) * sum(x_i^2) / 2
};

inline Theorem4Instance make_theorem4_instance(const BigInt& l, unsigned k,
                                               std::vector<BigInt> xs) {
    if (l < 1) throw DomainError("theorem4 instance: l must be >= 1");
    if (k < 1) throw DomainError("theorem4 instance: k must be >= 1");
    if (xs.empty() || BigInt(xs.size()) != l)
        throw DomainError("theorem4 instance: need exactly l offsets");
    Theorem4Instance inst;
    inst.l = l;
    inst.k = k;
    inst.witness = theorem4_witness(l, k, xs);
    BigInt sq = 0;
    for (const auto& x : xs) sq += x * x;
    BigInt scaled_sq = pow(l, k - 1) * sq;
    inst.bound_n = Rational(scaled_sq, BigInt(2));
    inst.xs = std::move(xs);
    return inst;
}

struct Theorem4Options {
    bool unchecked = false;
    RefineOptions refine;
};

// Full evaluation record for one (n, l, k, xs) instance of
//   floor(sum_i (n+x_i)^(1/k)) = floor(l * (n + mean(xs))^(1/k)),
// with the right side in its integer-radicand form
// (l^(k-1) * (l*n + sum(xs)))^(1/k).
struct Theorem4Evaluation {
    Theorem4Instance instance;
    BigInt n;
    BigInt lhs_floor;
    BigInt rhs_floor;
    bool holds = false;
    bool within_hypotheses = false;  // witness present and n >= bound_n
};

inline Theorem4Evaluation evaluate_theorem4(const BigInt& n, const BigInt& l, unsigned k,
                                            const std::vector<BigInt>& xs,
                                            const Theorem4Options& opts = {}) {
    Theorem4Evaluation ev;
    ev.instance = make_theorem4_instance(l, k, xs);
    ev.n = n;
    BigInt sum = 0;
    for (const auto& x : xs) {
        if (n + x < 0) throw DomainError("theorem4: requires n + x_i >= 0 for every offset");
        sum += x;
    }
    ev.within_hypotheses = ev.instance.witness.has_value() && Rational(n) >= ev.instance.bound_n;
    if (!ev.within_hypotheses && !opts.unchecked) {
        if (!ev.instance.witness)
            throw PreconditionError(
                "theorem4: no prime p with p | l, p^k not | l, p not | sum(xs)");
        throw PreconditionError("theorem4: n below the bound l^(k-1)*sum(x^2)/2");
    }
    RadicalSum lhs;
    for (const auto& x : xs) lhs += RadicalSum::root(n + x, k);
    ev.lhs_floor = floor_radical_sum(lhs, opts.refine);
    BigInt combined = pow(l, k - 1) * (l * n + sum);
    ev.rhs_floor = ikrt(combined, k);
    if (ev.instance.witness && is_perfect_kth_power(combined, k))
        throw std::logic_error("theorem4: combined radicand is a k-th power despite witness");
    ev.holds = ev.lhs_floor == ev.rhs_floor;
    return ev;
}

inline bool check_theorem4(const BigInt& n, const BigInt& l, unsigned k,
                           const std::vector<BigInt>& xs, const Theorem4Options& opts = {}) {
    return evaluate_theorem4(n, l, k, xs, opts).holds;
}

// Independent verification of the four proof-step facts on one instance:
//   jensen:        sum_i (n+x_i)^(1/k) <= l * (n + mean)^(1/k)
//   am_gm:         sum_i (n+x_i)^(1/k) >= l * (prod_i (n+x_i))^(1/(l*k))
//   log_bound:     for n >= bound, l * (prod)^(1/(l*k)) >= l * (n + mean - 1/l^k)^(1/k)
//   never_integer: l^(k-1) * (l*n + sum(xs)) is not a perfect k-th power
struct Theorem4StepChecks {
    bool jensen = false;
    bool am_gm = false;
    bool log_bound = false;
    bool never_integer = false;

    bool all() const { return jensen && am_gm && log_bound && never_integer; }
};

inline Theorem4StepChecks theorem4_step_checks(const BigInt& n, const BigInt& l, unsigned k,
                                               const std::vector<BigInt>& xs,
                                               const Theorem4Options& opts = {}) {
    Theorem4Instance inst = make_theorem4_instance(l, k, xs);
    BigInt sum = 0;
    BigInt prod = 1;
    for (const auto& x : xs) {
        if (n + x < 0) throw DomainError("theorem4: requires n + x_i >= 0 for every offset");
        sum += x;
        prod *= n + x;
    }
    const bool within = inst.witness.has_value() && Rational(n) >= inst.bound_n;
    if (!within && !opts.unchecked)
        throw PreconditionError("theorem4 step checks: instance outside the hypotheses");

    RadicalSum lhs;
    for (const auto& x : xs) lhs += RadicalSum::root(n + x, k);
    const Rational mean = Rational(l * n + sum, l);
    RadicalSum jensen_rhs(std::vector<RadicalTerm>{normalize_radical(Rational(l), mean, k)});
    if (l > 4096) throw DomainError("theorem4 step checks: l too large for a degree-l*k radical");
    const unsigned lk = l.convert_to<unsigned>() * k;
    RadicalSum gm = RadicalSum::root(prod, lk) * Rational(l);

    Theorem4StepChecks steps;
    steps.jensen = sign_radical_sum(jensen_rhs - lhs, opts.refine) >= 0;
    steps.am_gm = sign_radical_sum(lhs - gm, opts.refine) >= 0;
    if (Rational(n) >= inst.bound_n) {
        BigInt lk_pow = pow(l, k);
        Rational shifted = mean - Rational(1, 1) / Rational(lk_pow);
        RadicalSum log_rhs(
            std::vector<RadicalTerm>{normalize_radical(Rational(l), shifted, k)});
        steps.log_bound = sign_radical_sum(gm - log_rhs, opts.refine) >= 0;
    } else {
        steps.log_bound = true;  // the step only claims anything for n >= bound
    }
    BigInt combined = pow(l, k - 1) * (l * n + sum);
    steps.never_integer = !is_perfect_kth_power(combined, k);
    return steps;
}

}  // namespace floorforge
