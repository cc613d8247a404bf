#pragma once

#include <cstdint>
#include <vector>

#include "floorforge/errors.hpp"
#include "floorforge/numeric.hpp"

namespace floorforge {

// Hermite's identity: sum_{i=0}^{b-1} floor(t + i/b) = floor(b*t).
inline bool check_hermite(const Rational& t, std::int64_t b) {
    if (b < 1) throw PreconditionError("check_hermite: b must be >= 1");
    BigInt lhs = 0;
    for (std::int64_t i = 0; i < b; ++i) lhs += floor_rat(t + Rational(i, b));
    return lhs == floor_rat(t * b);
}

// floor(x/a) = sum_{i=0}^{b-1} floor((x + i*a) / (a*b)), any a != 0, b > 0.
inline bool check_prop1(const Rational& x, std::int64_t a, std::int64_t b) {
    if (a == 0) throw DomainError("check_prop1: a must be nonzero");
    if (b < 1) throw PreconditionError("check_prop1: b must be >= 1");
    BigInt rhs = 0;
    const Rational ab = Rational(a) * b;
    for (std::int64_t i = 0; i < b; ++i) rhs += floor_rat((x + Rational(i) * a) / ab);
    return floor_rat(x / a) == rhs;
}

// floor(n/3) + floor((n+2)/6) + floor((n+4)/6) = floor(n/2) + floor((n+3)/6).
inline bool check_eq1(const BigInt& n) {
    if (n < 1) throw PreconditionError("check_eq1: n must be >= 1");
    BigInt lhs = floor_div(n, 3) + floor_div(n + 2, 6) + floor_div(n + 4, 6);
    BigInt rhs = floor_div(n, 2) + floor_div(n + 3, 6);
    return lhs == rhs;
}

namespace detail {

// Shared driver for the doubly-infinite floor series
//   sum_{j>=0} sum_{i=1}^{n-1} floor(x/n^(j+1) + i/n).
// Each level-j inner sum telescopes to floor(x/n^j) - floor(x/n^(j+1)), so
// the tail becomes constant once floor(x/n^J) reaches 0 (x >= 0) or -1
// (x < 0); evaluation stops at the first J where two consecutive tails sit
// at that limit.
template <typename PerLevel>
void corollary5_walk(const Rational& x, std::int64_t n, PerLevel per_level) {
    if (n < 2) throw PreconditionError("corollary5: n must be >= 2");
    const BigInt limit = x >= 0 ? 0 : -1;
    BigInt npow = 1;  // n^j
    BigInt fj = floor_rat(x);
    for (;;) {
        BigInt npow_next = npow * n;
        BigInt inner = 0;
        const Rational base = x / npow_next;
        for (std::int64_t i = 1; i < n; ++i) inner += floor_rat(base + Rational(i, n));
        BigInt fj1 = floor_rat(base);
        per_level(inner);
        if (fj == limit && fj1 == limit) return;
        fj = std::move(fj1);
        npow = std::move(npow_next);
    }
}

}  // namespace detail

// Exact value of the series above: floor(x) for x >= 0, floor(x)+1 for x < 0.
inline BigInt corollary5_value(const Rational& x, std::int64_t n) {
    BigInt total = 0;
    detail::corollary5_walk(x, n, [&](const BigInt& inner) { total += inner; });
    return total;
}

// Diagnostic variant: the per-level inner sums, in evaluation order.
inline std::vector<BigInt> corollary5_levels(const Rational& x, std::int64_t n) {
    std::vector<BigInt> levels;
    detail::corollary5_walk(x, n, [&](const BigInt& inner) { levels.push_back(inner); });
    return levels;
}

// Specialization n = 2 at integer x = m: sum_k floor((m + 2^k) / 2^(k+1)),
// which evaluates to m for every natural m.
inline BigInt corollary6_value(const BigInt& m) {
    if (m < 1) throw PreconditionError("corollary6: m must be >= 1");
    return corollary5_value(Rational(m), 2);
}

}  // namespace floorforge
