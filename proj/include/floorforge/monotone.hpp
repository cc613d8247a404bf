#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "floorforge/errors.hpp"
#include "floorforge/numeric.hpp"
#include "floorforge/radical.hpp"

namespace floorforge {

enum class FnKind { polynomial, exponential };
enum class Direction { increasing, decreasing };

// Descriptor of a strictly monotone integer-valued function:
//   polynomial   f(x) = (a*x - b)^k   with a >= 1, b >= 0, k >= 2
//   exponential  f(x) = a^(b*x + c)   with a >= 2, b >= 1, c >= 0
// Monotonicity over the domain is validated at construction. With these
// parameter ranges every valid instance is increasing: even-degree
// polynomials need the domain to start at or after the vertex ceil(b/a),
// odd-degree polynomials and exponentials grow everywhere. A decreasing
// claim is therefore rejected for both kinds.
class MonotoneFnSpec {
public:
    static MonotoneFnSpec polynomial(std::int64_t a, std::int64_t b, unsigned k,
                                     std::optional<BigInt> domain_low = std::nullopt,
                                     Direction dir = Direction::increasing) {
        if (a < 1) throw DomainError("MonotoneFnSpec: polynomial needs a >= 1");
        if (b < 0) throw DomainError("MonotoneFnSpec: polynomial needs b >= 0");
        if (k < 2) throw DomainError("MonotoneFnSpec: polynomial needs k >= 2");
        if (dir == Direction::decreasing)
            throw DomainError("MonotoneFnSpec: (a*x-b)^k with a >= 1 is never decreasing on a lower ray");
        MonotoneFnSpec f;
        f.kind_ = FnKind::polynomial;
        f.a_ = a;
        f.b_ = b;
        f.k_ = k;
        f.direction_ = dir;
        if (k % 2 == 0) {
            BigInt vertex = ceil_rat(Rational(b, a));
            f.domain_low_ = domain_low ? *domain_low : vertex;
            if (*f.domain_low_ < vertex)
                throw DomainError("MonotoneFnSpec: even degree requires domain_low >= ceil(b/a)");
        } else {
            f.domain_low_ = std::move(domain_low);
        }
        return f;
    }

    static MonotoneFnSpec exponential(std::int64_t a, std::int64_t b, std::int64_t c,
                                      std::optional<BigInt> domain_low = std::nullopt,
                                      Direction dir = Direction::increasing) {
        if (a < 2) throw DomainError("MonotoneFnSpec: exponential needs a >= 2");
        if (b < 1) throw DomainError("MonotoneFnSpec: exponential needs b >= 1");
        if (c < 0) throw DomainError("MonotoneFnSpec: exponential needs c >= 0");
        if (dir == Direction::decreasing)
            throw DomainError("MonotoneFnSpec: a^(b*x+c) with a >= 2, b >= 1 is increasing");
        MonotoneFnSpec f;
        f.kind_ = FnKind::exponential;
        f.a_ = a;
        f.b_ = b;
        f.c_ = c;
        f.direction_ = dir;
        f.domain_low_ = domain_low ? std::move(*domain_low) : BigInt(0);
        if (BigInt(b) * *f.domain_low_ + c < 0)
            throw DomainError("MonotoneFnSpec: exponent must be nonnegative on the domain");
        return f;
    }

    FnKind kind() const { return kind_; }
    Direction direction() const { return direction_; }
    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }
    std::int64_t c() const { return c_; }
    unsigned poly_degree() const { return k_; }
    const std::optional<BigInt>& domain_low() const { return domain_low_; }

    bool in_domain(const BigInt& x) const { return !domain_low_ || x >= *domain_low_; }

    BigInt operator()(const BigInt& x) const {
        if (!in_domain(x)) throw DomainError("MonotoneFnSpec: argument below domain");
        if (kind_ == FnKind::polynomial) return pow(BigInt(a_) * x - b_, k_);
        BigInt e = BigInt(b_) * x + c_;
        if (e > 1u << 24) throw DomainError("MonotoneFnSpec: exponent too large");
        return pow(BigInt(a_), e.convert_to<unsigned>());
    }

    // Smallest value f attains over the integer domain, when the domain is
    // bounded below; unbounded only for odd-degree polynomials.
    std::optional<BigInt> min_value() const {
        if (!domain_low_) return std::nullopt;
        return (*this)(*domain_low_);
    }

private:
    MonotoneFnSpec() = default;

    FnKind kind_ = FnKind::polynomial;
    Direction direction_ = Direction::increasing;
    std::int64_t a_ = 1, b_ = 0, c_ = 0;
    unsigned k_ = 2;
    std::optional<BigInt> domain_low_;
};

// Which residues f attains (and misses) modulo `modulus` over its domain.
struct ResidueProfile {
    BigInt modulus;
    std::set<BigInt> attained;
    std::set<BigInt> avoided;
};

namespace detail {

inline BigInt mod_floor(const BigInt& v, const BigInt& m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace detail

// Attained set of { f(x) mod modulus : x in the integer domain }.
// Polynomial kind: one full period of x suffices (the domain is all of Z or
// a lower ray containing a full period). Exponential kind is supported for
// modulus = a^m only: residues are the powers a^(b*x+c) with exponent < m,
// plus 0 once the exponent reaches m.
inline ResidueProfile residue_scan(const MonotoneFnSpec& f, const BigInt& modulus) {
    if (modulus <= 1) throw DomainError("residue_scan: modulus must be > 1");
    ResidueProfile profile;
    profile.modulus = modulus;
    if (f.kind() == FnKind::polynomial) {
        if (modulus > (BigInt(1) << 26))
            throw UnsupportedError("residue_scan: modulus too large to enumerate");
        BigInt x = f.domain_low().value_or(0);
        for (BigInt i = 0; i < modulus; ++i, ++x)
            profile.attained.insert(detail::mod_floor(f(x), modulus));
    } else {
        BigInt acc = f.a();
        std::uint64_t m = 1;
        while (acc < modulus) {
            acc *= f.a();
            ++m;
        }
        if (acc != modulus)
            throw UnsupportedError("residue_scan: exponential kind needs a power of the base as modulus");
        BigInt x = *f.domain_low();
        for (; BigInt(f.b()) * x + f.c() < m; ++x)
            profile.attained.insert(detail::mod_floor(f(x), modulus));
        profile.attained.insert(BigInt(0));
    }
    for (BigInt r = 0; r < modulus; ++r)
        if (!profile.attained.count(r)) profile.avoided.insert(r);
    return profile;
}

// floor(f^-1(v)) computed by integer bracketing and binary search, never by
// real-number inversion. Increasing: the unique c with f(c) <= v < f(c+1).
// Decreasing (the mirrored convention): the unique c with f(c+1) < v <= f(c).
inline BigInt floor_inverse(const MonotoneFnSpec& f, const BigInt& v) {
    const bool incr = f.direction() == Direction::increasing;
    // Establish lo with f(lo) <= v (increasing) resp. f(lo) >= v (decreasing).
    auto fits_low = [&](const BigInt& x) { return incr ? f(x) <= v : f(x) >= v; };
    BigInt lo;
    if (f.domain_low()) {
        lo = *f.domain_low();
        if (!fits_low(lo)) throw DomainError("floor_inverse: value outside the range of f");
    } else {
        lo = 0;
        for (BigInt step = 1; !fits_low(lo); step <<= 1) lo -= step;
    }
    // hi with f(hi) > v (increasing) resp. f(hi) < v (decreasing).
    BigInt hi = lo + 1;
    for (BigInt step = 2; fits_low(hi); step <<= 1) hi = lo + step;
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        (fits_low(mid) ? lo : hi) = std::move(mid);
    }
    return lo;
}

// One run of the equal-floor chain: the evaluated (argument, floor) pairs
// and whether they all agree.
struct ChainCheck {
    BigInt k;
    std::vector<std::pair<BigInt, BigInt>> values;
    bool holds = false;
};

// The avoided-residue chain: if f misses every residue in {a,...,b} modulo
// `modulus`, then floor(f^-1) is constant across the increasing-case window
// [k*modulus + a - 1, k*modulus + b] (decreasing case: [k*modulus + a,
// k*modulus + b + 1]).
inline ChainCheck check_prop2_chain(const MonotoneFnSpec& f, const BigInt& modulus,
                                    const BigInt& a, const BigInt& b, const BigInt& k) {
    if (a > b) throw DomainError("check_prop2_chain: requires a <= b");
    ResidueProfile profile = residue_scan(f, modulus);
    if (b - a + 1 >= modulus)
        throw PreconditionError("check_prop2_chain: window covers every residue class");
    for (BigInt y = a; y <= b; ++y) {
        BigInt r = detail::mod_floor(y, modulus);
        if (profile.attained.count(r))
            throw PreconditionError("check_prop2_chain: residue " + r.str() +
                                    " is attained by f");
    }
    const bool incr = f.direction() == Direction::increasing;
    BigInt v_lo = k * modulus + (incr ? a - 1 : a);
    BigInt v_hi = k * modulus + (incr ? b : b + 1);
    ChainCheck chain;
    chain.k = k;
    for (BigInt v = v_lo; v <= v_hi; ++v) chain.values.emplace_back(v, floor_inverse(f, v));
    chain.holds = std::all_of(chain.values.begin(), chain.values.end(), [&](const auto& p) {
        return p.second == chain.values.front().second;
    });
    return chain;
}

// floor(1/2 + sqrt(n + 1/2)) = floor(1/2 + sqrt(n + 1/4)).
inline bool check_eq2(const BigInt& n, const RefineOptions& opts = {}) {
    if (n < 1) throw PreconditionError("check_eq2: n must be >= 1");
    const Rational half(1, 2);
    RadicalSum lhs = RadicalSum(half) +
                     RadicalSum(std::vector<RadicalTerm>{
                         normalize_radical(Rational(1), Rational(n) + half, 2)});
    RadicalSum rhs = RadicalSum(half) +
                     RadicalSum(std::vector<RadicalTerm>{
                         normalize_radical(Rational(1), Rational(n) + Rational(1, 4), 2)});
    return floor_radical_sum(lhs, opts) == floor_radical_sum(rhs, opts);
}

namespace detail {

// floor((b + radicand^(1/degree)) / a)
inline BigInt floor_shifted_root(std::int64_t b, const BigInt& radicand, unsigned degree,
                                 std::int64_t a, const RefineOptions& opts) {
    RadicalSum s = RadicalSum(Rational(b, a)) + RadicalSum::root(radicand, degree) / Rational(a);
    return floor_radical_sum(s, opts);
}

}  // namespace detail

// floor((b + sqrt(4n+1))/a) = floor((b + sqrt(4n+2))/a) = floor((b + sqrt(4n+3))/a)
// for n >= 2b/a. Below that bound the checker refuses unless `unchecked`.
inline bool check_corollary7(const BigInt& n, std::int64_t a, std::int64_t b,
                             bool unchecked = false, const RefineOptions& opts = {}) {
    if (a < 1 || b < 1) throw DomainError("check_corollary7: a, b must be >= 1");
    if (n < 1) throw DomainError("check_corollary7: n must be >= 1");
    if (!unchecked && n < ceil_rat(Rational(2 * b, a)))
        throw PreconditionError("check_corollary7: requires n >= 2b/a (use unchecked mode to explore)");
    BigInt first = detail::floor_shifted_root(b, 4 * n + 1, 2, a, opts);
    for (int r = 2; r <= 3; ++r)
        if (detail::floor_shifted_root(b, 4 * n + r, 2, a, opts) != first) return false;
    return true;
}

// floor((b + cbrt(9n+r))/a) agrees for r = 1..7.
inline bool check_corollary8(const BigInt& n, std::int64_t a, std::int64_t b,
                             const RefineOptions& opts = {}) {
    if (a < 1 || b < 1) throw DomainError("check_corollary8: a, b must be >= 1");
    if (n < 1) throw DomainError("check_corollary8: n must be >= 1");
    BigInt first = detail::floor_shifted_root(b, 9 * n + 1, 3, a, opts);
    for (int r = 2; r <= 7; ++r)
        if (detail::floor_shifted_root(b, 9 * n + r, 3, a, opts) != first) return false;
    return true;
}

// floor((log_a(a^m*n + v) - c)/b) is constant for v in [a^(m-1), a^m - 1].
// The logarithms are never evaluated as reals: each floor is a
// floor_inverse query against f(x) = a^(b*x + c), whose attained residues
// modulo a^m miss the whole window.
inline bool check_corollary9(const BigInt& n, std::int64_t a, std::int64_t b, std::int64_t c,
                             std::int64_t m) {
    if (a < 2) throw PreconditionError("check_corollary9: requires a >= 2");
    if (m < 2) throw PreconditionError("check_corollary9: requires m >= 2");
    if (b < 1 || c < 0) throw DomainError("check_corollary9: requires b >= 1, c >= 0");
    if (b < m - 1 - c) throw PreconditionError("check_corollary9: requires b >= m - 1 - c");
    if (n < 1) throw DomainError("check_corollary9: n must be >= 1");
    MonotoneFnSpec f = MonotoneFnSpec::exponential(a, b, c);
    BigInt am1 = pow(BigInt(a), static_cast<unsigned>(m - 1));
    BigInt am = am1 * a;
    return check_prop2_chain(f, am, am1 + 1, am - 1, n).holds;
}

}  // namespace floorforge
