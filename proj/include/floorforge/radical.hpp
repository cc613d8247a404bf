#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floorforge/errors.hpp"
#include "floorforge/numeric.hpp"

namespace floorforge {

// One summand coeff * radicand^(1/degree) with rational coefficient,
// integer radicand >= 0 and integer degree >= 1. Terms of degree 1 are the
// rational embedding and always carry radicand 1, so equal values share a
// representation and like terms merge.
struct RadicalTerm {
    Rational coeff;
    BigInt radicand;
    unsigned degree = 1;

    friend bool operator==(const RadicalTerm&, const RadicalTerm&) = default;
};

// Rewrites coeff * (p/q)^(1/k) with an integer radicand:
//   coeff * (p/q)^(1/k) = (coeff/q) * (p * q^(k-1))^(1/k).
// Degree-1 input folds straight into the rational embedding.
inline RadicalTerm normalize_radical(const Rational& coeff, const Rational& radicand,
                                     unsigned degree) {
    if (degree < 1) throw DomainError("normalize_radical: degree must be >= 1");
    if (radicand < 0) throw DomainError("normalize_radical: negative radicand");
    const BigInt& p = numerator(radicand);
    const BigInt& q = denominator(radicand);
    if (degree == 1) return {coeff * radicand, BigInt(1), 1};
    if (p == 0) return {Rational(0), BigInt(1), 1};
    BigInt scaled = p * pow(q, degree - 1);
    if (scaled == 1) return {coeff / Rational(q), BigInt(1), 1};
    return {coeff / Rational(q), std::move(scaled), degree};
}

// Exact rational value of a term, when it has one: degree-1 terms always,
// otherwise iff the radicand is a perfect degree-th power.
inline std::optional<Rational> radical_rationality(const RadicalTerm& t) {
    if (t.degree == 1) return t.coeff * Rational(t.radicand);
    if (auto r = is_perfect_kth_power(t.radicand, t.degree)) return t.coeff * Rational(*r);
    return std::nullopt;
}

// Finite formal sum of radical terms, kept canonical: terms sorted by
// (degree, radicand), like terms merged, zero coefficients and radicand-0
// terms removed, radicand-1 terms folded into the degree-1 slot.
class RadicalSum {
public:
    RadicalSum() = default;
    RadicalSum(const Rational& value) {
        if (value != 0) terms_.push_back({value, BigInt(1), 1});
    }
    RadicalSum(const BigInt& value) : RadicalSum(Rational(value)) {}
    explicit RadicalSum(std::vector<RadicalTerm> terms) : terms_(std::move(terms)) {
        for (const auto& t : terms_) {
            if (t.degree < 1) throw DomainError("RadicalSum: degree must be >= 1");
            if (t.radicand < 0) throw DomainError("RadicalSum: negative radicand");
        }
        canonicalize();
    }

    // radicand^(1/degree) with coefficient 1.
    static RadicalSum root(const BigInt& radicand, unsigned degree) {
        if (radicand < 0) throw DomainError("RadicalSum::root: negative radicand");
        return RadicalSum(std::vector<RadicalTerm>{{Rational(1), radicand, degree}});
    }

    const std::vector<RadicalTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    RadicalSum& operator+=(const RadicalSum& other) {
        terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
        canonicalize();
        return *this;
    }
    RadicalSum& operator-=(const RadicalSum& other) { return *this += -other; }
    RadicalSum& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_) t.coeff *= s;
        return *this;
    }
    RadicalSum& operator/=(const Rational& s) {
        if (s == 0) throw DomainError("RadicalSum: division by zero");
        return *this *= Rational(denominator(s), 1) / numerator(s);
    }

    friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
    friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }
    friend RadicalSum operator*(RadicalSum a, const Rational& s) { return a *= s; }
    friend RadicalSum operator*(const Rational& s, RadicalSum a) { return a *= s; }
    friend RadicalSum operator/(RadicalSum a, const Rational& s) { return a /= s; }
    RadicalSum operator-() const {
        RadicalSum r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend bool operator==(const RadicalSum&, const RadicalSum&) = default;

private:
    void canonicalize() {
        for (auto& t : terms_) {
            if (t.radicand == 0) {
                t.coeff = 0;
                t.radicand = 1;
                t.degree = 1;
            } else if (t.degree == 1 && t.radicand != 1) {
                t.coeff *= Rational(t.radicand);
                t.radicand = 1;
            } else if (t.radicand == 1) {
                t.degree = 1;
            }
        }
        std::sort(terms_.begin(), terms_.end(), [](const RadicalTerm& a, const RadicalTerm& b) {
            if (a.degree != b.degree) return a.degree < b.degree;
            return a.radicand < b.radicand;
        });
        std::vector<RadicalTerm> merged;
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().degree == t.degree &&
                merged.back().radicand == t.radicand) {
                merged.back().coeff += t.coeff;
            } else {
                merged.push_back(std::move(t));
            }
        }
        std::erase_if(merged, [](const RadicalTerm& t) { return t.coeff == 0; });
        terms_ = std::move(merged);
    }

    std::vector<RadicalTerm> terms_;
};

// Exact rational value of a whole sum, when every term has one.
inline std::optional<Rational> rational_value(const RadicalSum& s) {
    Rational total = 0;
    for (const auto& t : s.terms()) {
        auto q = radical_rationality(t);
        if (!q) return std::nullopt;
        total += *q;
    }
    return total;
}

// Exact rational enclosure of a sum's real value at a given dyadic
// resolution. Endpoints come from integer root brackets only.
struct DyadicInterval {
    Rational low;
    Rational high;
    unsigned frac_bits = 0;

    Rational width() const { return high - low; }
};

// Interval refinement ran out of precision before becoming decisive.
// Carries the final enclosure.
class UndecidedError : public std::runtime_error {
public:
    UndecidedError(const std::string& what, DyadicInterval last)
        : std::runtime_error(what), last_interval_(std::move(last)) {}

    const DyadicInterval& last_interval() const { return last_interval_; }

private:
    DyadicInterval last_interval_;
};

// Geometric precision schedule for floor/sign decisions: start_bits
// fractional bits, doubling up to cap_bits, then give up as undecided.
struct RefineOptions {
    unsigned start_bits = 64;
    unsigned cap_bits = 16384;
};

// Encloses value(s) with one scaled integer-root bracket per term:
//   ikrt(r * 2^(k*f), k) = floor(r^(1/k) * 2^f)
// gives a per-term width of |coeff| * 2^-f (zero for exact roots and
// rational embeddings). Widths add over terms.
inline DyadicInterval bound_radical_sum(const RadicalSum& s, unsigned frac_bits) {
    if (frac_bits < 1) throw DomainError("bound_radical_sum: frac_bits must be >= 1");
    const BigInt unit = BigInt(1) << frac_bits;
    Rational low = 0, high = 0;
    for (const auto& t : s.terms()) {
        if (t.degree == 1) {
            low += t.coeff;
            high += t.coeff;
            continue;
        }
        const BigInt scaled = t.radicand << (std::size_t{t.degree} * frac_bits);
        BigInt root_lo = ikrt(scaled, t.degree);
        const bool exact = pow(root_lo, t.degree) == scaled;
        Rational lo_val = t.coeff * make_rational(root_lo, unit);
        if (exact) {
            low += lo_val;
            high += lo_val;
            continue;
        }
        Rational hi_val = t.coeff * make_rational(root_lo + 1, unit);
        if (t.coeff >= 0) {
            low += lo_val;
            high += hi_val;
        } else {
            low += hi_val;
            high += lo_val;
        }
    }
    return {std::move(low), std::move(high), frac_bits};
}

namespace detail {

// Splits a sum into its exact rational part and the residual irrational
// terms. A finite sum of k-th roots of positive rationals is rational iff
// every summand is, so after this split a nonempty residual is irrational
// unless distinct surviving radicals are rationally dependent (that case
// ends in UndecidedError at the precision cap rather than a wrong answer).
struct SplitSum {
    Rational rational_part;
    RadicalSum irrational;
};

inline SplitSum split_rational(const RadicalSum& s) {
    SplitSum out;
    std::vector<RadicalTerm> irr;
    for (const auto& t : s.terms()) {
        if (auto q = radical_rationality(t))
            out.rational_part += *q;
        else
            irr.push_back(t);
    }
    out.irrational = RadicalSum(std::move(irr));
    return out;
}

template <typename Decide>
auto refine(const RadicalSum& irrational, const Rational& rational_part,
            const RefineOptions& opts, const char* what, Decide decide) {
    if (opts.start_bits < 1 || opts.cap_bits < opts.start_bits)
        throw DomainError("refine: invalid precision schedule");
    unsigned f = opts.start_bits;
    DyadicInterval iv;
    for (;;) {
        iv = bound_radical_sum(irrational, f);
        iv.low += rational_part;
        iv.high += rational_part;
        if (auto result = decide(iv)) return *result;
        if (f == opts.cap_bits) break;
        f = f <= opts.cap_bits / 2 ? f * 2 : opts.cap_bits;
    }
    throw UndecidedError(what, std::move(iv));
}

}  // namespace detail

// Exact floor of the real value of s. Rational terms are evaluated exactly;
// a surviving irrational residue is refined until both endpoints share a
// floor.
inline BigInt floor_radical_sum(const RadicalSum& s, const RefineOptions& opts = {}) {
    auto split = detail::split_rational(s);
    if (split.irrational.is_zero()) return floor_rat(split.rational_part);
    return detail::refine(split.irrational, split.rational_part, opts,
                          "floor_radical_sum: undecided at precision cap",
                          [](const DyadicInterval& iv) -> std::optional<BigInt> {
                              BigInt lo = floor_rat(iv.low);
                              if (lo == floor_rat(iv.high)) return lo;
                              return std::nullopt;
                          });
}

// Sign of the real value of s: -1, 0, or +1. Zero is decided exactly on
// the rational path; a nonzero irrational value separates from 0 after
// finitely many refinement rounds.
inline int sign_radical_sum(const RadicalSum& s, const RefineOptions& opts = {}) {
    auto split = detail::split_rational(s);
    if (split.irrational.is_zero()) return split.rational_part.sign();
    return detail::refine(split.irrational, split.rational_part, opts,
                          "sign_radical_sum: undecided at precision cap",
                          [](const DyadicInterval& iv) -> std::optional<int> {
                              if (iv.low > 0) return 1;
                              if (iv.high < 0) return -1;
                              return std::nullopt;
                          });
}

}  // namespace floorforge
