#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "floorforge/errors.hpp"

namespace floorforge {

// The universal scalars. BigInt is a canonical signed arbitrary-precision
// integer; Rational keeps gcd(|num|, den) = 1 and den >= 1 at all times.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using boost::multiprecision::abs;
using boost::multiprecision::denominator;
using boost::multiprecision::numerator;
using boost::multiprecision::pow;

inline Rational make_rational(BigInt num, BigInt den) {
    if (den == 0) throw DomainError("make_rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

// Quotient rounded toward -infinity. den must be nonzero.
inline BigInt floor_div(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("floor_div: zero divisor");
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0 && ((r < 0) != (den < 0))) --q;
    return q;
}

// Greatest integer <= q.
inline BigInt floor_rat(const Rational& q) {
    return floor_div(numerator(q), denominator(q));
}

// Least integer >= q.
inline BigInt ceil_rat(const Rational& q) {
    return -floor_rat(-q);
}

// Integer k-th root: the unique r >= 0 with r^k <= n < (r+1)^k.
// Newton iteration on integers, started above the root; the two trailing
// adjustment loops enforce the bracket unconditionally.
inline BigInt ikrt(const BigInt& n, unsigned k) {
    if (k < 1) throw DomainError("ikrt: degree must be >= 1");
    if (n < 0) throw DomainError("ikrt: negative radicand");
    if (k == 1 || n == 0) return n;

    const std::size_t bits = msb(n) + 1;
    BigInt x = BigInt(1) << ((bits + k - 1) / k);  // 2^ceil(bits/k) >= n^(1/k)
    for (;;) {
        BigInt y = ((k - 1) * x + n / pow(x, k - 1)) / k;
        if (y >= x) break;
        x = std::move(y);
    }
    while (pow(x, k) > n) --x;
    while (pow(x + 1, k) <= n) ++x;
    return x;
}

// r with r^k = n, when such an integer exists.
inline std::optional<BigInt> is_perfect_kth_power(const BigInt& n, unsigned k) {
    BigInt r = ikrt(n, k);
    if (pow(r, k) == n) return r;
    return std::nullopt;
}

inline bool is_probable_prime(const BigInt& p) {
    return p >= 2 && boost::multiprecision::miller_rabin_test(p, 25);
}

// Exponent of the highest power of prime p dividing n != 0.
inline std::uint64_t padic_valuation(BigInt n, const BigInt& p) {
    if (n == 0) throw DomainError("padic_valuation: valuation of 0 is infinite");
    if (!is_probable_prime(p)) throw DomainError("padic_valuation: p must be prime");
    std::uint64_t v = 0;
    BigInt q, r;
    for (;;) {
        boost::multiprecision::divide_qr(n, p, q, r);
        if (r != 0) return v;
        n = std::move(q);
        ++v;
    }
}

// 2^e as an exact rational, for any sign of e.
inline Rational pow2_rational(long e) {
    if (e >= 0) return Rational(BigInt(1) << static_cast<unsigned>(e));
    return Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(-e));
}

}  // namespace floorforge
