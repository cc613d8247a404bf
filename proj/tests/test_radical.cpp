#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "floorforge/radical.hpp"
#include "support/mpfr_oracle.hpp"
#include "support/random_values.hpp"

using namespace floorforge;

namespace {

RadicalSum random_sum(std::mt19937_64& rng, int max_terms = 4) {
    std::vector<RadicalTerm> terms;
    int nterms = static_cast<int>(fftest::random_int(rng, 1, max_terms));
    for (int i = 0; i < nterms; ++i) {
        Rational coeff(fftest::random_int(rng, -20, 20), fftest::random_int(rng, 1, 9));
        if (coeff == 0) coeff = 1;
        BigInt radicand = fftest::random_int(rng, 0, 1000000);
        unsigned degree = static_cast<unsigned>(fftest::random_int(rng, 1, 5));
        terms.push_back({coeff, radicand, degree});
    }
    return RadicalSum(std::move(terms));
}

}  // namespace

TEST_CASE("normalize_radical produces integer radicands, value preserved") {
    // 2 * (7/2)^(1/2) = 14^(1/2)
    RadicalTerm t = normalize_radical(Rational(2), Rational(7, 2), 2);
    CHECK(t.coeff == 1);
    CHECK(t.radicand == 14);
    CHECK(t.degree == 2);

    // (4/9)^(1/2): scaled form (1/9)*36^(1/2), exact value 2/3
    t = normalize_radical(Rational(1), Rational(4, 9), 2);
    CHECK(t.coeff == Rational(1, 9));
    CHECK(t.radicand == 36);
    CHECK(radical_rationality(t).value() == Rational(2, 3));

    // degree 1 is the rational embedding c*r
    t = normalize_radical(Rational(5, 3), Rational(7), 1);
    CHECK(t.degree == 1);
    CHECK(t.radicand == 1);
    CHECK(t.coeff == Rational(35, 3));

    CHECK_THROWS_AS(normalize_radical(Rational(1), Rational(-1, 4), 2), DomainError);
    CHECK_THROWS_AS(normalize_radical(Rational(1), Rational(1, 4), 0), DomainError);
}

TEST_CASE("normalize_radical value preservation under k-th powers") {
    // coeff^k * (p/q) must equal new_coeff^k * new_radicand exactly.
    std::mt19937_64 rng(0x5eed0101);
    for (int i = 0; i < 500; ++i) {
        Rational coeff = fftest::random_rational(rng, 50, 20);
        Rational radicand(fftest::random_int(rng, 0, 100000), fftest::random_int(rng, 1, 1000));
        unsigned k = static_cast<unsigned>(fftest::random_int(rng, 1, 6));
        RadicalTerm t = normalize_radical(coeff, radicand, k);
        Rational before = make_rational(pow(numerator(coeff), k), pow(denominator(coeff), k));
        before *= radicand;
        Rational after = make_rational(pow(numerator(t.coeff), k), pow(denominator(t.coeff), k));
        after *= Rational(t.radicand);
        CHECK(before == after);
    }
}

TEST_CASE("radical_rationality recognizes exact roots") {
    CHECK(radical_rationality({Rational(1), BigInt(8), 3}).value() == 2);
    CHECK_FALSE(radical_rationality({Rational(1), BigInt(2), 2}).has_value());
    CHECK(radical_rationality({Rational(3, 2), BigInt(16), 4}).value() == 3);
    CHECK(radical_rationality({Rational(7, 5), BigInt(1), 1}).value() == Rational(7, 5));
}

TEST_CASE("RadicalSum keeps a canonical term list") {
    RadicalSum s = RadicalSum::root(2, 2) + RadicalSum::root(2, 2);
    REQUIRE(s.terms().size() == 1);
    CHECK(s.terms()[0].coeff == 2);

    CHECK((RadicalSum::root(2, 2) - RadicalSum::root(2, 2)).is_zero());

    // mixed degrees sort by (degree, radicand); rationals collapse into one slot
    RadicalSum mixed = RadicalSum::root(5, 3) + RadicalSum(Rational(1, 2)) +
                       RadicalSum::root(3, 2) + RadicalSum(Rational(2));
    REQUIRE(mixed.terms().size() == 3);
    CHECK(mixed.terms()[0].degree == 1);
    CHECK(mixed.terms()[0].coeff == Rational(5, 2));
    CHECK(mixed.terms()[1].degree == 2);
    CHECK(mixed.terms()[2].degree == 3);

    // radicand 0 and radicand 1 terms have rational values
    RadicalSum folded(std::vector<RadicalTerm>{{Rational(3), BigInt(0), 4},
                                               {Rational(5), BigInt(1), 7}});
    REQUIRE(folded.terms().size() == 1);
    CHECK(folded.terms()[0].degree == 1);
    CHECK(folded.terms()[0].coeff == 5);

    CHECK_THROWS_AS(RadicalSum(std::vector<RadicalTerm>{{Rational(1), BigInt(-2), 2}}),
                    DomainError);
}

TEST_CASE("bound_radical_sum encloses the value") {
    RadicalSum s = RadicalSum::root(2, 2) + RadicalSum::root(3, 2);
    DyadicInterval iv = bound_radical_sum(s, 8);
    CHECK(iv.width() <= pow2_rational(-7));
    fftest::MpfrEnclosure oracle(s, 256);
    CHECK(oracle.within(iv.low, iv.high));  // sqrt(2)+sqrt(3) = 3.1462...

    DyadicInterval exact = bound_radical_sum(RadicalSum(Rational(2)), 8);
    CHECK(exact.low == 2);
    CHECK(exact.high == 2);

    // 2*(n+1/2)^(1/2) at n=1 encloses sqrt(6) ~ 2.449
    RadicalSum scaled(std::vector<RadicalTerm>{normalize_radical(Rational(2), Rational(3, 2), 2)});
    DyadicInterval iv6 = bound_radical_sum(scaled, 16);
    fftest::MpfrEnclosure oracle6(scaled, 256);
    CHECK(oracle6.within(iv6.low, iv6.high));
    CHECK(iv6.low <= Rational(244949, 100000));
    CHECK(Rational(244948, 100000) <= iv6.high);

    CHECK_THROWS_AS(bound_radical_sum(s, 0), DomainError);
}

TEST_CASE("bound_radical_sum nests as precision grows") {
    std::mt19937_64 rng(0x5eed0102);
    for (int i = 0; i < 200; ++i) {
        RadicalSum s = random_sum(rng);
        unsigned f = static_cast<unsigned>(fftest::random_int(rng, 1, 48));
        DyadicInterval coarse = bound_radical_sum(s, f);
        DyadicInterval fine = bound_radical_sum(s, f + 1);
        CHECK(coarse.low <= fine.low);
        CHECK(fine.high <= coarse.high);
        CHECK(fine.low <= fine.high);
    }
}

TEST_CASE("floor_radical_sum on rational and irrational sums") {
    CHECK(floor_radical_sum(RadicalSum::root(2, 2) + RadicalSum::root(3, 2)) == 3);
    CHECK(floor_radical_sum(RadicalSum::root(8, 3) + RadicalSum::root(27, 3)) == 5);
    CHECK(floor_radical_sum(RadicalSum()) == 0);
    CHECK(floor_radical_sum(RadicalSum(Rational(-7, 2))) == -4);

    // single radical at n=1: sqrt(1) + sqrt(2) and sqrt(6)
    CHECK(floor_radical_sum(RadicalSum::root(1, 2) + RadicalSum::root(2, 2)) == 2);
    CHECK(floor_radical_sum(RadicalSum::root(6, 2)) == 2);

    // negative coefficients
    CHECK(floor_radical_sum(RadicalSum(Rational(1)) - RadicalSum::root(2, 2)) == -1);
}

TEST_CASE("floor_radical_sum of a unit-coefficient term equals ikrt") {
    std::mt19937_64 rng(0x5eed0103);
    for (int i = 0; i < 300; ++i) {
        BigInt radicand = fftest::random_bigint(rng, 96);
        unsigned degree = static_cast<unsigned>(fftest::random_int(rng, 2, 7));
        CHECK(floor_radical_sum(RadicalSum::root(radicand, degree)) == ikrt(radicand, degree));
    }
}

TEST_CASE("floor_radical_sum agrees with the floating enclosure oracle") {
    std::mt19937_64 rng(0x5eed0104);
    int decisive = 0;
    for (int i = 0; i < 200; ++i) {
        RadicalSum s = random_sum(rng);
        fftest::MpfrEnclosure oracle(s, 512);
        if (auto expected = oracle.decisive_floor()) {
            ++decisive;
            CHECK(floor_radical_sum(s) == *expected);
        }
    }
    CHECK(decisive > 150);  // the oracle should almost always be decisive
}

TEST_CASE("rationally dependent radicals end as undecided, not wrong") {
    // sqrt(8) - 2*sqrt(2) is exactly 0 but the terms do not merge, so no
    // enclosure can ever separate the floor; the precision cap reports it.
    RadicalSum zero = RadicalSum::root(8, 2) - Rational(2) * RadicalSum::root(2, 2);
    RefineOptions tight{.start_bits = 8, .cap_bits = 64};
    CHECK_THROWS_AS(floor_radical_sum(zero, tight), UndecidedError);
    try {
        floor_radical_sum(zero, tight);
    } catch (const UndecidedError& e) {
        CHECK(e.last_interval().frac_bits == 64);
        CHECK(e.last_interval().low <= 0);
        CHECK(0 <= e.last_interval().high);
    }
}

TEST_CASE("sign_radical_sum separates values from zero") {
    CHECK(sign_radical_sum(RadicalSum::root(2, 2) - Rational(1)) == 1);
    CHECK(sign_radical_sum(RadicalSum(Rational(3, 2)) - RadicalSum::root(3, 2)) == -1);
    CHECK(sign_radical_sum(RadicalSum::root(2, 2) - RadicalSum::root(2, 2)) == 0);
    CHECK(sign_radical_sum(RadicalSum()) == 0);
    CHECK(sign_radical_sum(RadicalSum::root(9, 2) - Rational(3)) == 0);  // exact root path

    // tiny but nonzero: sqrt(1000001) - sqrt(1000000) > 0
    CHECK(sign_radical_sum(RadicalSum::root(1000001, 2) - RadicalSum::root(1000000, 2)) == 1);
}
