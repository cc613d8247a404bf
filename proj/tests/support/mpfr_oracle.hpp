#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <cstdlib>
#include <optional>
#include <string>

#include "floorforge/radical.hpp"

namespace fftest {

// Directed-rounding floating enclosure of a radical sum, fully independent
// of the library's integer-only refinement path. Every term is evaluated
// once rounding down and once rounding up, so the true value lies in
// [low, high] whatever the precision.
class MpfrEnclosure {
public:
    MpfrEnclosure(const floorforge::RadicalSum& s, mpfr_prec_t prec) {
        mpfr_inits2(prec, low_, high_, term_lo_, term_hi_, scratch_, (mpfr_ptr)0);
        mpfr_set_zero(low_, 1);
        mpfr_set_zero(high_, 1);
        mpz_t rad;
        mpz_init(rad);
        mpq_t coeff;
        mpq_init(coeff);
        for (const auto& term : s.terms()) {
            mpz_set_str(rad, term.radicand.str().c_str(), 10);
            mpfr_set_z(term_lo_, rad, MPFR_RNDD);
            mpfr_rootn_ui(term_lo_, term_lo_, term.degree, MPFR_RNDD);
            mpfr_set_z(term_hi_, rad, MPFR_RNDU);
            mpfr_rootn_ui(term_hi_, term_hi_, term.degree, MPFR_RNDU);
            std::string q = floorforge::numerator(term.coeff).str() + "/" +
                            floorforge::denominator(term.coeff).str();
            mpq_set_str(coeff, q.c_str(), 10);
            mpq_canonicalize(coeff);
            if (term.coeff >= 0) {
                mpfr_mul_q(scratch_, term_lo_, coeff, MPFR_RNDD);
                mpfr_add(low_, low_, scratch_, MPFR_RNDD);
                mpfr_mul_q(scratch_, term_hi_, coeff, MPFR_RNDU);
                mpfr_add(high_, high_, scratch_, MPFR_RNDU);
            } else {
                mpfr_mul_q(scratch_, term_hi_, coeff, MPFR_RNDD);
                mpfr_add(low_, low_, scratch_, MPFR_RNDD);
                mpfr_mul_q(scratch_, term_lo_, coeff, MPFR_RNDU);
                mpfr_add(high_, high_, scratch_, MPFR_RNDU);
            }
        }
        mpz_clear(rad);
        mpq_clear(coeff);
    }

    MpfrEnclosure(const MpfrEnclosure&) = delete;
    MpfrEnclosure& operator=(const MpfrEnclosure&) = delete;

    ~MpfrEnclosure() { mpfr_clears(low_, high_, term_lo_, term_hi_, scratch_, (mpfr_ptr)0); }

    // floor of the value, when the enclosure pins it down.
    std::optional<floorforge::BigInt> decisive_floor() const {
        mpz_t flo, fhi;
        mpz_inits(flo, fhi, (mpz_ptr)0);
        mpfr_get_z(flo, low_, MPFR_RNDD);
        mpfr_get_z(fhi, high_, MPFR_RNDD);
        std::optional<floorforge::BigInt> out;
        if (mpz_cmp(flo, fhi) == 0) {
            char* str = mpz_get_str(nullptr, 10, flo);
            out = floorforge::BigInt(str);
            std::free(str);
        }
        mpz_clears(flo, fhi, (mpz_ptr)0);
        return out;
    }

    // True when [lo, hi] (exact rationals) contains this enclosure, hence
    // certainly the true value.
    bool within(const floorforge::Rational& lo, const floorforge::Rational& hi) const {
        mpq_t q;
        mpq_init(q);
        auto set_q = [&](const floorforge::Rational& r) {
            std::string s = floorforge::numerator(r).str() + "/" +
                            floorforge::denominator(r).str();
            mpq_set_str(q, s.c_str(), 10);
            mpq_canonicalize(q);
        };
        set_q(lo);
        bool ok = mpfr_cmp_q(low_, q) >= 0;
        set_q(hi);
        ok = ok && mpfr_cmp_q(high_, q) <= 0;
        mpq_clear(q);
        return ok;
    }

private:
    mpfr_t low_, high_, term_lo_, term_hi_, scratch_;
};

}  // namespace fftest
