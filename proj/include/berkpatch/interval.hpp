#pragma once

#include "berkpatch/norm.hpp"

#include <vector>

namespace berk {

// Closed interval with exact rational endpoints, lo <= hi.
struct RationalInterval {
    Rat lo{0};
    Rat hi{0};

    static RationalInterval point(const Rat& v) { return {v, v}; }

    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    Rat width() const { return hi - lo; }

    RationalInterval operator+(const RationalInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RationalInterval operator-(const RationalInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    RationalInterval operator*(const RationalInterval& o) const;
    RationalInterval operator*(const Rat& c) const {
        return c >= 0 ? RationalInterval{lo * c, hi * c} : RationalInterval{hi * c, lo * c};
    }
};

RationalInterval interval_max(const RationalInterval& x, const RationalInterval& y);
RationalInterval interval_min(const RationalInterval& x, const RationalInterval& y);
RationalInterval interval_intersect(const RationalInterval& x, const RationalInterval& y);

// Reciprocal of an interval that does not contain zero.
RationalInterval interval_recip(const RationalInterval& x);

// x^e for integer e; for negative e the interval must not contain zero.
RationalInterval interval_pow(const RationalInterval& x, long e);

// Dyadic bracket of sqrt(2) with denominator 2^k; nested as k grows.
RationalInterval enclose_sqrt2(unsigned k);

// Bracket of ln(x) for rational x > 0; width shrinks like 2^-k.
RationalInterval enclose_ln(const Rat& x, unsigned k);

// Bracket of b^(a + b2*sqrt2) for rational b > 0 and a LogExponent, width 2^-k relative.
RationalInterval enclose_pow(const Rat& base, const LogExponent& expo, unsigned k);

// Enclosure of a norm value p^-(a + b*sqrt2). Zero gives [0, 0]. Relative width is at
// most 2^-precision, and enclosures at increasing precision are nested (the
// implementation intersects a refinement chain, so this holds by construction).
RationalInterval norm_enclosure(const PrimeContext& ctx, const NormValue& v, unsigned precision);

// Exact comparison of p^-(a + b*sqrt2) against a positive rational: -1, 0 or +1.
// Rational-exponent values compare by clearing denominators; irrational exponents can
// never equal a rational, so interval refinement always separates them.
int compare_norm_rational(const PrimeContext& ctx, const NormValue& v, const Rat& q);

// Sign of sum_i coeff_i * ln(base_i), with coeff_i = a_i + b_i*sqrt2 and base_i a
// positive rational. Returns 0 only when the form is structurally zero (the caller is
// expected to have reduced that case away); otherwise refines until the sign separates.
int linear_log_form_sign(const std::vector<std::pair<Rat, LogExponent>>& terms);

} // namespace berk
