#pragma once

#include "berkpatch/interval.hpp"
#include "berkpatch/norm.hpp"

#include <map>

namespace berk {

// An exact positive real of the form  prod_i base_i^(a_i + b_i*sqrt2)  with prime bases.
// This is the smallest class closed under the quantities the patching thresholds need:
// rational constants, norm values p^-(a+b*sqrt2), products, and rational powers (the
// step envelopes raise eps' to half-integer powers, which mixes bases).
//
// Uniqueness of the representation: if the product equals 1 then every exponent is zero,
// by unique factorization for the rational parts and transcendence of q^sqrt2 for the
// rest. So equality is a structural check, and any structurally distinct pair separates
// under interval refinement of the log form.
struct Magnitude {
    std::map<Int, LogExponent> factors; // base -> exponent, exponents never zero

    static Magnitude one() { return {}; }
    static Magnitude from_rational(const Rat& q);
    static Magnitude from_norm(const PrimeContext& ctx, const NormValue& v);

    Magnitude operator*(const Magnitude& o) const;
    Magnitude inverse() const;
    Magnitude operator/(const Magnitude& o) const { return *this * o.inverse(); }
    Magnitude pow(const Rat& e) const;

    bool is_one() const { return factors.empty(); }
};

int magnitude_compare(const Magnitude& x, const Magnitude& y);

inline Magnitude magnitude_min(const Magnitude& x, const Magnitude& y) {
    return magnitude_compare(x, y) <= 0 ? x : y;
}

// Compare a norm value (possibly zero) against a positive magnitude.
int compare_norm_magnitude(const PrimeContext& ctx, const NormValue& v, const Magnitude& m);

// Floating approximation, for plot scaling only.
double magnitude_approx(const Magnitude& m);

// Enclosure with relative width about 2^-k.
RationalInterval magnitude_enclosure(const Magnitude& m, unsigned k);

} // namespace berk
