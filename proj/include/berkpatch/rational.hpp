#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace berk {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int rat_num(const Rat& q) { return Int(boost::multiprecision::numerator(q)); }
inline Int rat_den(const Rat& q) { return Int(boost::multiprecision::denominator(q)); }

// Canonical "num/den" text (plain integer when the denominator is 1).
inline std::string rat_str(const Rat& q) {
    if (rat_den(q) == 1) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rat(n) / Rat(d);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

inline Int int_pow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.backend().data(), b.backend().data(), e);
    return r;
}

inline Rat rat_pow(const Rat& b, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (b == 0) throw std::domain_error("zero to a negative power");
        return Rat(1) / rat_pow(b, -e);
    }
    return Rat(int_pow(rat_num(b), (unsigned long)e)) / Rat(int_pow(rat_den(b), (unsigned long)e));
}

// Number of factors of p in n (n must be nonzero). Divides them out of *unit if given.
inline long remove_factors(const Int& n, const Int& p, Int* unit = nullptr) {
    Int u;
    auto k = mpz_remove(u.backend().data(), n.backend().data(), p.backend().data());
    if (unit) *unit = u;
    return (long)k;
}

// p-adic valuation of a nonzero rational.
inline long valuation(const Rat& q, const Int& p) {
    if (q == 0) throw std::domain_error("valuation of zero");
    return remove_factors(rat_num(q), p) - remove_factors(rat_den(q), p);
}

// Integer square root, rounded down.
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.backend().data(), n.backend().data());
    return r;
}

} // namespace berk
