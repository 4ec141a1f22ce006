#pragma once

#include "berkpatch/rational.hpp"

#include <compare>
#include <optional>
#include <stdexcept>

namespace berk {

// Exponents live in the group Q + Q*sqrt(2). A value a + b*sqrt2 is stored by its two
// rational coordinates; the representation is unique since sqrt2 is irrational.
struct LogExponent {
    Rat a{0};
    Rat b{0};

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    LogExponent operator+(const LogExponent& o) const { return {a + o.a, b + o.b}; }
    LogExponent operator-(const LogExponent& o) const { return {a - o.a, b - o.b}; }
    LogExponent operator-() const { return {-a, -b}; }
    LogExponent operator*(const Rat& c) const { return {a * c, b * c}; }
    LogExponent operator/(const Rat& c) const {
        if (c == 0) throw std::domain_error("divide exponent by zero");
        return {a / c, b / c};
    }
    bool operator==(const LogExponent& o) const { return a == o.a && b == o.b; }
};

// Sign of a + b*sqrt2, decided exactly. When the two parts have opposite signs the
// comparison reduces to a^2 vs 2 b^2, and the part with the larger square wins.
inline int log_sign(const LogExponent& e) {
    const Rat& A = e.a;
    const Rat& B = e.b;
    int sa = A == 0 ? 0 : (A > 0 ? 1 : -1);
    int sb = B == 0 ? 0 : (B > 0 ? 1 : -1);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: the larger square wins, sign follows the winner.
    Rat a2 = A * A, b2 = 2 * B * B;
    if (a2 == b2) return 0; // cannot happen when B != 0
    return a2 > b2 ? sa : sb;
}

inline int log_compare(const LogExponent& x, const LogExponent& y) { return log_sign(x - y); }

inline bool log_less(const LogExponent& x, const LogExponent& y) { return log_compare(x, y) < 0; }

// A nonarchimedean absolute value: either zero or p^-(a + b*sqrt2).
struct NormValue {
    bool zero{true};
    LogExponent e{};

    static NormValue zero_value() { return NormValue{true, {}}; }
    static NormValue one() { return NormValue{false, {}}; }
    static NormValue pos(LogExponent ex) { return NormValue{false, ex}; }
    static NormValue pos(Rat a, Rat b = Rat(0)) { return NormValue{false, {std::move(a), std::move(b)}}; }

    bool is_zero() const { return zero; }
    bool is_one() const { return !zero && e.is_zero(); }

    NormValue operator*(const NormValue& o) const {
        if (zero || o.zero) return zero_value();
        return pos(e + o.e);
    }
    NormValue operator/(const NormValue& o) const {
        if (o.zero) throw std::domain_error("divide by zero norm");
        if (zero) return zero_value();
        return pos(e - o.e);
    }
    NormValue pow_rat(const Rat& c) const {
        if (zero) {
            if (c <= 0) throw std::domain_error("zero norm to a nonpositive power");
            return zero_value();
        }
        return pos(e * c);
    }
    bool operator==(const NormValue& o) const {
        if (zero != o.zero) return false;
        return zero || e == o.e;
    }
};

// Total order: 0 < p^-e for every e, and p^-e1 < p^-e2 iff e1 > e2 (p > 1).
inline int norm_compare(const NormValue& x, const NormValue& y) {
    if (x.zero && y.zero) return 0;
    if (x.zero) return -1;
    if (y.zero) return 1;
    return log_compare(y.e, x.e);
}

inline bool norm_less(const NormValue& x, const NormValue& y) { return norm_compare(x, y) < 0; }
inline bool norm_le(const NormValue& x, const NormValue& y) { return norm_compare(x, y) <= 0; }

inline NormValue norm_max(const NormValue& x, const NormValue& y) { return norm_less(x, y) ? y : x; }
inline NormValue norm_min(const NormValue& x, const NormValue& y) { return norm_less(x, y) ? x : y; }

// Membership in the divisible closure of the value group of the ground field, i.e. in
// p^Q. Radii inside it give type 2 points, radii outside give type 3.
inline bool in_sqrt_value_group(const NormValue& v) { return !v.zero && v.e.is_rational(); }

struct PrimeContext {
    Int p{5};
};

// A rational number carried together with the prime it is measured against.
struct PScalar {
    Rat value{0};
};

inline NormValue scalar_norm(const PrimeContext& ctx, const Rat& x) {
    if (x == 0) return NormValue::zero_value();
    return NormValue::pos(Rat(valuation(x, ctx.p)));
}

inline NormValue scalar_norm(const PrimeContext& ctx, const PScalar& x) { return scalar_norm(ctx, x.value); }

} // namespace berk
