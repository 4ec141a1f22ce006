#include "berkpatch/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace berk {

RationalInterval RationalInterval::operator*(const RationalInterval& o) const {
    Rat p1 = lo * o.lo, p2 = lo * o.hi, p3 = hi * o.lo, p4 = hi * o.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)), std::max(std::max(p1, p2), std::max(p3, p4))};
}

RationalInterval interval_max(const RationalInterval& x, const RationalInterval& y) {
    return {std::max(x.lo, y.lo), std::max(x.hi, y.hi)};
}

RationalInterval interval_min(const RationalInterval& x, const RationalInterval& y) {
    return {std::min(x.lo, y.lo), std::min(x.hi, y.hi)};
}

RationalInterval interval_intersect(const RationalInterval& x, const RationalInterval& y) {
    RationalInterval r{std::max(x.lo, y.lo), std::min(x.hi, y.hi)};
    if (r.lo > r.hi) throw std::logic_error("empty interval intersection");
    return r;
}

RationalInterval interval_recip(const RationalInterval& x) {
    if (x.lo <= 0 && x.hi >= 0) throw std::domain_error("reciprocal of interval through zero");
    return {Rat(1) / x.hi, Rat(1) / x.lo};
}

RationalInterval interval_pow(const RationalInterval& x, long e) {
    if (e == 0) return RationalInterval::point(Rat(1));
    if (e < 0) return interval_recip(interval_pow(x, -e));
    RationalInterval r = RationalInterval::point(Rat(1));
    for (long i = 0; i < e; ++i) r = r * x;
    if (e % 2 == 0 && x.lo < 0 && x.hi > 0 && r.lo > 0) r.lo = 0;
    return r;
}

namespace {

Rat dyadic_down(const Rat& q, unsigned bits) {
    Int scaled;
    Int num = rat_num(q) << bits;
    mpz_fdiv_q(scaled.backend().data(), num.backend().data(), rat_den(q).backend().data());
    return Rat(scaled) / Rat(Int(1) << bits);
}

Rat dyadic_up(const Rat& q, unsigned bits) {
    Int scaled;
    Int num = rat_num(q) << bits;
    mpz_cdiv_q(scaled.backend().data(), num.backend().data(), rat_den(q).backend().data());
    return Rat(scaled) / Rat(Int(1) << bits);
}

RationalInterval dyadic_round(const RationalInterval& x, unsigned bits) {
    return {dyadic_down(x.lo, bits), dyadic_up(x.hi, bits)};
}

// 2*atanh(z) = ln((1+z)/(1-z)) for exact rational z in [0, 1/2), bracketed with the
// truncated odd series plus a geometric tail bound.
RationalInterval two_atanh(const Rat& z, unsigned k) {
    if (z == 0) return RationalInterval::point(Rat(0));
    if (z < 0 || z >= Rat(1, 2)) throw std::domain_error("two_atanh argument out of range");
    Rat zlo = dyadic_down(z, k + 16), zhi = dyadic_up(z, k + 16);
    if (zlo < 0) zlo = 0;
    Rat target = Rat(1) / Rat(Int(1) << (k + 4));
    Rat slo(0), shi(0);
    Rat plo = zlo, phi = zhi;
    Rat z2lo = zlo * zlo, z2hi = zhi * zhi;
    unsigned long j = 0;
    for (;;) {
        slo += plo / Rat(2 * j + 1);
        shi += phi / Rat(2 * j + 1);
        Rat tail = phi * z2hi / ((Rat(2 * j + 3)) * (Rat(1) - z2hi));
        if (tail <= target) {
            return dyadic_round({2 * slo, 2 * (shi + tail)}, k + 8);
        }
        plo *= z2lo;
        phi *= z2hi;
        ++j;
        if (j > 100000) throw std::runtime_error("atanh series failed to converge");
    }
}

RationalInterval ln2_bracket(unsigned k) { return two_atanh(Rat(1, 3), k); }

// ln(x) for rational x > 0, by reducing to [1, 2) against powers of two.
RationalInterval ln_bracket(const Rat& x, unsigned k) {
    if (x <= 0) throw std::domain_error("log of nonpositive value");
    long e = 0;
    Rat m = x;
    while (m >= 2) { m /= 2; ++e; }
    while (m < 1) { m *= 2; --e; }
    RationalInterval lm = two_atanh((m - 1) / (m + 1), k);
    RationalInterval l2 = ln2_bracket(k);
    return lm + l2 * Rat(e);
}

// e^y for an exact rational y, to about k bits: reduce by multiples of ln 2, then a
// Taylor tail on the small remainder.
RationalInterval exp_bracket(const Rat& y, unsigned k) {
    RationalInterval l2 = ln2_bracket(k + 8);
    // k2 ~ y / ln2; any integer close enough works since the remainder interval absorbs
    // the slack, but the approximation must be tight enough that the remainder stays
    // well inside [-1, 1] even for large |y|.
    Int k2num = rat_num(y) * Int("14426950408889634");
    Int k2den = rat_den(y) * Int("10000000000000000");
    Int k2i;
    mpz_fdiv_q(k2i.backend().data(), k2num.backend().data(), k2den.backend().data());
    long k2 = (long)k2i;
    RationalInterval z = RationalInterval::point(y) - l2 * Rat(k2);
    z = dyadic_round(z, k + 24);
    if (z.lo < -1 || z.hi > 1) throw std::logic_error("exp range reduction failed");
    Rat target = Rat(1) / Rat(Int(1) << (k + 6));
    RationalInterval sum = RationalInterval::point(Rat(1));
    RationalInterval p = RationalInterval::point(Rat(1));
    Rat fact(1);
    Rat absmax = std::max(Rat(-z.lo), z.hi);
    Rat tpow = absmax;
    unsigned long j = 1;
    for (;;) {
        p = p * z;
        fact *= Rat(j);
        sum = sum + RationalInterval{p.lo / fact, p.hi / fact};
        Rat tail = 2 * tpow * absmax / (fact * Rat(j + 1));
        if (tail <= target) {
            sum = sum + RationalInterval{-tail, tail};
            break;
        }
        tpow *= absmax;
        ++j;
        if (j > 10000) throw std::runtime_error("exp series failed to converge");
    }
    sum = dyadic_round(sum, k + 16);
    if (sum.lo <= 0) throw std::logic_error("exp bracket lost positivity");
    Rat scale = k2 >= 0 ? Rat(Int(1) << k2) : Rat(1) / Rat(Int(1) << (-k2));
    return {sum.lo * scale, sum.hi * scale};
}

} // namespace

RationalInterval enclose_sqrt2(unsigned k) {
    Int s = isqrt(Int(2) * (Int(1) << (2 * k)));
    Rat den = Rat(Int(1) << k);
    return {Rat(s) / den, Rat(s + 1) / den};
}

RationalInterval enclose_ln(const Rat& x, unsigned k) { return ln_bracket(x, k); }

RationalInterval enclose_pow(const Rat& base, const LogExponent& expo, unsigned k) {
    if (base <= 0) throw std::domain_error("power of nonpositive base");
    if (expo.is_zero()) return RationalInterval::point(Rat(1));
    for (unsigned guard = 16; guard <= 4096; guard *= 2) {
        unsigned kk = k + guard;
        RationalInterval t = enclose_sqrt2(kk);
        RationalInterval x = RationalInterval::point(expo.a) + t * expo.b;
        RationalInterval lnb = ln_bracket(base, kk);
        RationalInterval y = dyadic_round(x * lnb, kk + 16);
        RationalInterval r{exp_bracket(y.lo, kk).lo, exp_bracket(y.hi, kk).hi};
        if ((r.hi - r.lo) * (Int(1) << k) <= r.hi) return r;
    }
    throw std::runtime_error("power enclosure failed to reach requested width");
}

RationalInterval norm_enclosure(const PrimeContext& ctx, const NormValue& v, unsigned precision) {
    if (v.is_zero()) return RationalInterval::point(Rat(0));
    // An integer exponent gives an exact rational value; return the point interval so
    // downstream constants built from it stay exact.
    if (v.e.is_rational() && rat_den(v.e.a) == 1)
        return RationalInterval::point(rat_pow(Rat(ctx.p), -(long)rat_num(v.e.a)));
    // Intersect a doubling chain of raw enclosures. Each anchor result contains the true
    // value, so the running intersection is nonempty, no wider than the finest anchor,
    // and nested across precision by construction.
    LogExponent neg = -v.e;
    RationalInterval acc = enclose_pow(Rat(ctx.p), neg, 4);
    unsigned anchor = 4;
    while (anchor < precision) {
        anchor *= 2;
        acc = interval_intersect(acc, enclose_pow(Rat(ctx.p), neg, anchor));
    }
    return acc;
}

int compare_norm_rational(const PrimeContext& ctx, const NormValue& v, const Rat& q) {
    if (q < 0) return 1;
    if (q == 0) return v.is_zero() ? 0 : 1;
    if (v.is_zero()) return -1;
    if (v.e.is_rational()) {
        // p^(-n/d) vs q reduces to p^-n vs q^d, an exact rational comparison.
        long n = (long)rat_num(v.e.a), d = (long)rat_den(v.e.a);
        Rat lhs = rat_pow(Rat(ctx.p), -n);
        Rat rhs = rat_pow(q, d);
        if (lhs == rhs) return 0;
        return lhs < rhs ? -1 : 1;
    }
    // Irrational exponent: the two sides are never equal, refine until separated.
    for (unsigned k = 8; k <= 1u << 14; k *= 2) {
        RationalInterval e = norm_enclosure(ctx, v, k);
        if (q < e.lo) return 1;
        if (q > e.hi) return -1;
    }
    throw std::runtime_error("norm comparison failed to separate");
}

int linear_log_form_sign(const std::vector<std::pair<Rat, LogExponent>>& terms) {
    for (unsigned k = 16; k <= 1u << 14; k *= 2) {
        RationalInterval t = enclose_sqrt2(k);
        RationalInterval sum = RationalInterval::point(Rat(0));
        for (const auto& [base, coeff] : terms) {
            RationalInterval c = RationalInterval::point(coeff.a) + t * coeff.b;
            sum = sum + c * enclose_ln(base, k);
        }
        if (sum.lo > 0) return 1;
        if (sum.hi < 0) return -1;
    }
    return 0;
}

} // namespace berk
