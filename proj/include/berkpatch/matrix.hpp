#pragma once

#include "berkpatch/laurent.hpp"
#include "berkpatch/quotient.hpp"
#include "berkpatch/rng.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace berk {

// Uniform facade over the two coefficient rings so the factorization engine can be
// written once. Every operation is exact; "split" lands both halves back in the
// circle ring with one-sided support.
template <typename E>
struct RingTraits;

template <>
struct RingTraits<LaurentElement> {
    static LaurentElement zero_like(const LaurentElement& p) { return laurent_zero(p.tag); }
    static LaurentElement const_like(const LaurentElement& p, const Rat& c) { return laurent_const(p.tag, c); }
    static LaurentElement add(const LaurentElement& x, const LaurentElement& y) { return laurent_add(x, y); }
    static LaurentElement sub(const LaurentElement& x, const LaurentElement& y) { return laurent_sub(x, y); }
    static LaurentElement neg(const LaurentElement& x) { return laurent_neg(x); }
    static LaurentElement mul(const LaurentElement& x, const LaurentElement& y) { return laurent_mul(x, y); }
    static LaurentElement scale(const LaurentElement& x, const Rat& c) { return laurent_scale(x, c); }
    static bool is_zero(const LaurentElement& x) { return laurent_is_zero(x); }
    static bool equal(const LaurentElement& x, const LaurentElement& y) { return laurent_equal(x, y); }
    static NormValue norm(const PrimeContext& ctx, const LaurentElement& x) { return ring_norm(ctx, x); }
    static LaurentElement retag(const LaurentElement& x, const RingTag& tag) { return laurent_retag(x, tag); }
    static std::pair<LaurentElement, LaurentElement> split(const LaurentElement& c) {
        auto [a, b] = split_laurent(c);
        return {laurent_retag(a, c.tag), laurent_retag(b, c.tag)};
    }
    static LaurentElement sample(Rng& rng, const LaurentElement& proto, long lo, long hi) {
        LaurentElement f = laurent_zero(proto.tag);
        long terms = rng.range(0, 4);
        for (long t = 0; t < terms; ++t) f.coeffs[rng.range(lo, hi)] = rng.nonzero_rat(20);
        return f;
    }
};

template <>
struct RingTraits<QuotientElement> {
    static QuotientElement zero_like(const QuotientElement& p) { return quotient_zero(p.tag, p.modulus); }
    static QuotientElement const_like(const QuotientElement& p, const Rat& c) {
        QuotientElement f = quotient_zero(p.tag, p.modulus);
        f.rep[0] = laurent_const(p.tag, c);
        return f;
    }
    static QuotientElement add(const QuotientElement& x, const QuotientElement& y) { return quotient_add(x, y); }
    static QuotientElement sub(const QuotientElement& x, const QuotientElement& y) { return quotient_sub(x, y); }
    static QuotientElement neg(const QuotientElement& x) { return quotient_neg(x); }
    static QuotientElement mul(const QuotientElement& x, const QuotientElement& y) { return quotient_mul(x, y); }
    static QuotientElement scale(const QuotientElement& x, const Rat& c) { return quotient_scale(x, c); }
    static bool is_zero(const QuotientElement& x) { return quotient_is_zero(x); }
    static bool equal(const QuotientElement& x, const QuotientElement& y) { return quotient_equal(x, y); }
    static NormValue norm(const PrimeContext& ctx, const QuotientElement& x) { return ring_norm(ctx, x); }
    static QuotientElement retag(const QuotientElement& x, const RingTag& tag) { return quotient_retag(x, tag); }
    static std::pair<QuotientElement, QuotientElement> split(const QuotientElement& c) {
        auto [a, s] = split_quotient(c);
        return {quotient_retag(a, c.tag), quotient_retag(from_outer_shape(s, c.modulus), c.tag)};
    }
    static QuotientElement sample(Rng& rng, const QuotientElement& proto, long lo, long hi) {
        QuotientElement f = quotient_zero(proto.tag, proto.modulus);
        for (auto& comp : f.rep) {
            long terms = rng.range(0, 3);
            for (long t = 0; t < terms; ++t) comp.coeffs[rng.range(lo, hi)] = rng.nonzero_rat(20);
        }
        return f;
    }
};

// Square matrix over one of the coefficient rings, row major. The sup norm over
// entries is submultiplicative because the entry norms are ultrametric.
template <typename E>
struct Mat {
    size_t n{0};
    std::vector<E> a;

    E& at(size_t i, size_t j) { return a[i * n + j]; }
    const E& at(size_t i, size_t j) const { return a[i * n + j]; }
};

template <typename E>
Mat<E> mat_zero(size_t n, const E& proto) {
    Mat<E> m{n, {}};
    m.a.assign(n * n, RingTraits<E>::zero_like(proto));
    return m;
}

template <typename E>
Mat<E> mat_identity(size_t n, const E& proto) {
    Mat<E> m = mat_zero(n, proto);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = RingTraits<E>::const_like(proto, Rat(1));
    return m;
}

template <typename E>
Mat<E> mat_add(const Mat<E>& x, const Mat<E>& y) {
    if (x.n != y.n) throw std::invalid_argument("matrix size mismatch");
    Mat<E> r = x;
    for (size_t k = 0; k < r.a.size(); ++k) r.a[k] = RingTraits<E>::add(x.a[k], y.a[k]);
    return r;
}

template <typename E>
Mat<E> mat_sub(const Mat<E>& x, const Mat<E>& y) {
    if (x.n != y.n) throw std::invalid_argument("matrix size mismatch");
    Mat<E> r = x;
    for (size_t k = 0; k < r.a.size(); ++k) r.a[k] = RingTraits<E>::sub(x.a[k], y.a[k]);
    return r;
}

template <typename E>
Mat<E> mat_neg(const Mat<E>& x) {
    Mat<E> r = x;
    for (auto& e : r.a) e = RingTraits<E>::neg(e);
    return r;
}

template <typename E>
Mat<E> mat_mul(const Mat<E>& x, const Mat<E>& y) {
    if (x.n != y.n) throw std::invalid_argument("matrix size mismatch");
    if (x.n == 0) return x;
    Mat<E> r = mat_zero(x.n, x.a[0]);
    for (size_t i = 0; i < x.n; ++i)
        for (size_t j = 0; j < x.n; ++j) {
            E acc = RingTraits<E>::zero_like(x.a[0]);
            for (size_t k = 0; k < x.n; ++k)
                acc = RingTraits<E>::add(acc, RingTraits<E>::mul(x.at(i, k), y.at(k, j)));
            r.at(i, j) = std::move(acc);
        }
    return r;
}

template <typename E>
NormValue mat_norm(const PrimeContext& ctx, const Mat<E>& x) {
    NormValue best = NormValue::zero_value();
    for (const auto& e : x.a) best = norm_max(best, RingTraits<E>::norm(ctx, e));
    return best;
}

template <typename E>
bool mat_is_zero(const Mat<E>& x) {
    for (const auto& e : x.a)
        if (!RingTraits<E>::is_zero(e)) return false;
    return true;
}

template <typename E>
bool mat_equal(const Mat<E>& x, const Mat<E>& y) {
    if (x.n != y.n) return false;
    for (size_t k = 0; k < x.a.size(); ++k)
        if (!RingTraits<E>::equal(x.a[k], y.a[k])) return false;
    return true;
}

template <typename E>
Mat<E> mat_retag(const Mat<E>& x, const RingTag& tag) {
    Mat<E> r = x;
    for (auto& e : r.a) e = RingTraits<E>::retag(e, tag);
    return r;
}

} // namespace berk
