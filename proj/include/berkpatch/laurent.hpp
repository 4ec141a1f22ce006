#pragma once

#include "berkpatch/interval.hpp"
#include "berkpatch/magnitude.hpp"
#include "berkpatch/norm.hpp"

#include <map>
#include <utility>
#include <vector>

namespace berk {

// Which of the three model rings an element lives in. Disc is functions on |T| <= r
// (exponents >= 0), Outer on |T| >= r (exponents <= 0), Circle on |T| = r (any
// exponent). The radius is part of the ring, not the element.
enum class RingMode { Disc, Outer, Circle };

struct RingTag {
    NormValue r{NormValue::one()};
    RingMode mode{RingMode::Circle};
};

inline bool tag_equal(const RingTag& a, const RingTag& b) { return a.r == b.r && a.mode == b.mode; }

// Finitely supported Laurent series: exponent -> nonzero rational coefficient. All
// ring operations keep the support inside the tag's allowed range.
struct LaurentElement {
    RingTag tag;
    std::map<long, Rat> coeffs;
};

LaurentElement laurent_zero(const RingTag& tag);
LaurentElement laurent_const(const RingTag& tag, const Rat& c);
LaurentElement laurent_monomial(const RingTag& tag, long n, const Rat& c);

// Throws std::invalid_argument when a coefficient is zero or the support leaves the
// tag's range.
void laurent_validate(const LaurentElement& f);

bool laurent_is_zero(const LaurentElement& f);
bool laurent_equal(const LaurentElement& f, const LaurentElement& g);

// max_n |a_n| r^n over the support.
NormValue ring_norm(const PrimeContext& ctx, const LaurentElement& f);

LaurentElement laurent_add(const LaurentElement& f, const LaurentElement& g);
LaurentElement laurent_sub(const LaurentElement& f, const LaurentElement& g);
LaurentElement laurent_neg(const LaurentElement& f);
LaurentElement laurent_scale(const LaurentElement& f, const Rat& c);
LaurentElement laurent_mul(const LaurentElement& f, const LaurentElement& g);

// Multiply by T^k. The result must still satisfy the tag's support constraint.
LaurentElement laurent_shift(const LaurentElement& f, long k);

// View the same coefficients in another ring over the same radius (or another radius:
// the caller asserts the support is valid there). The inclusions Disc -> Circle and
// Outer -> Circle are isometries, so norms computed before and after agree.
LaurentElement laurent_retag(const LaurentElement& f, const RingTag& tag);

// Split a Circle element into its Disc part (exponents >= 0) and Outer part
// (exponents < 0). The parts sum to the input exactly and the larger of their norms
// equals the input's norm exactly.
std::pair<LaurentElement, LaurentElement> split_laurent(const LaurentElement& c);

struct InvertResult {
    LaurentElement inverse;
    NormValue tail; // certified bound on |h * inverse - 1|
};

// Inverse of h = b(1 - e) with b the constant coefficient and |e| < 1, via the
// geometric series truncated once the tail drops under tol. The returned tail bound is
// verified against the exact residual h * inverse - 1.
InvertResult invert_near_unit(const PrimeContext& ctx, const LaurentElement& h, const NormValue& tol);

struct SeriesSum {
    Rat value;
    bool exact{false}; // no omitted terms; when set, tail carries no information
    Magnitude tail{Magnitude::one()};
};

// Sum of a multivariate power series with coefficient bound |c_l| <= M^|l| at a point
// with max_i |a_i| < 1/M, truncated at total degree G with tail <= (M max|a_i|)^G <=
// tol. CoeffFn maps a multi-index (vector of exponents) to its rational coefficient.
// A nonnegative max_degree declares the stream polynomial; degrees beyond it are never
// queried and the sum is exact when G passes it.
template <typename CoeffFn>
SeriesSum eval_series(const PrimeContext& ctx, long arity, CoeffFn&& coeff, const Rat& M,
                      const std::vector<Rat>& a, const Magnitude& tol, long max_degree = -1) {
    if (M < 1) throw std::invalid_argument("coefficient bound must be at least 1");
    if ((long)a.size() != arity) throw std::invalid_argument("argument count mismatch");
    NormValue amax = NormValue::zero_value();
    for (const auto& x : a) amax = norm_max(amax, scalar_norm(ctx, x));

    long G = 1; // sum everything of total degree < G
    bool exact = false;
    Magnitude ratio = Magnitude::one();
    if (amax.is_zero()) {
        exact = true; // only the constant term survives
    } else {
        ratio = Magnitude::from_rational(M) * Magnitude::from_norm(ctx, amax);
        if (magnitude_compare(ratio, Magnitude::one()) >= 0)
            throw std::domain_error("series argument outside the convergence bound");
        Magnitude power = ratio;
        while (magnitude_compare(power, tol) > 0 && (max_degree < 0 || G <= max_degree)) {
            power = power * ratio;
            if (++G > 4096) throw std::runtime_error("series truncation degree exploded");
        }
        if (max_degree >= 0 && G > max_degree) {
            G = max_degree + 1;
            exact = true;
        }
    }

    Rat sum(0);
    auto term = [&](const std::vector<long>& l) {
        Rat c = coeff(l);
        if (c == 0) return;
        long deg = 0;
        Rat mono(1);
        for (long i = 0; i < arity; ++i) {
            deg += l[i];
            for (long t = 0; t < l[i]; ++t) mono *= a[i];
        }
        NormValue cn = scalar_norm(ctx, c);
        if (!cn.is_zero() && compare_norm_rational(ctx, cn, rat_pow(M, deg)) > 0)
            throw std::invalid_argument("coefficient exceeds the declared bound");
        sum += c * mono;
    };
    if (arity == 0) {
        term({});
    } else {
        // Odometer over multi-indices of total degree < G.
        std::vector<long> idx(arity, 0);
        while (true) {
            term(idx);
            long i = 0;
            while (i < arity) {
                ++idx[i];
                long deg = 0;
                for (long v : idx) deg += v;
                if (deg < G) break;
                idx[i] = 0;
                ++i;
            }
            if (i == arity) break;
        }
    }
    SeriesSum out;
    out.value = sum;
    out.exact = exact;
    out.tail = exact ? Magnitude::one() : ratio.pow(Rat(G));
    return out;
}

} // namespace berk
