#include "berkpatch/laurent.hpp"

#include <stdexcept>

namespace berk {

namespace {

bool exponent_allowed(RingMode mode, long n) {
    switch (mode) {
        case RingMode::Disc: return n >= 0;
        case RingMode::Outer: return n <= 0;
        case RingMode::Circle: return true;
    }
    return false;
}

void insert_term(LaurentElement& f, long n, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = f.coeffs.emplace(n, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) f.coeffs.erase(it);
    }
}

void require_same_tag(const LaurentElement& f, const LaurentElement& g) {
    if (!tag_equal(f.tag, g.tag)) throw std::invalid_argument("ring tags differ");
}

} // namespace

LaurentElement laurent_zero(const RingTag& tag) { return {tag, {}}; }

LaurentElement laurent_const(const RingTag& tag, const Rat& c) {
    LaurentElement f{tag, {}};
    if (c != 0) f.coeffs[0] = c;
    return f;
}

LaurentElement laurent_monomial(const RingTag& tag, long n, const Rat& c) {
    if (!exponent_allowed(tag.mode, n)) throw std::invalid_argument("monomial exponent outside the ring");
    LaurentElement f{tag, {}};
    if (c != 0) f.coeffs[n] = c;
    return f;
}

void laurent_validate(const LaurentElement& f) {
    if (f.tag.r.is_zero()) throw std::invalid_argument("ring radius must be positive");
    for (const auto& [n, c] : f.coeffs) {
        if (c == 0) throw std::invalid_argument("stored coefficient is zero");
        if (!exponent_allowed(f.tag.mode, n)) throw std::invalid_argument("support outside the ring");
    }
}

bool laurent_is_zero(const LaurentElement& f) { return f.coeffs.empty(); }

bool laurent_equal(const LaurentElement& f, const LaurentElement& g) {
    return tag_equal(f.tag, g.tag) && f.coeffs == g.coeffs;
}

NormValue ring_norm(const PrimeContext& ctx, const LaurentElement& f) {
    NormValue best = NormValue::zero_value();
    for (const auto& [n, c] : f.coeffs) best = norm_max(best, scalar_norm(ctx, c) * f.tag.r.pow_rat(Rat(n)));
    return best;
}

LaurentElement laurent_add(const LaurentElement& f, const LaurentElement& g) {
    require_same_tag(f, g);
    LaurentElement r = f;
    for (const auto& [n, c] : g.coeffs) insert_term(r, n, c);
    return r;
}

LaurentElement laurent_neg(const LaurentElement& f) { return laurent_scale(f, Rat(-1)); }

LaurentElement laurent_sub(const LaurentElement& f, const LaurentElement& g) {
    return laurent_add(f, laurent_neg(g));
}

LaurentElement laurent_scale(const LaurentElement& f, const Rat& c) {
    LaurentElement r{f.tag, {}};
    if (c == 0) return r;
    for (const auto& [n, x] : f.coeffs) r.coeffs[n] = x * c;
    return r;
}

LaurentElement laurent_mul(const LaurentElement& f, const LaurentElement& g) {
    require_same_tag(f, g);
    LaurentElement r{f.tag, {}};
    for (const auto& [n, a] : f.coeffs)
        for (const auto& [m, b] : g.coeffs) insert_term(r, n + m, a * b);
    return r;
}

LaurentElement laurent_shift(const LaurentElement& f, long k) {
    LaurentElement r{f.tag, {}};
    for (const auto& [n, c] : f.coeffs) {
        if (!exponent_allowed(f.tag.mode, n + k))
            throw std::invalid_argument("shift leaves the ring's support range");
        r.coeffs[n + k] = c;
    }
    return r;
}

LaurentElement laurent_retag(const LaurentElement& f, const RingTag& tag) {
    LaurentElement r{tag, f.coeffs};
    laurent_validate(r);
    return r;
}

std::pair<LaurentElement, LaurentElement> split_laurent(const LaurentElement& c) {
    if (c.tag.mode != RingMode::Circle) throw std::invalid_argument("split applies to Circle elements");
    LaurentElement a{{c.tag.r, RingMode::Disc}, {}};
    LaurentElement b{{c.tag.r, RingMode::Outer}, {}};
    for (const auto& [n, x] : c.coeffs) (n >= 0 ? a : b).coeffs[n] = x;
    return {a, b};
}

InvertResult invert_near_unit(const PrimeContext& ctx, const LaurentElement& h, const NormValue& tol) {
    auto it = h.coeffs.find(0);
    if (it == h.coeffs.end()) throw std::domain_error("no unit constant term to invert around");
    Rat b = it->second;
    // h = b(1 - e) with e = 1 - h/b, supported away from exponent 0.
    LaurentElement e = laurent_sub(laurent_const(h.tag, Rat(1)), laurent_scale(h, Rat(1) / b));
    NormValue en = ring_norm(ctx, e);
    if (!norm_less(en, NormValue::one())) throw std::domain_error("series inverse diverges: |1 - h/h(0)| >= 1");

    LaurentElement inv = laurent_const(h.tag, Rat(1) / b);
    NormValue tailbound = NormValue::zero_value();
    if (!laurent_is_zero(e)) {
        // Stop once |e|^(N+1) <= tol; each factor of e shrinks the tail by |e| < 1.
        LaurentElement epow = laurent_const(h.tag, Rat(1));
        NormValue tail = en;
        unsigned steps = 0;
        while (!norm_le(tail, tol)) {
            epow = laurent_mul(epow, e);
            inv = laurent_add(inv, laurent_scale(epow, Rat(1) / b));
            tail = tail * en;
            if (++steps > 4096) throw std::runtime_error("inverse truncation depth exploded");
        }
        tailbound = tail;
    }
    NormValue residual = ring_norm(ctx, laurent_sub(laurent_mul(h, inv), laurent_const(h.tag, Rat(1))));
    if (!norm_le(residual, tol)) throw std::logic_error("inverse residual exceeds its certified bound");
    return {inv, tailbound};
}

} // namespace berk
