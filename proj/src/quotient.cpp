#include "berkpatch/quotient.hpp"

#include <stdexcept>

namespace berk {

namespace {

void require_compatible(const QuotientElement& f, const QuotientElement& g) {
    if (!tag_equal(f.tag, g.tag)) throw std::invalid_argument("ring tags differ");
    if (f.modulus != g.modulus) throw std::invalid_argument("moduli differ");
}

void check_modulus(const std::vector<Rat>& modulus) {
    if (modulus.size() < 2 || modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree at least 1");
}

} // namespace

QuotientElement quotient_zero(const RingTag& tag, const std::vector<Rat>& modulus) {
    check_modulus(modulus);
    QuotientElement f{tag, modulus, {}};
    f.rep.assign(modulus.size() - 1, laurent_zero(tag));
    return f;
}

QuotientElement quotient_make(const RingTag& tag, const std::vector<Rat>& modulus,
                              std::vector<LaurentElement> rep) {
    check_modulus(modulus);
    QuotientElement f{tag, modulus, std::move(rep)};
    if (f.rep.size() != quotient_degree(f)) throw std::invalid_argument("representative size mismatch");
    quotient_validate(f);
    return f;
}

void quotient_validate(const QuotientElement& f) {
    check_modulus(f.modulus);
    if (f.rep.size() != quotient_degree(f)) throw std::invalid_argument("representative size mismatch");
    for (size_t i = 0; i < f.rep.size(); ++i) {
        if (!tag_equal(f.rep[i].tag, f.tag)) throw std::invalid_argument("component tag mismatch");
        laurent_validate(f.rep[i]);
        if (f.tag.mode == RingMode::Outer && i >= 1)
            for (const auto& [n, c] : f.rep[i].coeffs)
                if (n >= 0) throw std::invalid_argument("outer representative needs negative exponents beside X^0");
    }
}

bool quotient_is_zero(const QuotientElement& f) {
    for (const auto& c : f.rep)
        if (!laurent_is_zero(c)) return false;
    return true;
}

bool quotient_equal(const QuotientElement& f, const QuotientElement& g) {
    if (!tag_equal(f.tag, g.tag) || f.modulus != g.modulus) return false;
    for (size_t i = 0; i < f.rep.size(); ++i)
        if (!laurent_equal(f.rep[i], g.rep[i])) return false;
    return true;
}

NormValue ring_norm(const PrimeContext& ctx, const QuotientElement& f) {
    NormValue best = NormValue::zero_value();
    for (const auto& c : f.rep) best = norm_max(best, ring_norm(ctx, c));
    return best;
}

QuotientElement quotient_add(const QuotientElement& f, const QuotientElement& g) {
    require_compatible(f, g);
    QuotientElement r = f;
    for (size_t i = 0; i < r.rep.size(); ++i) r.rep[i] = laurent_add(r.rep[i], g.rep[i]);
    return r;
}

QuotientElement quotient_neg(const QuotientElement& f) { return quotient_scale(f, Rat(-1)); }

QuotientElement quotient_sub(const QuotientElement& f, const QuotientElement& g) {
    return quotient_add(f, quotient_neg(g));
}

QuotientElement quotient_scale(const QuotientElement& f, const Rat& c) {
    QuotientElement r = f;
    for (auto& x : r.rep) x = laurent_scale(x, c);
    return r;
}

QuotientElement quotient_mul(const QuotientElement& f, const QuotientElement& g) {
    require_compatible(f, g);
    size_t d = quotient_degree(f);
    // Raw coefficient maps during the convolution and reduction; tags are reattached
    // and validated at the end, because the Outer shape argument runs through
    // intermediate exponents the final representative no longer contains.
    std::vector<std::map<long, Rat>> conv(2 * d - 1);
    auto fold = [](std::map<long, Rat>& dst, const std::map<long, Rat>& src, const Rat& scale, long shift) {
        for (const auto& [n, c] : src) {
            Rat v = c * scale;
            if (v == 0) continue;
            auto [it, fresh] = dst.emplace(n + shift, v);
            if (!fresh) {
                it->second += v;
                if (it->second == 0) dst.erase(it);
            }
        }
    };
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            std::map<long, Rat> prod;
            for (const auto& [n, a] : f.rep[i].coeffs)
                for (const auto& [m, b] : g.rep[j].coeffs) {
                    Rat v = a * b;
                    if (v == 0) continue;
                    auto [it, fresh] = prod.emplace(n + m, v);
                    if (!fresh) {
                        it->second += v;
                        if (it->second == 0) prod.erase(it);
                    }
                }
            fold(conv[i + j], prod, Rat(1), 0);
        }
    for (size_t m = 2 * d - 2; m >= d; --m) {
        std::map<long, Rat> c = std::move(conv[m]);
        conv[m].clear();
        if (c.empty()) {
            if (m == d) break;
            continue;
        }
        fold(conv[m - d], c, Rat(1), 1); // X^d contributes T
        for (size_t i = 0; i < d; ++i)
            if (f.modulus[i] != 0) fold(conv[m - d + i], c, -f.modulus[i], 0);
        if (m == d) break;
    }
    QuotientElement r = quotient_zero(f.tag, f.modulus);
    for (size_t i = 0; i < d; ++i) {
        LaurentElement e{f.tag, std::move(conv[i])};
        laurent_validate(e);
        r.rep[i] = std::move(e);
    }
    quotient_validate(r);
    return r;
}

QuotientElement quotient_retag(const QuotientElement& f, const RingTag& tag) {
    QuotientElement r{tag, f.modulus, {}};
    for (const auto& c : f.rep) r.rep.push_back(laurent_retag(c, tag));
    quotient_validate(r);
    return r;
}

OuterQuotientShape to_outer_shape(const QuotientElement& f) {
    if (f.tag.mode != RingMode::Outer) throw std::invalid_argument("shape form is for Outer elements");
    quotient_validate(f);
    OuterQuotientShape s;
    s.r = f.tag.r;
    s.d = quotient_degree(f);
    for (size_t i = 0; i < f.rep.size(); ++i)
        for (const auto& [n, c] : f.rep[i].coeffs) {
            if (i == 0 && n == 0)
                s.a00 = c;
            else
                s.tail.emplace_back(-n, i, c);
        }
    return s;
}

QuotientElement from_outer_shape(const OuterQuotientShape& s, const std::vector<Rat>& modulus) {
    if (modulus.size() != s.d + 1) throw std::invalid_argument("modulus degree disagrees with the shape");
    QuotientElement f = quotient_zero({s.r, RingMode::Outer}, modulus);
    if (s.a00 != 0) f.rep[0].coeffs[0] = s.a00;
    for (const auto& [n, i, c] : s.tail) {
        if (n < 1 || i >= s.d || c == 0) throw std::invalid_argument("malformed shape term");
        f.rep[i].coeffs[-n] += c;
        if (f.rep[i].coeffs[-n] == 0) f.rep[i].coeffs.erase(-n);
    }
    quotient_validate(f);
    return f;
}

NormValue shape_norm(const PrimeContext& ctx, const OuterQuotientShape& s) {
    NormValue best = scalar_norm(ctx, s.a00);
    for (const auto& [n, i, c] : s.tail)
        best = norm_max(best, scalar_norm(ctx, c) * s.r.pow_rat(Rat(-n)));
    return best;
}

std::pair<QuotientElement, OuterQuotientShape> split_quotient(const QuotientElement& c) {
    if (c.tag.mode != RingMode::Circle) throw std::invalid_argument("split applies to Circle elements");
    size_t d = quotient_degree(c);
    QuotientElement a = quotient_zero({c.tag.r, RingMode::Disc}, c.modulus);
    QuotientElement b = quotient_zero({c.tag.r, RingMode::Outer}, c.modulus);
    for (size_t i = 0; i < d; ++i) {
        auto [ai, bi] = split_laurent(c.rep[i]);
        a.rep[i] = laurent_retag(ai, a.tag);
        b.rep[i] = laurent_retag(bi, b.tag);
    }
    return {a, to_outer_shape(b)};
}

} // namespace berk
