#pragma once

#include "berkpatch/rational.hpp"

#include <stdexcept>
#include <vector>

namespace berk {

// Dense polynomials over the rationals, coefficients constant-first. Only the handful
// of operations the norm machinery needs; nothing here knows about p-adic norms.

using PolyQ = std::vector<Rat>;

inline void poly_trim(PolyQ& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline PolyQ poly_add(const PolyQ& a, const PolyQ& b) {
    PolyQ r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

inline PolyQ poly_scale(const PolyQ& a, const Rat& c) {
    if (c == 0) return {};
    PolyQ r = a;
    for (auto& x : r) x *= c;
    return r;
}

inline PolyQ poly_sub(const PolyQ& a, const PolyQ& b) { return poly_add(a, poly_scale(b, Rat(-1))); }

inline PolyQ poly_mul(const PolyQ& a, const PolyQ& b) {
    if (a.empty() || b.empty()) return {};
    PolyQ r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

inline PolyQ poly_pow(const PolyQ& a, unsigned long e) {
    PolyQ r{Rat(1)};
    PolyQ base = a;
    while (e) {
        if (e & 1) r = poly_mul(r, base);
        e >>= 1;
        if (e) base = poly_mul(base, base);
    }
    return r;
}

inline Rat poly_eval(const PolyQ& p, const Rat& x) {
    Rat v(0);
    for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

// Unique interpolant of degree < nodes.size() through (node, value) pairs.
inline PolyQ lagrange_interpolate(const std::vector<Rat>& nodes, const std::vector<Rat>& values) {
    if (nodes.size() != values.size()) throw std::invalid_argument("interpolation data mismatch");
    PolyQ acc;
    for (size_t i = 0; i < nodes.size(); ++i) {
        PolyQ basis{Rat(1)};
        Rat denom(1);
        for (size_t j = 0; j < nodes.size(); ++j) {
            if (j == i) continue;
            basis = poly_mul(basis, PolyQ{-nodes[j], Rat(1)});
            denom *= nodes[i] - nodes[j];
        }
        acc = poly_add(acc, poly_scale(basis, values[i] / denom));
    }
    return acc;
}

} // namespace berk
