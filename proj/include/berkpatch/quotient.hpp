#pragma once

#include "berkpatch/laurent.hpp"

#include <utility>
#include <vector>

namespace berk {

// Element of A{...}[X]/(P(X) - T) in its unique degree < d representative: rep[i] is
// the series coefficient of X^i. The modulus is monic with rational coefficients,
// constant first. The norm is the plain max over the d component norms.
struct QuotientElement {
    RingTag tag;
    std::vector<Rat> modulus;
    std::vector<LaurentElement> rep;
};

inline size_t quotient_degree(const QuotientElement& f) { return f.modulus.size() - 1; }

QuotientElement quotient_zero(const RingTag& tag, const std::vector<Rat>& modulus);

// Builds rep from polynomial coefficients of X^0..X^(d-1), each a Laurent element in T.
QuotientElement quotient_make(const RingTag& tag, const std::vector<Rat>& modulus,
                              std::vector<LaurentElement> rep);

// Checks the modulus (monic, degree >= 1), rep size, component tags, and for the Outer
// ring the representative shape: component 0 has exponents <= 0, components i >= 1
// stay strictly negative. That shape is what the reduction X^d = T - (P - X^d)
// preserves, so it is the right notion of "element of the outer quotient".
void quotient_validate(const QuotientElement& f);

bool quotient_is_zero(const QuotientElement& f);
bool quotient_equal(const QuotientElement& f, const QuotientElement& g);

NormValue ring_norm(const PrimeContext& ctx, const QuotientElement& f);

QuotientElement quotient_add(const QuotientElement& f, const QuotientElement& g);
QuotientElement quotient_sub(const QuotientElement& f, const QuotientElement& g);
QuotientElement quotient_neg(const QuotientElement& f);
QuotientElement quotient_scale(const QuotientElement& f, const Rat& c);

// Polynomial product in X followed by reduction of X^m (d <= m <= 2d-2) through
// X^d = T - (P(X) - X^d), which multiplies the overflow coefficient by T and folds the
// lower modulus terms back in.
QuotientElement quotient_mul(const QuotientElement& f, const QuotientElement& g);

QuotientElement quotient_retag(const QuotientElement& f, const RingTag& tag);

// The outer quotient written in its normal form a00 + sum_{n>=1, 0<=i<d} a_{n,i}
// T^-n X^i, which is how restriction to |P| >= r presents its functions.
struct OuterQuotientShape {
    NormValue r{NormValue::one()};
    size_t d{1};
    Rat a00{0};
    std::vector<std::tuple<long, size_t, Rat>> tail; // (n >= 1, i < d, coefficient)
};

OuterQuotientShape to_outer_shape(const QuotientElement& f);
QuotientElement from_outer_shape(const OuterQuotientShape& s, const std::vector<Rat>& modulus);

// max(|a00|, |a_{n,i}| r^-n): the closed norm formula for the shape.
NormValue shape_norm(const PrimeContext& ctx, const OuterQuotientShape& s);

// Componentwise split of the representative: nonnegative exponents to the Disc
// quotient, negative ones to the Outer shape. Sum is exact and max of the two norms
// equals the input norm exactly.
std::pair<QuotientElement, OuterQuotientShape> split_quotient(const QuotientElement& c);

} // namespace berk
