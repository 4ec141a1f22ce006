#pragma once

#include "berkpatch/norm.hpp"

#include <vector>

namespace berk {

// A point of the Berkovich projective line that we can name exactly: either the point
// at infinity, or the seminorm attached to the disc D(center, radius). Radius zero
// gives a rigid rational point.
struct GaussPoint {
    bool infinity{false};
    Rat center{0};
    NormValue radius{NormValue::zero_value()};

    static GaussPoint at_infinity() { return {true, Rat(0), NormValue::zero_value()}; }
    static GaussPoint rigid(Rat c) { return {false, std::move(c), NormValue::zero_value()}; }
    static GaussPoint circle(Rat c, NormValue r) { return {false, std::move(c), std::move(r)}; }
};

// Two finite points name the same seminorm when the radii agree and each center lies
// in the other's disc.
inline bool point_equal(const PrimeContext& ctx, const GaussPoint& x, const GaussPoint& y) {
    if (x.infinity || y.infinity) return x.infinity == y.infinity;
    if (!(x.radius == y.radius)) return false;
    return norm_le(scalar_norm(ctx, x.center - y.center), x.radius);
}

// 1: rigid point (or infinity). 2: disc radius inside the value group p^Q.
// 3: radius with an irrational exponent, the branchless points used for gluing.
inline int classify_point(const GaussPoint& pt) {
    if (pt.infinity || pt.radius.is_zero()) return 1;
    return in_sqrt_value_group(pt.radius) ? 2 : 3;
}

// Taylor coefficients of the polynomial at a new center, by synthetic division.
inline std::vector<Rat> recenter_poly(const std::vector<Rat>& coeffs, const Rat& a) {
    std::vector<Rat> c = coeffs;
    if (c.empty()) return c;
    for (size_t j = 0; j + 1 < c.size(); ++j)
        for (size_t i = c.size() - 1; i-- > j;) c[i] += a * c[i + 1];
    return c;
}

// |P|_x at the disc point x = (a, rho): recenter and take max |c_n| rho^n. The point is
// multiplicative, and on polynomials the max formula is exact.
inline NormValue eval_gauss_norm(const PrimeContext& ctx, const std::vector<Rat>& coeffs, const GaussPoint& pt) {
    if (pt.infinity) throw std::domain_error("polynomial norm at infinity is unbounded");
    std::vector<Rat> c = recenter_poly(coeffs, pt.center);
    NormValue best = NormValue::zero_value();
    NormValue rpow = NormValue::one();
    for (size_t n = 0; n < c.size(); ++n) {
        best = norm_max(best, scalar_norm(ctx, c[n]) * rpow);
        rpow = rpow * pt.radius;
    }
    return best;
}

// |T - c|_x without building a polynomial.
inline NormValue linear_norm(const PrimeContext& ctx, const Rat& c, const GaussPoint& pt) {
    if (pt.infinity) throw std::domain_error("linear norm at infinity is unbounded");
    return norm_max(scalar_norm(ctx, pt.center - c), pt.radius);
}

} // namespace berk
