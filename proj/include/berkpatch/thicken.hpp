#pragma once

#include "berkpatch/domain.hpp"
#include "berkpatch/norm.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace berk {

// Type 3 point of the base line: coordinate norm t with irrational exponent, so the
// local ring at the point is a field and fibers never branch there.
struct BasePoint {
    NormValue t;
};

void validate_base_point(const BasePoint& b);

// Root given as a monomial c * T_base^k in the base coordinate. The zero root is
// c = 0 with k = 0. Distances between such roots are exact at every base radius: a
// single monomial when the exponents agree, the larger of the two monomials otherwise.
struct RelRoot {
    Rat c;
    long k{0};
    long mult{1};
};

struct RelativeRootSystem {
    std::vector<RelRoot> roots;

    size_t size() const { return roots.size(); }
};

void validate_relative_roots(const RelativeRootSystem& rs);

// |c| * t_y^k, the norm of a base monomial on the fiber over radius t_y.
NormValue monomial_norm_at(const PrimeContext& ctx, const Rat& c, long k, const NormValue& t_y);

// |x - y| on the fiber over base radius t_y, exact.
NormValue relative_distance(const PrimeContext& ctx, const RelRoot& x, const RelRoot& y,
                            const NormValue& t_y);

// Radius s of the circle around root alpha on the fiber over t_y, defined by
// s^(j0+m) * prod(distances above s) = r with every distance strictly on one side of
// s. The returned value satisfies the product identity exactly; a tie between s and
// a distance is reported as a domain error.
NormValue relative_fiber_radius(const PrimeContext& ctx, const RelativeRootSystem& rs, size_t alpha,
                                const NormValue& r, const NormValue& t_y);

// The full shell norm prod_j max(s, |alpha - alpha_j|_y)^(m_j) * s^(m_alpha), used to
// verify the defining identity at a candidate radius.
NormValue relative_shell_norm(const PrimeContext& ctx, const RelativeRootSystem& rs, size_t alpha,
                              const NormValue& s, const NormValue& t_y);

// One strict inequality q*x + w < 0 in the base exponent x (the base radius is
// p^-x). Slopes are rational; intercepts may carry the formal sqrt2 part of r.
struct WindowRow {
    Rat q;
    LogExponent w;
};

// Open interval of base radii on which the fiber-radius formula frozen at the center
// keeps all its strict inequalities. Bounds are exponents of the endpoint radii:
// t1 = p^-t1_exp is the lower radius endpoint, t2 = p^-t2_exp the upper; an absent
// bound means the window is unbounded on that side.
struct ThickeningWindow {
    std::optional<LogExponent> t1_exp;
    std::optional<LogExponent> t2_exp;
    std::vector<WindowRow> rows;
};

// Solves the linear system in the exponent exactly: segment inequalities pinning the
// distances on their sides of s, plus dominance rows keeping each two-monomial
// distance on the branch it takes at the center. Throws when an inequality already
// fails at the center.
ThickeningWindow thickening_window(const PrimeContext& ctx, const RelativeRootSystem& rs,
                                   size_t alpha, const NormValue& r, const BasePoint& base);

struct WindowStatus {
    bool violated{false};
    bool equality{false};

    bool interior() const { return !violated && !equality; }
    bool boundary() const { return !violated && equality; }
};

WindowStatus window_status(const ThickeningWindow& w, const NormValue& t_y);

// Conjunction of two windows: rows concatenate, bounds tighten.
ThickeningWindow window_intersect(const ThickeningWindow& a, const ThickeningWindow& b);

// Fiber point with a center moving as a base monomial: the circle of the given
// radius around c * T_base^k on each fiber. Radius zero is a rigid point.
struct RelPoint {
    Rat c;
    long k{0};
    NormValue radius{NormValue::zero_value()};
};

// |R|(pt) on the fiber over t_y, where R is the split polynomial of the root system:
// prod_i max(|center - alpha_i|_y, radius)^(m_i).
NormValue relative_poly_norm(const PrimeContext& ctx, const RelativeRootSystem& rs,
                             const RelPoint& pt, const NormValue& t_y);

// Fiber affinoid {|R| rel r} together with extra linear constraints carried verbatim
// to every fiber (constraint centers are constants of the base).
struct ThickenedDomain {
    Rel rel{Rel::LE};
    std::vector<Constraint> extra;
};

struct FiberCheckReport {
    bool pass{true};
    long fibers{0};
    long points_per_fiber{0};
    std::string failure;
    long witness_fiber{-1};
};

// Samples base radii inside the window (the center first) and on each fiber checks:
// the evaluated distance matrix is an ultrametric, every root's circle radius exists
// and satisfies the shell identity exactly, membership of sampled points respects
// intersection-of-thickenings = thickening-of-intersection = the |R| = r shell, and,
// when neither domain carries extra constraints, the two domains cover the fiber.
FiberCheckReport thickened_domain_check(const PrimeContext& ctx, const RelativeRootSystem& rs,
                                        const NormValue& r, const ThickenedDomain& u,
                                        const ThickenedDomain& v, const ThickeningWindow& window,
                                        const BasePoint& base, long fibers, long points,
                                        std::uint64_t seed);

// Two-variable Gauss norm max |c| * t^m * s^n over the terms, exact.
struct BivariateTerm {
    long m{0};
    long n{0};
    Rat c;
};

NormValue bivariate_norm(const PrimeContext& ctx, const std::vector<BivariateTerm>& terms,
                         const NormValue& t, const NormValue& s);

} // namespace berk
