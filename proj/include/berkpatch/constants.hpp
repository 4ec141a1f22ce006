#pragma once

#include "berkpatch/interval.hpp"
#include "berkpatch/laurent.hpp"
#include "berkpatch/polyq.hpp"

namespace berk {

struct ResultantBound {
    PolyQ res_poly; // Res(P(X) - T, P'(X)) as a polynomial in T
    Rat m;          // rational strictly below the circle norm of the resultant at radius r
};

// Sylvester resultant of P(X) - T against P'(X), computed by evaluating the rational
// determinant at enough sample values of T and interpolating. Needs degree >= 2; the
// degree-1 quotient is isometric to its base ring and has no constant to bound.
ResultantBound resultant_bound(const PrimeContext& ctx, const std::vector<Rat>& P, const NormValue& r);

// The chain of constants comparing the quotient ring norm with the spectral seminorm.
// v' solves the half-condition sum_i |beta_i| v' <= 1/2 with beta_0 = P(0) - T and
// beta_i the lower coefficients of P; C' = max(2, 2 v'^-d); s is a rational at least
// max(v', v''), v'' = max_i |beta_i|^(1/(d-i)); and
// C = max(1, C' * max_i s^-i * d^2 (2s)^(d^2-d) / m). Degree 1 gives C = 1 exactly.
struct NormComparisonConstants {
    RationalInterval vprime;
    RationalInterval cprime;
    Rat s{1};
    Rat m{1};
    RationalInterval C;
};

NormComparisonConstants norm_constants(const PrimeContext& ctx, const std::vector<Rat>& P, const NormValue& r);

} // namespace berk
