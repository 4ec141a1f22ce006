#pragma once

#include "berkpatch/interval.hpp"
#include "berkpatch/quotient.hpp"

#include <utility>
#include <vector>

namespace berk {

struct SpectralBound {
    NormValue value;            // the spectral seminorm, an exact norm value
    RationalInterval enclosure; // rational bracket of it at fixed precision
};

// Spectral seminorm of a quotient element whose modulus splits as
// prod_j (X - c_j)^{m_j} over the rationals. The seminorm is the max of |f| over the
// fiber Shilov points, one per distinct root, with the fiber radius solved from the
// defining product identity. Clearing T^-K against P(X)^K turns f into an honest
// polynomial, where the disc-point norm formula is exact, so the result is exact too.
SpectralBound spectral_enclosure(const PrimeContext& ctx, const QuotientElement& f,
                                 const std::vector<std::pair<Rat, long>>& roots);

} // namespace berk
