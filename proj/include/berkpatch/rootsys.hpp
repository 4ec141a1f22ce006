#pragma once

#include "berkpatch/norm.hpp"
#include "berkpatch/point.hpp"

#include <optional>
#include <vector>

namespace berk {

// A finite family of roots described by multiplicities and the ultrametric matrix of
// pairwise distances. Embedded rational positions are optional; when present they must
// reproduce the distance matrix.
struct RootSystem {
    std::vector<long> mult;
    std::vector<std::vector<NormValue>> dist;
    std::optional<std::vector<Rat>> embedded;

    size_t size() const { return mult.size(); }
};

// Throws std::invalid_argument when the matrix is not a strict ultrametric (symmetry,
// zero diagonal exactly on the diagonal, triangle max-inequality) or the embedding
// disagrees with it.
void validate_root_system(const PrimeContext& ctx, const RootSystem& rs);

// Radius of the fiber circle attached to the root alpha: the unique s with
//   s^m * prod_{j != alpha, with multiplicity} max(s, dist(alpha, j)) = r,
// where m = mult(alpha). Solved segment by segment in closed form; the returned value
// always satisfies the product identity exactly.
NormValue fiber_radii(const PrimeContext& ctx, const RootSystem& rs, size_t alpha, const NormValue& r);

// The defining product evaluated at a candidate s, for verification.
NormValue fiber_product(const PrimeContext& ctx, const RootSystem& rs, size_t alpha, const NormValue& s);

} // namespace berk
