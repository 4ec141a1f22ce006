#pragma once

#include "berkpatch/domain.hpp"

#include <string>
#include <utility>
#include <vector>

namespace berk {

// A cover of the projective line by affinoid pieces glued along single circle points.
// edges[k] names the two piece indices that meet exactly at nodes[k].
struct NiceCover {
    std::vector<AffinoidDomain> pieces;
    std::vector<GaussPoint> nodes;
    std::vector<std::pair<int, int>> edges;
};

// Cover by the connected components of the complement of the given circle points,
// closed up: one piece per disc (minus the open discs of its children in the nesting
// order) plus the outer piece. Points must be distinct finite circles.
NiceCover build_nice_cover(const PrimeContext& ctx, const std::vector<GaussPoint>& points);

struct CheckReport {
    bool valid{true};
    std::vector<std::string> violations;
};

// Validates the defining clauses: certified connected nonempty pieces, pairwise
// intersections empty or a single type 3 node shared by exactly the listed pair, and
// the union covering the whole line. Linear constraints only.
CheckReport nice_cover_check(const PrimeContext& ctx, const NiceCover& cover);

struct ColoringResult {
    bool ok{true};
    std::vector<int> colors;
    std::string reason;
};

// Deterministic two-coloring of the adjacency graph (breadth first from the lowest
// piece index of each component); fails with a witness cycle description when the
// graph is not bipartite.
ColoringResult parity_coloring(const NiceCover& cover);

// Graphviz rendering with constraint labels on pieces and circle labels on edges.
std::string cover_dot(const PrimeContext& ctx, const NiceCover& cover);

} // namespace berk
