#include "berkpatch/rootsys.hpp"

#include <algorithm>
#include <stdexcept>

namespace berk {

void validate_root_system(const PrimeContext& ctx, const RootSystem& rs) {
    size_t n = rs.size();
    if (rs.dist.size() != n) throw std::invalid_argument("distance matrix size mismatch");
    for (size_t i = 0; i < n; ++i) {
        if (rs.mult[i] <= 0) throw std::invalid_argument("root multiplicities must be positive");
        if (rs.dist[i].size() != n) throw std::invalid_argument("distance matrix must be square");
        if (!rs.dist[i][i].is_zero()) throw std::invalid_argument("diagonal distances must be zero");
        for (size_t j = 0; j < n; ++j) {
            if (i != j && rs.dist[i][j].is_zero())
                throw std::invalid_argument("distinct roots at distance zero");
            if (!(rs.dist[i][j] == rs.dist[j][i]))
                throw std::invalid_argument("distance matrix must be symmetric");
        }
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (norm_less(norm_max(rs.dist[i][j], rs.dist[j][k]), rs.dist[i][k]))
                    throw std::invalid_argument("distances violate the ultrametric inequality");
    if (rs.embedded) {
        if (rs.embedded->size() != n) throw std::invalid_argument("embedding size mismatch");
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (!(scalar_norm(ctx, (*rs.embedded)[i] - (*rs.embedded)[j]) == rs.dist[i][j]))
                    throw std::invalid_argument("embedding does not reproduce the distances");
    }
}

NormValue fiber_product(const PrimeContext& ctx, const RootSystem& rs, size_t alpha, const NormValue& s) {
    (void)ctx;
    NormValue prod = s.pow_rat(Rat(rs.mult[alpha]));
    for (size_t j = 0; j < rs.size(); ++j) {
        if (j == alpha) continue;
        NormValue term = norm_max(s, rs.dist[alpha][j]);
        prod = prod * term.pow_rat(Rat(rs.mult[j]));
    }
    return prod;
}

NormValue fiber_radii(const PrimeContext& ctx, const RootSystem& rs, size_t alpha, const NormValue& r) {
    if (alpha >= rs.size()) throw std::invalid_argument("root index out of range");
    if (r.is_zero()) throw std::invalid_argument("fiber radius must be positive");
    long m = rs.mult[alpha];

    // Distances to the other roots, expanded with multiplicity and sorted ascending.
    std::vector<NormValue> d;
    for (size_t j = 0; j < rs.size(); ++j) {
        if (j == alpha) continue;
        for (long t = 0; t < rs.mult[j]; ++t) d.push_back(rs.dist[alpha][j]);
    }
    std::sort(d.begin(), d.end(), [](const NormValue& x, const NormValue& y) { return norm_less(x, y); });
    size_t n = d.size();

    // On the segment where exactly the distances beyond j0 exceed s, the product
    // becomes s^(j0+m) * prod_{j>j0} d_j, which inverts in closed form. Scan the
    // segments; the increasing product makes the solution unique, and a boundary hit
    // can satisfy two adjacent windows with the same s.
    std::optional<NormValue> found;
    for (size_t j0 = 0; j0 <= n; ++j0) {
        NormValue tailprod = NormValue::one();
        for (size_t j = j0; j < n; ++j) tailprod = tailprod * d[j];
        NormValue s = (r / tailprod).pow_rat(Rat(1) / Rat((long)j0 + m));
        if (j0 > 0 && !norm_less(d[j0 - 1], s)) continue;
        if (j0 < n && norm_less(d[j0], s)) continue;
        if (!(fiber_product(ctx, rs, alpha, s) == r)) continue;
        if (found && !(*found == s))
            throw std::logic_error("fiber radius solution is not unique");
        found = s;
    }
    if (!found) throw std::domain_error("no fiber radius satisfies the product identity");
    return *found;
}

} // namespace berk
