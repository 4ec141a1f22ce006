#include "berkpatch/spectral.hpp"

#include "berkpatch/point.hpp"
#include "berkpatch/polyq.hpp"
#include "berkpatch/rootsys.hpp"

#include <algorithm>
#include <stdexcept>

namespace berk {

SpectralBound spectral_enclosure(const PrimeContext& ctx, const QuotientElement& f,
                                 const std::vector<std::pair<Rat, long>>& roots) {
    quotient_validate(f);
    if (f.tag.r.is_zero()) throw std::invalid_argument("ring radius must be positive");
    if (roots.empty()) throw std::invalid_argument("root list is empty");

    PolyQ product{Rat(1)};
    for (const auto& [c, mult] : roots) {
        if (mult < 1) throw std::invalid_argument("root multiplicity must be positive");
        product = poly_mul(product, poly_pow(PolyQ{-c, Rat(1)}, (unsigned long)mult));
    }
    if (product != f.modulus) throw std::invalid_argument("roots do not factor the modulus");

    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
            if (roots[i].first == roots[j].first) throw std::invalid_argument("duplicate root");

    // Clear negative powers of T: with K the worst one, f * P(X)^K is a plain
    // polynomial N(X); at any multiplicative point with |P| = r this costs an exact
    // factor r^K.
    long K = 0;
    for (const auto& comp : f.rep)
        for (const auto& [n, c] : comp.coeffs) K = std::max(K, -n);
    PolyQ N;
    for (size_t i = 0; i < f.rep.size(); ++i)
        for (const auto& [n, c] : f.rep[i].coeffs) {
            PolyQ term = poly_scale(poly_pow(f.modulus, (unsigned long)(n + K)), c);
            term.insert(term.begin(), i, Rat(0));
            N = poly_add(N, term);
        }

    RootSystem rs;
    for (const auto& [c, mult] : roots) rs.mult.push_back(mult);
    rs.dist.assign(roots.size(), std::vector<NormValue>(roots.size(), NormValue::zero_value()));
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = 0; j < roots.size(); ++j)
            if (i != j) rs.dist[i][j] = scalar_norm(ctx, roots[i].first - roots[j].first);
    std::vector<Rat> embedded;
    for (const auto& [c, mult] : roots) embedded.push_back(c);
    rs.embedded = std::move(embedded);
    validate_root_system(ctx, rs);

    NormValue rK = f.tag.r.pow_rat(Rat(K));
    NormValue best = NormValue::zero_value();
    for (size_t j = 0; j < roots.size(); ++j) {
        NormValue s = fiber_radii(ctx, rs, j, f.tag.r);
        NormValue nj = eval_gauss_norm(ctx, N, GaussPoint::circle(roots[j].first, s));
        best = norm_max(best, nj / rK);
    }
    return {best, norm_enclosure(ctx, best, 24)};
}

} // namespace berk
