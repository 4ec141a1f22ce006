#pragma once

#include "berkpatch/cover.hpp"
#include "berkpatch/magnitude.hpp"
#include "berkpatch/matrix.hpp"

#include <functional>
#include <string>

namespace berk {

// The two side rings, their common circle ring, and the splitting operator. The
// prototype element fixes the circle tag (and, for quotients, the modulus); d is the
// splitting constant: every split (a, b) of c must satisfy d*max(|a|,|b|) <= |c|.
// The split is pluggable so a deliberately broken one can be fed to the checker.
template <typename E>
struct PatchTriple {
    E proto;
    Rat d{1, 2};
    std::function<std::pair<E, E>(const E&)> split = [](const E& c) { return RingTraits<E>::split(c); };
};

struct SettingReport {
    bool pass{true};
    long samples{0};
    std::string failure;              // empty when pass
    long witness{-1};                 // sample index of the first violation
    NormValue worst_embed_ratio{NormValue::zero_value()}; // max |emb(x)| / |x|
    NormValue worst_split_ratio{NormValue::zero_value()}; // max max(|a|,|b|) / |c|
};

// Multiplication chart for GL_n near the identity, g = I + x. The ulin/vlin knobs
// exist so tests can hand in a malformed chart; the honest chart has both equal 1.
struct GroupChart {
    size_t n{1};
    Rat M{1};
    Magnitude delta{Magnitude::one()};
    Rat ulin{1};
    Rat vlin{1};
};

// One monomial of a coordinate function: c * u_(entry u) * v_(entry v), where an
// index of -1 means that side is absent. The GL chart only has degrees 1 and 2.
struct ChartTerm {
    long u{-1};
    long v{-1};
    Rat c{1};
};

struct ChartExpansion {
    size_t n{1};
    Rat M{1};
    Magnitude delta{Magnitude::one()};
    std::vector<std::vector<ChartTerm>> coords; // one list per entry (i, j), row major
};

// Expands f(u, v) = u + v + uv entrywise and validates the shape: each coordinate
// starts with its own u-entry plus its own v-entry with coefficient 1 (so f(x,0)=x and
// f(0,x)=x), and every coefficient norm is at most M^degree.
ChartExpansion expand_chart(const PrimeContext& ctx, const GroupChart& c);

// Evaluates an expansion termwise; used to cross-check the direct matrix formula.
template <typename E>
Mat<E> eval_chart(const ChartExpansion& ch, const Mat<E>& u, const Mat<E>& v) {
    if (u.n != ch.n || v.n != ch.n) throw std::invalid_argument("chart dimension mismatch");
    Mat<E> r = mat_zero(ch.n, u.a[0]);
    for (size_t e = 0; e < ch.coords.size(); ++e)
        for (const ChartTerm& t : ch.coords[e]) {
            E term = RingTraits<E>::const_like(u.a[0], t.c);
            if (t.u >= 0) term = RingTraits<E>::mul(term, u.a[(size_t)t.u]);
            if (t.v >= 0) term = RingTraits<E>::mul(term, v.a[(size_t)t.v]);
            r.a[e] = RingTraits<E>::add(r.a[e], term);
        }
    return r;
}

// The admissibility threshold min(d/2M, d^3/M^4, d*delta/2), exact.
Magnitude compute_epsilon(const Rat& d, const Rat& M, const Magnitude& delta);

struct StepRecord {
    long step{0};
    NormValue norm_u, norm_v;     // after the update
    NormValue delta_u, delta_v;   // the split parts added this step
    NormValue residual;           // |a - f(u, v)| after the update
    bool cond1{true}, cond2{true}, cond3{true};
};

struct PatchingCertificate {
    std::vector<StepRecord> steps;
    NormValue final_residual{NormValue::zero_value()};
    bool conditions_ok{true};
    long iterations{0};
};

template <typename E>
struct FactorResult {
    Mat<E> u, v; // offsets: the factorization is (I + u)(I + v) = I + a - e_final
    PatchingCertificate cert;
};

// Random-sample validation of the triple: exact scaling of norms, the ultrametric and
// submultiplicative laws, isometry of the two side embeddings, additivity and the
// d-inequality of the split. First violation stops the run with a witness index.
template <typename E>
SettingReport check_setting(const PrimeContext& ctx, const PatchTriple<E>& t, long samples,
                            std::uint64_t seed) {
    SettingReport rep;
    rep.samples = samples;
    Rng rng(seed);
    auto fail = [&](long i, std::string why) {
        rep.pass = false;
        rep.witness = i;
        rep.failure = std::move(why);
    };
    for (long i = 0; i < samples && rep.pass; ++i) {
        E x = RingTraits<E>::sample(rng, t.proto, -4, 4);
        E y = RingTraits<E>::sample(rng, t.proto, -4, 4);
        NormValue nx = RingTraits<E>::norm(ctx, x);
        NormValue ny = RingTraits<E>::norm(ctx, y);

        Rat lambda = rng.nonzero_rat(30);
        if (!(RingTraits<E>::norm(ctx, RingTraits<E>::scale(x, lambda)) == scalar_norm(ctx, lambda) * nx)) {
            fail(i, "scaling is not norm-multiplicative");
            break;
        }
        if (!norm_le(RingTraits<E>::norm(ctx, RingTraits<E>::add(x, y)), norm_max(nx, ny))) {
            fail(i, "ultrametric inequality fails");
            break;
        }
        if (!norm_le(RingTraits<E>::norm(ctx, RingTraits<E>::mul(x, y)), nx * ny)) {
            fail(i, "submultiplicativity fails");
            break;
        }

        auto [a, b] = t.split(x);
        NormValue na = RingTraits<E>::norm(ctx, a);
        NormValue nb = RingTraits<E>::norm(ctx, b);
        if (!RingTraits<E>::equal(RingTraits<E>::add(a, b), x)) {
            fail(i, "split parts do not sum back");
            break;
        }
        if (!nx.is_zero()) {
            NormValue big = norm_max(na, nb);
            if (!big.is_zero()) rep.worst_split_ratio = norm_max(rep.worst_split_ratio, big / nx);
            Magnitude lhs = Magnitude::from_rational(t.d) * Magnitude::from_norm(ctx, big);
            if (compare_norm_magnitude(ctx, nx, lhs) < 0) {
                fail(i, "split inequality d*max(|a|,|b|) <= |c| fails");
                break;
            }
        }
        // The side rings embed into the circle ring; the embedding must be an isometry.
        NormValue ea = RingTraits<E>::norm(ctx, RingTraits<E>::retag(a, t.proto.tag));
        NormValue eb = RingTraits<E>::norm(ctx, RingTraits<E>::retag(b, t.proto.tag));
        if (!(ea == na) || !(eb == nb)) {
            fail(i, "side embedding changes a norm");
            break;
        }
        if (!na.is_zero()) rep.worst_embed_ratio = norm_max(rep.worst_embed_ratio, ea / na);
        if (!nb.is_zero()) rep.worst_embed_ratio = norm_max(rep.worst_embed_ratio, eb / nb);
    }
    return rep;
}

// The successive-approximation factorization I + a = (I + u)(I + v) * (1 + error).
// u collects the left-side split parts, v the right-side ones; with outer_first the
// left side is the outer ring instead of the disc. Stops when |a - f(u,v)| <= tol.
// The certificate logs, per step, condition (1) |u|,|v| <= eps', condition (2)
// deltas <= eps'^((s+1)/2), condition (3) residual <= d*eps'^((s+2)/2), with
// eps' = |a|/d. A condition failure stops the run with conditions_ok = false.
template <typename E>
FactorResult<E> factor_near_identity(const PrimeContext& ctx, const PatchTriple<E>& t,
                                     const ChartExpansion& chart, const Mat<E>& a,
                                     const NormValue& tol, bool outer_first = false) {
    if (a.n != chart.n) throw std::invalid_argument("matrix and chart dimension mismatch");
    if (a.n == 0 || a.a.empty()) throw std::invalid_argument("empty matrix");
    Magnitude threshold = compute_epsilon(t.d, chart.M, chart.delta);
    NormValue na = mat_norm(ctx, a);
    if (compare_norm_magnitude(ctx, na, threshold) >= 0)
        throw std::domain_error("target norm is not strictly below the admissibility threshold");

    FactorResult<E> out{mat_zero(a.n, a.a[0]), mat_zero(a.n, a.a[0]), {}};
    if (mat_is_zero(a)) return out;

    Magnitude epsp = Magnitude::from_norm(ctx, na) / Magnitude::from_rational(t.d);
    Magnitude dmag = Magnitude::from_rational(t.d);
    Mat<E> e = a;
    NormValue ne = na;
    long s = 0;
    while (!norm_le(ne, tol)) {
        if (s > 1000) throw std::runtime_error("factorization failed to converge");
        Mat<E> alpha = mat_zero(a.n, a.a[0]);
        Mat<E> beta = mat_zero(a.n, a.a[0]);
        for (size_t k = 0; k < e.a.size(); ++k) {
            auto [da, ob] = t.split(e.a[k]);
            alpha.a[k] = outer_first ? ob : da;
            beta.a[k] = outer_first ? da : ob;
        }
        // a - f(u + alpha, v + beta) collapses exactly to -(u*beta + alpha*v + alpha*beta).
        Mat<E> enext = mat_neg(mat_add(mat_add(mat_mul(out.u, beta), mat_mul(alpha, out.v)),
                                       mat_mul(alpha, beta)));
        out.u = mat_add(out.u, alpha);
        out.v = mat_add(out.v, beta);

        StepRecord rec;
        rec.step = s;
        rec.delta_u = mat_norm(ctx, alpha);
        rec.delta_v = mat_norm(ctx, beta);
        rec.norm_u = mat_norm(ctx, out.u);
        rec.norm_v = mat_norm(ctx, out.v);
        rec.residual = mat_norm(ctx, enext);
        rec.cond1 = compare_norm_magnitude(ctx, rec.norm_u, epsp) <= 0 &&
                    compare_norm_magnitude(ctx, rec.norm_v, epsp) <= 0;
        Magnitude step_env = epsp.pow(Rat(s + 1) / Rat(2));
        rec.cond2 = compare_norm_magnitude(ctx, rec.delta_u, step_env) <= 0 &&
                    compare_norm_magnitude(ctx, rec.delta_v, step_env) <= 0;
        Magnitude res_env = dmag * epsp.pow(Rat(s + 2) / Rat(2));
        rec.cond3 = compare_norm_magnitude(ctx, rec.residual, res_env) <= 0;
        bool ok = rec.cond1 && rec.cond2 && rec.cond3;
        out.cert.steps.push_back(rec);
        e = std::move(enext);
        ne = rec.residual;
        ++s;
        if (!ok) {
            out.cert.conditions_ok = false;
            break;
        }
    }
    out.cert.final_residual = ne;
    out.cert.iterations = s;
    return out;
}

struct VerifyResult {
    bool ok{false};
    NormValue residual{NormValue::zero_value()};
};

// Exact residual norm |g - g1*g2| against the tolerance. Full matrices, any content.
template <typename E>
VerifyResult verify_factorization(const PrimeContext& ctx, const Mat<E>& g, const Mat<E>& g1,
                                  const Mat<E>& g2, const NormValue& tol) {
    VerifyResult r;
    r.residual = mat_norm(ctx, mat_sub(g, mat_mul(g1, g2)));
    r.ok = norm_le(r.residual, tol);
    return r;
}

struct GeneralFactorResult {
    Mat<LaurentElement> g1, g2; // full matrices, g = g1 * g2 up to the residual
    PatchingCertificate cert;
    std::string path; // which reduction produced the answer
};

// Factorization of an invertible matrix that need not be near the identity: peel off
// the identity case, delegate near-identity targets, reduce through a dominant
// monomial diagonal when one exists, and otherwise fall back to the documented
// degenerate factorization g = g * I (legal whenever invertibility is certifiable).
GeneralFactorResult factor_general(const PrimeContext& ctx, const PatchTriple<LaurentElement>& t,
                                   const ChartExpansion& chart, const Mat<LaurentElement>& g,
                                   const NormValue& tol);

// A piece element of the patched cover: an ordered product of factors (I + m)^(+-1).
// Factors are matrices of finite Laurent polynomials; the chain multiplies left to
// right. Inverses are exact at the chain level (reverse and flip), so interior gluing
// relations survive every later correction without error.
struct ChainFactor {
    Mat<LaurentElement> off;
    bool inverted{false};
};

struct ProductChain {
    std::vector<ChainFactor> factors;
};

ProductChain chain_inverse(const ProductChain& c);

struct ChainExpansion {
    Mat<LaurentElement> value;           // finite part on the chosen circle
    NormValue tail{NormValue::zero_value()}; // certified bound on the omitted part
};

// Multiplies the chain out on the circle |T| = radius: direct factors exactly,
// inverted ones through the geometric series truncated below tail_target.
ChainExpansion expand_chain(const PrimeContext& ctx, const ProductChain& chain, size_t n,
                            const NormValue& radius, const NormValue& tail_target);

struct NodeReport {
    size_t node{0};
    NormValue residual{NormValue::zero_value()}; // certified bound, truncation included
    bool ok{false};
};

struct PropagateResult {
    std::vector<ProductChain> pieces;              // indexed like cover.pieces
    std::vector<PatchingCertificate> certificates; // one per glued node, processing order
    std::vector<NodeReport> verification;          // one per node, cover order
};

// Solves the gluing problem on a nice cover whose nodes are concentric circles around
// zero: finds one group element per piece such that at every node the transition
// equals (parity-0 piece) * (parity-1 piece)^(-1) up to tol, verified independently by
// expanding both chains at the node circle. transitions[k] is the offset from the
// identity of the transition at cover.nodes[k].
PropagateResult propagate_over_cover(const PrimeContext& ctx, const NiceCover& cover,
                                     const std::vector<int>& coloring,
                                     const std::vector<Mat<LaurentElement>>& transitions,
                                     const NormValue& tol);

} // namespace berk
