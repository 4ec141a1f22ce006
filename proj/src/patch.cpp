#include "berkpatch/patch.hpp"

#include "berkpatch/interval.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace berk {

ChartExpansion expand_chart(const PrimeContext& ctx, const GroupChart& c) {
    if (c.n == 0) throw std::invalid_argument("chart dimension must be positive");
    if (c.M < 1) throw std::invalid_argument("chart bound must be at least 1");
    ChartExpansion ex;
    ex.n = c.n;
    ex.M = c.M;
    ex.delta = c.delta;
    ex.coords.resize(c.n * c.n);
    long n = (long)c.n;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            auto& terms = ex.coords[(size_t)(i * n + j)];
            if (c.ulin != 0) terms.push_back({i * n + j, -1, c.ulin});
            if (c.vlin != 0) terms.push_back({-1, i * n + j, c.vlin});
            for (long k = 0; k < n; ++k) terms.push_back({i * n + k, k * n + j, Rat(1)});
        }

    // The expansion must restrict to the identity on each axis: coordinate (i, j)
    // needs the pure terms u_ij and v_ij, each with unit coefficient, and no other
    // degree-one contributions. This is what makes f(x, 0) = x and f(0, x) = x.
    for (size_t e = 0; e < ex.coords.size(); ++e) {
        bool u_ok = false, v_ok = false;
        for (const ChartTerm& t : ex.coords[e]) {
            long deg = (t.u >= 0 ? 1 : 0) + (t.v >= 0 ? 1 : 0);
            if (deg == 0) throw std::invalid_argument("chart has a constant term");
            if (deg == 1) {
                bool own = (t.u == (long)e || t.v == (long)e);
                if (!own || t.c != 1)
                    throw std::invalid_argument("chart does not restrict to the identity on each axis");
                (t.u >= 0 ? u_ok : v_ok) = true;
            }
            if (compare_norm_rational(ctx, scalar_norm(ctx, t.c), rat_pow(c.M, deg)) > 0)
                throw std::invalid_argument("chart coefficient exceeds the degree bound");
        }
        if (!u_ok || !v_ok) throw std::invalid_argument("chart is missing a linear term");
    }
    return ex;
}

Magnitude compute_epsilon(const Rat& d, const Rat& M, const Magnitude& delta) {
    if (d <= 0 || M <= 0) throw std::invalid_argument("threshold parameters must be positive");
    Magnitude c1 = Magnitude::from_rational(d / (2 * M));
    Magnitude c2 = Magnitude::from_rational(d * d * d) / Magnitude::from_rational(M).pow(Rat(4));
    Magnitude c3 = Magnitude::from_rational(d / 2) * delta;
    return magnitude_min(c1, magnitude_min(c2, c3));
}

namespace {

// Exponent and coefficient of the strictly largest term of f on its own circle, if
// the maximum is attained exactly once. On an irrational-exponent radius every
// nonzero element has one; on rational radii ties are possible.
std::optional<std::pair<long, Rat>> dominant_monomial(const PrimeContext& ctx, const LaurentElement& f) {
    if (laurent_is_zero(f)) return std::nullopt;
    NormValue best = ring_norm(ctx, f);
    long arg = 0;
    Rat coeff;
    int hits = 0;
    for (const auto& [e, c] : f.coeffs) {
        NormValue term = scalar_norm(ctx, c) * f.tag.r.pow_rat(Rat(e));
        if (norm_compare(term, best) == 0) {
            ++hits;
            arg = e;
            coeff = c;
        }
    }
    if (hits != 1) return std::nullopt;
    return std::make_pair(arg, coeff);
}

Mat<LaurentElement> mat_minor(const Mat<LaurentElement>& g, size_t row, size_t col) {
    Mat<LaurentElement> m{g.n - 1, {}};
    for (size_t i = 0; i < g.n; ++i) {
        if (i == row) continue;
        for (size_t j = 0; j < g.n; ++j) {
            if (j == col) continue;
            m.a.push_back(g.at(i, j));
        }
    }
    return m;
}

LaurentElement mat_det(const Mat<LaurentElement>& g) {
    if (g.n == 1) return g.a[0];
    LaurentElement acc = laurent_zero(g.a[0].tag);
    for (size_t j = 0; j < g.n; ++j) {
        if (laurent_is_zero(g.at(0, j))) continue;
        LaurentElement cof = laurent_mul(g.at(0, j), mat_det(mat_minor(g, 0, j)));
        acc = (j % 2 == 0) ? laurent_add(acc, cof) : laurent_sub(acc, cof);
    }
    return acc;
}

} // namespace

GeneralFactorResult factor_general(const PrimeContext& ctx, const PatchTriple<LaurentElement>& t,
                                   const ChartExpansion& chart, const Mat<LaurentElement>& g,
                                   const NormValue& tol) {
    if (g.n == 0 || g.n != chart.n) throw std::invalid_argument("matrix and chart dimension mismatch");
    const LaurentElement& proto = g.a[0];
    Mat<LaurentElement> id = mat_identity(g.n, proto);

    if (mat_equal(g, id)) return {id, id, {}, "identity"};

    Magnitude threshold = compute_epsilon(t.d, chart.M, chart.delta);
    Mat<LaurentElement> off = mat_sub(g, id);
    if (compare_norm_magnitude(ctx, mat_norm(ctx, off), threshold) < 0) {
        auto fr = factor_near_identity(ctx, t, chart, off, tol);
        return {mat_add(id, fr.u), mat_add(id, fr.v), std::move(fr.cert), "near-identity"};
    }

    // A diagonal of strictly dominant monomials is an exactly invertible scale; if it
    // brings the rest close to the identity, factor the reduced matrix instead.
    bool have_diag = true;
    Mat<LaurentElement> d = mat_zero(g.n, proto);
    Mat<LaurentElement> dinv = mat_zero(g.n, proto);
    for (size_t i = 0; i < g.n && have_diag; ++i) {
        auto dom = dominant_monomial(ctx, g.at(i, i));
        if (!dom) {
            have_diag = false;
            break;
        }
        d.at(i, i) = laurent_monomial(proto.tag, dom->first, dom->second);
        dinv.at(i, i) = laurent_monomial(proto.tag, -dom->first, 1 / dom->second);
    }
    if (have_diag) {
        Mat<LaurentElement> reduced = mat_sub(mat_mul(dinv, g), id);
        if (compare_norm_magnitude(ctx, mat_norm(ctx, reduced), threshold) < 0) {
            NormValue nd = mat_norm(ctx, d);
            auto fr = factor_near_identity(ctx, t, chart, reduced, tol / nd);
            return {mat_mul(d, mat_add(id, fr.u)), mat_add(id, fr.v), std::move(fr.cert),
                    "diagonal-reduction"};
        }
    }

    // Last resort: g = g * I, legitimate only when g is certifiably a unit. A
    // determinant with a strictly dominant monomial is a unit of the circle ring
    // (monomial times a near-unit), which certifies invertibility exactly.
    if (dominant_monomial(ctx, mat_det(g))) return {g, id, {}, "degenerate"};
    throw std::domain_error("matrix is not certifiably invertible on this circle");
}

ProductChain chain_inverse(const ProductChain& c) {
    ProductChain r;
    r.factors.reserve(c.factors.size());
    for (auto it = c.factors.rbegin(); it != c.factors.rend(); ++it)
        r.factors.push_back({it->off, !it->inverted});
    return r;
}

namespace {

// Drops factors with zero offset and adjacent mutually inverse pairs. Keeps chains
// short and, more importantly, keeps junction artifacts out of the expansions.
ProductChain chain_simplify(const ProductChain& c) {
    std::vector<ChainFactor> out;
    for (const ChainFactor& f : c.factors) {
        if (mat_is_zero(f.off)) continue;
        if (!out.empty() && out.back().inverted != f.inverted && mat_equal(out.back().off, f.off))
            out.pop_back();
        else
            out.push_back(f);
    }
    return {std::move(out)};
}

ProductChain chain_concat(const ProductChain& a, const ProductChain& b) {
    ProductChain r = a;
    r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
    return r;
}

} // namespace

ChainExpansion expand_chain(const PrimeContext& ctx, const ProductChain& chain, size_t n,
                            const NormValue& radius, const NormValue& tail_target) {
    if (radius.is_zero()) throw std::invalid_argument("expansion circle must have positive radius");
    RingTag tag{radius, RingMode::Circle};
    LaurentElement proto = laurent_zero(tag);
    ChainExpansion out{mat_identity(n, proto), NormValue::zero_value()};
    for (const ChainFactor& f : chain_simplify(chain).factors) {
        Mat<LaurentElement> m = mat_retag(f.off, tag);
        Mat<LaurentElement> step = mat_add(mat_identity(n, proto), m);
        NormValue rem = NormValue::zero_value();
        if (f.inverted) {
            NormValue nm = mat_norm(ctx, m);
            if (!norm_less(nm, NormValue::one()))
                throw std::domain_error("inverted chain factor is not contractive on this circle");
            // Geometric series for (I + m)^(-1), truncated once the omitted part is
            // certified below the target.
            Mat<LaurentElement> negm = mat_neg(m);
            Mat<LaurentElement> sum = mat_identity(n, proto);
            Mat<LaurentElement> pw = negm;
            rem = nm;
            long k = 0;
            while (!norm_le(rem, tail_target)) {
                if (++k > 4096) throw std::runtime_error("chain inversion failed to converge");
                sum = mat_add(sum, pw);
                pw = mat_mul(pw, negm);
                rem = rem * nm;
            }
            step = std::move(sum);
        }
        NormValue na = mat_norm(ctx, out.value);
        NormValue ns = mat_norm(ctx, step);
        out.tail = norm_max(na * rem, out.tail * norm_max(ns, rem));
        out.value = mat_mul(out.value, step);
    }
    return out;
}

PropagateResult propagate_over_cover(const PrimeContext& ctx, const NiceCover& cover,
                                     const std::vector<int>& coloring,
                                     const std::vector<Mat<LaurentElement>>& transitions,
                                     const NormValue& tol) {
    size_t pieces = cover.pieces.size();
    size_t nodes = cover.nodes.size();
    if (tol.is_zero()) throw std::invalid_argument("tolerance must be positive");
    if (coloring.size() != pieces) throw std::invalid_argument("coloring size mismatch");
    if (transitions.size() != nodes) throw std::invalid_argument("one transition per node required");
    if (cover.edges.size() != nodes) throw std::invalid_argument("malformed cover");
    for (size_t k = 0; k < nodes; ++k) {
        auto [a, b] = cover.edges[k];
        if (a < 0 || b < 0 || (size_t)a >= pieces || (size_t)b >= pieces || a == b)
            throw std::invalid_argument("malformed cover edge");
        if (coloring[(size_t)a] == coloring[(size_t)b])
            throw std::invalid_argument("adjacent pieces must carry opposite parities");
    }
    for (int c : coloring)
        if (c != 0 && c != 1) throw std::invalid_argument("coloring must be two-valued");

    // Only chains of concentric circles around zero are supported: every node must be
    // an irrational-exponent circle through zero, so its ring splits cleanly and the
    // pieces nest by radius.
    std::vector<NormValue> radii(nodes);
    for (size_t k = 0; k < nodes; ++k) {
        const GaussPoint& pt = cover.nodes[k];
        if (classify_point(pt) != 3)
            throw std::invalid_argument("gluing nodes must be circles with irrational exponent");
        if (!norm_le(scalar_norm(ctx, pt.center), pt.radius))
            throw std::invalid_argument("gluing nodes must be concentric around zero");
        radii[k] = pt.radius;
    }

    size_t n = 0;
    for (size_t k = 0; k < nodes; ++k) {
        if (transitions[k].n == 0 || transitions[k].a.size() != transitions[k].n * transitions[k].n)
            throw std::invalid_argument("malformed transition matrix");
        if (k == 0) n = transitions[k].n;
        if (transitions[k].n != n) throw std::invalid_argument("transition dimensions disagree");
        RingTag expect{radii[k], RingMode::Circle};
        for (const auto& e : transitions[k].a)
            if (!tag_equal(e.tag, expect))
                throw std::invalid_argument("transition entries must live on the node circle");
    }

    PropagateResult out;
    out.pieces.assign(pieces, {});
    if (nodes == 0) return out;

    std::vector<size_t> order(nodes);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t x, size_t y) { return norm_less(radii[x], radii[y]); });
    for (size_t i = 0; i + 1 < nodes; ++i)
        if (norm_compare(radii[order[i]], radii[order[i + 1]]) == 0)
            throw std::invalid_argument("gluing nodes must have distinct radii");

    int start = -1;
    for (size_t i = 0; i < pieces; ++i)
        if (domain_member(ctx, cover.pieces[i], GaussPoint::rigid(Rat(0)))) {
            start = (int)i;
            break;
        }
    if (start < 0) throw std::invalid_argument("no piece contains the origin");

    GroupChart gc;
    gc.n = n;
    ChartExpansion chart = expand_chart(ctx, gc);
    // Inner work runs one grade finer than the requested tolerance so the final
    // certified bounds, truncation tails included, land at or below it.
    NormValue inner = tol * NormValue::pos(Rat(1));

    std::vector<char> done(pieces, 0);
    done[(size_t)start] = 1;
    for (size_t k : order) {
        auto [ea, eb] = cover.edges[k];
        size_t w, nb;
        if (done[(size_t)ea] && !done[(size_t)eb]) {
            nb = (size_t)ea;
            w = (size_t)eb;
        } else if (done[(size_t)eb] && !done[(size_t)ea]) {
            nb = (size_t)eb;
            w = (size_t)ea;
        } else {
            throw std::invalid_argument("cover nodes do not form a concentric chain");
        }

        PatchTriple<LaurentElement> triple;
        triple.proto = laurent_zero(RingTag{radii[k], RingMode::Circle});
        ProductChain trans{{{transitions[k], false}}};

        if (coloring[w] == 1) {
            // Relation g = h_nb * h_w^(-1): expand h_nb^(-1) * g, split it as
            // (I+u)(I+v), absorb the left factor into every finished piece and keep
            // the right factor, inverted, as the new piece.
            ChainExpansion e =
                expand_chain(ctx, chain_concat(chain_inverse(out.pieces[nb]), trans), n, radii[k], inner);
            auto fr = factor_near_identity(ctx, triple, chart,
                                           mat_sub(e.value, mat_identity(n, triple.proto)), inner);
            out.certificates.push_back(fr.cert);
            for (size_t i = 0; i < pieces; ++i)
                if (done[i]) out.pieces[i].factors.push_back({fr.u, false});
            out.pieces[w].factors.push_back({fr.v, true});
        } else {
            // Relation g = h_w * h_nb^(-1): expand g * h_nb, split it with the outer
            // part leading, keep that part as the new piece and divide the finished
            // pieces by the trailing factor.
            ChainExpansion e = expand_chain(ctx, chain_concat(trans, out.pieces[nb]), n, radii[k], inner);
            auto fr = factor_near_identity(ctx, triple, chart,
                                           mat_sub(e.value, mat_identity(n, triple.proto)), inner, true);
            out.certificates.push_back(fr.cert);
            for (size_t i = 0; i < pieces; ++i)
                if (done[i]) out.pieces[i].factors.push_back({fr.v, true});
            out.pieces[w].factors.push_back({fr.u, false});
        }
        done[w] = 1;
    }

    for (auto& p : out.pieces) p = chain_simplify(p);

    // Independent check: at every node, multiply out the two adjacent pieces and
    // compare against the transition. The certified bound covers truncation tails.
    for (size_t k = 0; k < nodes; ++k) {
        auto [ea, eb] = cover.edges[k];
        size_t left = coloring[(size_t)ea] == 0 ? (size_t)ea : (size_t)eb;
        size_t right = left == (size_t)ea ? (size_t)eb : (size_t)ea;
        ChainExpansion rel = expand_chain(
            ctx, chain_concat(out.pieces[left], chain_inverse(out.pieces[right])), n, radii[k], inner);
        Mat<LaurentElement> target =
            mat_add(mat_identity(n, laurent_zero(RingTag{radii[k], RingMode::Circle})),
                    transitions[k]);
        NormValue resid = norm_max(mat_norm(ctx, mat_sub(rel.value, target)), rel.tail);
        out.verification.push_back({k, resid, norm_le(resid, tol)});
    }
    return out;
}

} // namespace berk
