#include "berkpatch/suite.hpp"

#include "berkpatch/constants.hpp"
#include "berkpatch/cover.hpp"
#include "berkpatch/json_conv.hpp"
#include "berkpatch/patch.hpp"
#include "berkpatch/rootsys.hpp"
#include "berkpatch/spectral.hpp"
#include "berkpatch/thicken.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

namespace berk {

namespace {

struct CriterionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& why) {
    if (!ok) throw CriterionFailure(why);
}

const NormValue R_IRR = NormValue::pos(Rat(0), Rat(1));
const NormValue R_IRR2 = NormValue::pos(Rat(0), Rat(2));

LaurentElement mk(const RingTag& tag, std::vector<std::pair<long, Rat>> terms) {
    LaurentElement f{tag, {}};
    for (auto& [n, c] : terms)
        if (c != 0) f.coeffs[n] = c;
    laurent_validate(f);
    return f;
}

// 1. Both splitting operators: exact sum and exact norm preservation, at volume.

void crit_split(const PrimeContext& ctx, std::uint64_t seed) {
    RingTag tag{R_IRR, RingMode::Circle};
    Rng rng(seed + 101);
    LaurentElement lproto = laurent_zero(tag);
    for (long i = 0; i < 1000; ++i) {
        LaurentElement c = RingTraits<LaurentElement>::sample(rng, lproto, -6, 6);
        auto [a, b] = split_laurent(c);
        expect(laurent_equal(laurent_add(laurent_retag(a, tag), laurent_retag(b, tag)), c),
               "a series split failed to sum back to its input");
        expect(norm_max(ring_norm(ctx, a), ring_norm(ctx, b)) == ring_norm(ctx, c),
               "a series split changed the norm");
    }
    const std::vector<Rat> mod{Rat(-5), Rat(0), Rat(1)};
    QuotientElement qproto = quotient_zero(tag, mod);
    for (long i = 0; i < 1000; ++i) {
        QuotientElement c = RingTraits<QuotientElement>::sample(rng, qproto, -6, 6);
        auto [d, s] = split_quotient(c);
        QuotientElement back =
            quotient_add(quotient_retag(d, tag), quotient_retag(from_outer_shape(s, mod), tag));
        expect(quotient_equal(back, c), "a quotient split failed to sum back to its input");
        expect(norm_max(ring_norm(ctx, d), shape_norm(ctx, s)) == ring_norm(ctx, c),
               "a quotient split changed the norm");
    }
}

// 2. Factorization certificates: every step inside the envelope, convergence within
// the iteration budget, and an independent exact verification of the product.

void crit_factor(const PrimeContext& ctx, std::uint64_t seed) {
    PatchTriple<LaurentElement> t;
    t.proto = laurent_zero(RingTag{R_IRR, RingMode::Circle});
    const ChartExpansion charts[2] = {
        expand_chart(ctx, GroupChart{1, Rat(1), Magnitude::one(), Rat(1), Rat(1)}),
        expand_chart(ctx, GroupChart{2, Rat(1), Magnitude::one(), Rat(1), Rat(1)}),
    };
    const NormValue tol = NormValue::pos(Rat(40));
    const NormValue cap = NormValue::pos(Rat(3));
    Rng rng(seed + 202);
    for (long i = 0; i < 100; ++i) {
        size_t n = 1 + (size_t)(i % 2);
        Mat<LaurentElement> a = mat_zero(n, t.proto);
        for (auto& e : a.a) e = RingTraits<LaurentElement>::sample(rng, t.proto, -3, 3);
        for (int guard = 0; !norm_le(mat_norm(ctx, a), cap); ++guard) {
            expect(guard < 64, "could not scale a target below the entry norm cap");
            for (auto& e : a.a) e = laurent_scale(e, Rat(5));
        }
        FactorResult<LaurentElement> fr = factor_near_identity(ctx, t, charts[n - 1], a, tol);
        for (const StepRecord& st : fr.cert.steps)
            expect(st.cond1 && st.cond2 && st.cond3, "a certificate condition failed mid-run");
        expect(fr.cert.conditions_ok, "certificate reports a condition failure");
        expect(fr.cert.iterations <= 80, "factorization exceeded the iteration budget");
        expect(norm_le(fr.cert.final_residual, tol), "final residual is above the tolerance");
        Mat<LaurentElement> id = mat_identity(n, t.proto);
        VerifyResult vr = verify_factorization(ctx, mat_add(id, a), mat_add(id, fr.u),
                                               mat_add(id, fr.v), tol);
        expect(vr.ok, "independent verification rejects the factorization");
        expect(vr.residual == fr.cert.final_residual,
               "verified residual differs from the certified one");
    }
}

// 3. Fiber radii against an independent segment-by-segment solve in exponent space.

void fill_ultrametric(Rng& rng, std::vector<std::vector<NormValue>>& d, std::vector<size_t> idx,
                      const LogExponent& diam) {
    if (idx.size() <= 1) return;
    size_t cut = 1 + (size_t)rng.below(idx.size() - 1);
    std::vector<size_t> left(idx.begin(), idx.begin() + cut), right(idx.begin() + cut, idx.end());
    for (size_t i : left)
        for (size_t j : right) {
            d[i][j] = NormValue::pos(diam);
            d[j][i] = d[i][j];
        }
    auto shrink = [&](const LogExponent& e) {
        return e + LogExponent{Rat(rng.range(1, 3)), Rat(rng.range(0, 2)) / Rat(2)};
    };
    fill_ultrametric(rng, d, left, shrink(diam));
    fill_ultrametric(rng, d, right, shrink(diam));
}

RootSystem random_root_system(Rng& rng, size_t n) {
    RootSystem rs;
    for (size_t i = 0; i < n; ++i) rs.mult.push_back(rng.range(1, 3));
    rs.dist.assign(n, std::vector<NormValue>(n, NormValue::zero_value()));
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    fill_ultrametric(rng, rs.dist, idx, {Rat(rng.range(-2, 1)), Rat(rng.range(0, 1))});
    return rs;
}

NormValue oracle_fiber_radius(const RootSystem& rs, size_t alpha, const NormValue& r) {
    std::vector<LogExponent> dx;
    for (size_t j = 0; j < rs.size(); ++j)
        if (j != alpha)
            for (long t = 0; t < rs.mult[j]; ++t) dx.push_back(rs.dist[alpha][j].e);
    std::sort(dx.begin(), dx.end(),
              [](const LogExponent& a, const LogExponent& b) { return log_compare(a, b) > 0; });
    long m = rs.mult[alpha];
    size_t n = dx.size();
    std::vector<NormValue> hits;
    for (size_t j0 = 0; j0 <= n; ++j0) {
        LogExponent tail{};
        for (size_t j = j0; j < n; ++j) tail = tail + dx[j];
        LogExponent xs = (r.e - tail) / Rat((long)j0 + m);
        if (j0 > 0 && log_compare(dx[j0 - 1], xs) <= 0) continue;
        if (j0 < n && log_compare(dx[j0], xs) > 0) continue;
        hits.push_back(NormValue::pos(xs));
    }
    expect(!hits.empty(), "the segment enumeration found no radius");
    for (const NormValue& h : hits)
        expect(h == hits.front(), "the segment enumeration found conflicting radii");
    return hits.front();
}

void crit_fiber(const PrimeContext& ctx, std::uint64_t seed) {
    Rng rng(seed + 303);
    for (long i = 0; i < 100; ++i) {
        size_t n = 1 + (size_t)rng.below(5);
        RootSystem rs = random_root_system(rng, n);
        validate_root_system(ctx, rs);
        size_t alpha = (size_t)rng.below(n);
        NormValue r = NormValue::pos(rng.rat(4), Rat(rng.range(-2, 2)) / Rat(2));
        NormValue s = fiber_radii(ctx, rs, alpha, r);
        expect(s == oracle_fiber_radius(rs, alpha, r),
               "fiber radius disagrees with the segment enumeration");
        expect(fiber_product(ctx, rs, alpha, s) == r, "the defining product identity fails");
    }
}

// 4. Quotient ring norm sandwiched between the spectral seminorm and C times it.

void crit_sandwich(const PrimeContext& ctx, std::uint64_t seed) {
    struct Case {
        std::vector<Rat> mod;
        std::vector<std::pair<Rat, long>> roots;
    };
    const std::vector<Case> cases{
        {{Rat(0), Rat(-5), Rat(1)}, {{Rat(0), 1}, {Rat(5), 1}}},
        {{Rat(2), Rat(-3), Rat(1)}, {{Rat(1), 1}, {Rat(2), 1}}},
        {{Rat(-2), Rat(1)}, {{Rat(2), 1}}},
    };
    const std::vector<NormValue> radii{NormValue::pos(Rat(3)), R_IRR, NormValue::pos(Rat(2), Rat(1))};
    Rng rng(seed + 404);
    for (const Case& cs : cases) {
        for (long i = 0; i < 50; ++i) {
            RingTag tag{radii[rng.below(radii.size())], RingMode::Circle};
            QuotientElement proto = quotient_zero(tag, cs.mod);
            QuotientElement f = RingTraits<QuotientElement>::sample(rng, proto, -3, 3);
            while (quotient_is_zero(f)) f = RingTraits<QuotientElement>::sample(rng, proto, -3, 3);
            NormValue rn = ring_norm(ctx, f);
            SpectralBound sb = spectral_enclosure(ctx, f, cs.roots);
            NormComparisonConstants nc = norm_constants(ctx, cs.mod, tag.r);
            expect(sb.enclosure.lo > 0, "spectral enclosure collapsed to zero");
            expect(compare_norm_rational(ctx, rn, sb.enclosure.lo) >= 0,
                   "ring norm fell below the spectral seminorm");
            expect(compare_norm_rational(ctx, rn, nc.C.hi * sb.enclosure.hi) <= 0,
                   "ring norm exceeds C times the spectral seminorm");
            if (cs.mod.size() == 2) {
                expect(sb.value == rn, "degree-1 spectral value must equal the ring norm");
                expect(nc.C.lo == 1 && nc.C.hi == 1, "degree-1 constant must be exactly 1");
            }
        }
    }
}

// 5. Linear domain algebra against pointwise membership, including the closed line.

GaussPoint random_sample_point(Rng& rng) {
    unsigned kind = (unsigned)rng.below(10);
    if (kind == 0) return GaussPoint::at_infinity();
    if (kind <= 3) return GaussPoint::rigid(rng.rat(8));
    Rat b = Rat(rng.range(-2, 2)) / Rat(2);
    return GaussPoint::circle(rng.rat(6), NormValue::pos(rng.rat(3), b));
}

std::vector<GaussPoint> distinct_type3_circles(const PrimeContext& ctx, Rng& rng, size_t k) {
    std::vector<GaussPoint> pts;
    while (pts.size() < k) {
        Rat b = 0;
        while (b == 0) b = Rat(rng.range(-2, 2)) / Rat(2);
        GaussPoint cand = GaussPoint::circle(rng.rat(4), NormValue::pos(rng.rat(3), b));
        bool fresh = true;
        for (const GaussPoint& have : pts) fresh = fresh && !point_equal(ctx, have, cand);
        if (fresh) pts.push_back(cand);
    }
    return pts;
}

void crit_domains(const PrimeContext& ctx, std::uint64_t seed, long samples) {
    Rng rng(seed + 505);

    // Zero boundary circles: both constructions must give the whole projective line.
    AffinoidDomain whole = canonical_form(ctx, {}, GaussPoint::rigid(Rat(0)));
    expect(domain_equal(ctx, whole, AffinoidDomain::whole_line()),
           "an empty boundary must rebuild the whole line");
    expect(domain_member(ctx, whole, GaussPoint::at_infinity()),
           "the whole line must contain the point at infinity");
    {
        NiceCover two = build_nice_cover(ctx, {GaussPoint::circle(Rat(0), R_IRR)});
        AffinoidDomain un = domain_union(ctx, two.pieces[0], two.pieces[1]);
        expect(un.constraints.empty() && domain_equal(ctx, un, AffinoidDomain::whole_line()),
               "the two sides of one circle must glue to the whole line");
    }

    for (long i = 0; i < 200; ++i) {
        NiceCover cover = build_nice_cover(ctx, distinct_type3_circles(ctx, rng, 1 + (size_t)(i % 3)));
        size_t e = (size_t)(i % (long)cover.edges.size());
        const AffinoidDomain& u = cover.pieces[(size_t)cover.edges[e].first];
        const AffinoidDomain& v = cover.pieces[(size_t)cover.edges[e].second];
        const GaussPoint& node = cover.nodes[e];
        AffinoidDomain un = domain_union(ctx, u, v);
        AffinoidDomain in = domain_intersect(ctx, u, v);

        expect(domain_subset(ctx, in, u) && domain_subset(ctx, u, un), "subset chain broke");
        expect(domain_equal(ctx, in, domain_intersect(ctx, v, u)), "intersection is not symmetric");
        expect(!domain_empty(ctx, in), "the shared node makes the intersection nonempty");
        expect(domain_member(ctx, in, node), "the node must lie in the intersection");

        std::vector<GaussPoint> pts = candidate_points(ctx, cover.pieces);
        while ((long)pts.size() < samples) pts.push_back(random_sample_point(rng));
        for (const GaussPoint& pt : pts) {
            bool mu = domain_member(ctx, u, pt), mv = domain_member(ctx, v, pt);
            expect(domain_member(ctx, un, pt) == (mu || mv), "union membership mismatch");
            expect(domain_member(ctx, in, pt) == (mu && mv), "intersection membership mismatch");
        }

        // Canonical reconstruction of both sides of a random circle, deterministically.
        Rat c = rng.rat(4);
        Rat b = 0;
        while (b == 0) b = Rat(rng.range(-2, 2)) / Rat(2);
        NormValue rv = NormValue::pos(rng.rat(3), b);
        GaussPoint eta = GaussPoint::circle(c, rv);
        AffinoidDomain disc{{Constraint{{-c, Rat(1)}, Rel::LE, rv}}, Certainty::Yes};
        AffinoidDomain outside{{Constraint{{-c, Rat(1)}, Rel::GE, rv}}, Certainty::Yes};
        AffinoidDomain r1 = canonical_form(ctx, {eta}, GaussPoint::rigid(c));
        AffinoidDomain r2 = canonical_form(ctx, {eta}, GaussPoint::at_infinity());
        expect(domain_equal(ctx, r1, disc), "canonical form of a disc is off");
        expect(domain_equal(ctx, r2, outside), "canonical form of a disc complement is off");
        expect(domain_to_json(r1) == domain_to_json(canonical_form(ctx, {eta}, GaussPoint::rigid(c))),
               "canonical form is not deterministic");
    }
}

// 6. Thickenings of fiber shells: tight windows, interior solves, and the membership
// identities on sampled fibers.

RelativeRootSystem random_rel_roots(Rng& rng) {
    while (true) {
        RelativeRootSystem rs;
        size_t n = 2 + (size_t)rng.below(3);
        for (size_t i = 0; i < n && rs.size() == i; ++i) {
            for (int tries = 0; tries < 20; ++tries) {
                Rat c = rng.rat(3);
                long k = c == 0 ? 0 : rng.range(0, 2);
                bool fresh = true;
                for (const RelRoot& have : rs.roots)
                    fresh = fresh && !(have.c == c && have.k == k);
                if (!fresh) continue;
                rs.roots.push_back({c, k, rng.range(1, 2)});
                break;
            }
        }
        if (rs.size() == n) {
            validate_relative_roots(rs);
            return rs;
        }
    }
}

void crit_thicken(const PrimeContext& ctx, std::uint64_t seed, long samples) {
    Rng rng(seed + 606);
    const Rat half_steps[5] = {Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 2), Rat(1)};
    for (long i = 0; i < 50; ++i) {
        RelativeRootSystem roots = random_rel_roots(rng);
        size_t alpha = (size_t)rng.below(roots.size());
        BasePoint base{NormValue::pos(half_steps[rng.below(5)], Rat(1))};

        bool done = false;
        for (int attempt = 0; attempt < 40 && !done; ++attempt) {
            NormValue s_target =
                NormValue::pos(Rat(rng.range(-6, 6)) / Rat(2), Rat(rng.range(0, 2)));
            NormValue r = relative_shell_norm(ctx, roots, alpha, s_target, base.t);
            try {
                expect(relative_fiber_radius(ctx, roots, alpha, r, base.t) == s_target,
                       "the strict solve does not invert the shell norm");

                ThickeningWindow w = thickening_window(ctx, roots, alpha, r, base);
                expect(window_status(w, base.t).interior(), "the base must be interior");
                if (w.t1_exp)
                    expect(window_status(w, NormValue::pos(*w.t1_exp)).boundary(),
                           "the lower radius endpoint is not tight");
                if (w.t2_exp)
                    expect(window_status(w, NormValue::pos(*w.t2_exp)).boundary(),
                           "the upper radius endpoint is not tight");

                for (int dir = -1; dir <= 1; dir += 2)
                    for (long j = 1; j <= 10; ++j) {
                        Rat off = Rat(j, 7);
                        NormValue ty;
                        for (int g = 0;; ++g) {
                            expect(g < 200, "could not land an interior fiber sample");
                            ty = NormValue::pos(base.t.e + LogExponent{off * dir, Rat(0)});
                            if (window_status(w, ty).interior()) break;
                            off /= 2;
                        }
                        NormValue sy = relative_fiber_radius(ctx, roots, alpha, r, ty);
                        expect(relative_shell_norm(ctx, roots, alpha, sy, ty) == r,
                               "shell identity fails inside the window");
                        RelPoint shell{roots.roots[alpha].c, roots.roots[alpha].k, sy};
                        expect(relative_poly_norm(ctx, roots, shell, ty) == r,
                               "|R| at the shell circle misses r");
                    }

                RootSystem abs;
                abs.mult.reserve(roots.size());
                for (const RelRoot& rt : roots.roots) abs.mult.push_back(rt.mult);
                abs.dist.assign(roots.size(), std::vector<NormValue>(roots.size(), NormValue::zero_value()));
                for (size_t a = 0; a < roots.size(); ++a)
                    for (size_t b = a + 1; b < roots.size(); ++b) {
                        abs.dist[a][b] = relative_distance(ctx, roots.roots[a], roots.roots[b], base.t);
                        abs.dist[b][a] = abs.dist[a][b];
                    }
                validate_root_system(ctx, abs);
                expect(fiber_radii(ctx, abs, alpha, r) == s_target,
                       "absolute and relative solves disagree at the base");

                FiberCheckReport rep = thickened_domain_check(
                    ctx, roots, r, ThickenedDomain{Rel::LE, {}}, ThickenedDomain{Rel::GE, {}}, w,
                    base, 5, samples, seed + 700 + (std::uint64_t)i);
                expect(rep.pass, "thickened membership check failed: " + rep.failure);
                done = true;
            } catch (const std::domain_error&) {
                // A tie between the shell and a root distance; pick another target.
            }
        }
        expect(done, "no strict shell radius found in 40 attempts");
    }
}

// 7. The worked norm formulas, routed through the command interface.

void crit_golden(const CommandRunner& runner) {
    auto eval = [&](const Json& req) {
        auto [code, body] = runner("norm-eval", req);
        expect(code == 0, "norm-eval exited with code " + std::to_string(code));
        expect(body.is_object() && body.value("status", "") == "ok",
               "norm-eval did not report ok");
        expect(body.contains("norm"), "norm-eval response lacks a norm");
        return body["norm"];
    };

    Json circle = eval(Json{
        {"kind", "series"},
        {"p", 5},
        {"element",
         Json{{"tag", Json{{"r", Json{{"kind", "pos"}, {"a", "0"}, {"b", "1"}}}, {"mode", "circle"}}},
              {"coeffs", Json{{"-2", "25"}, {"0", "3"}, {"3", "1/5"}}}}},
    });
    expect(circle == Json{{"kind", "pos"}, {"a", "2"}, {"b", "-2"}},
           "circle ring norm formula mismatch");

    Json shape = eval(Json{
        {"kind", "shape"},
        {"p", 5},
        {"r", Json{{"kind", "pos"}, {"a", "1"}, {"b", "0"}}},
        {"alpha", "0"},
        {"poles", Json::array({"0", "5"})},
        {"parts", Json::array({Json{{"pole", 0}, {"n", 1}, {"c", "1/5"}},
                               Json{{"pole", 1}, {"n", 2}, {"c", "25"}}})},
        {"taylor", Json::array({"2/3", "0", "7"})},
    });
    expect(shape == Json{{"kind", "pos"}, {"a", "-2"}, {"b", "0"}},
           "partial fraction norm formula mismatch");

    Json bivar = eval(Json{
        {"kind", "bivariate"},
        {"p", 5},
        {"terms", Json::array({Json{{"m", 1}, {"n", 0}, {"c", "1"}}, Json{{"m", 0}, {"n", 1}, {"c", "1"}},
                               Json{{"m", 1}, {"n", 1}, {"c", "5"}}})},
        {"t", Json{{"kind", "pos"}, {"a", "0"}, {"b", "1"}}},
        {"s", Json{{"kind", "pos"}, {"a", "0"}, {"b", "3"}}},
    });
    expect(bivar == Json{{"kind", "pos"}, {"a", "0"}, {"b", "1"}},
           "two-variable norm formula mismatch");
}

// 8. Cover construction, coloring, and propagation of transition matrices.

void crit_cover(const PrimeContext& ctx, std::uint64_t seed) {
    Rng rng(seed + 808);
    for (long i = 0; i < 30; ++i) {
        NiceCover cover =
            build_nice_cover(ctx, distinct_type3_circles(ctx, rng, 1 + (size_t)rng.below(3)));
        CheckReport rep = nice_cover_check(ctx, cover);
        std::string joined;
        for (const std::string& vio : rep.violations) joined += vio + "; ";
        expect(rep.valid, "built cover fails its own check: " + joined);
        ColoringResult col = parity_coloring(cover);
        expect(col.ok, "built cover is not two-colorable: " + col.reason);
        for (const auto& [a, b] : cover.edges)
            expect(col.colors[(size_t)a] != col.colors[(size_t)b],
                   "adjacent pieces share a parity color");
    }

    // Three concentric pieces, two glued circles, residuals certified at both.
    {
        NiceCover cover = build_nice_cover(
            ctx, {GaussPoint::circle(Rat(0), R_IRR2), GaussPoint::circle(Rat(0), R_IRR)});
        ColoringResult col = parity_coloring(cover);
        expect(col.ok && cover.nodes.size() == 2, "concentric cover setup broke");
        NormValue tol = NormValue::pos(Rat(25));
        std::vector<Mat<LaurentElement>> trans;
        for (const GaussPoint& nd : cover.nodes) {
            RingTag tag{nd.radius, RingMode::Circle};
            Mat<LaurentElement> m = mat_zero(2, laurent_zero(tag));
            if (norm_compare(nd.radius, R_IRR) == 0) {
                m.at(0, 0) = mk(tag, {{0, Rat(25)}});
                m.at(0, 1) = mk(tag, {{-1, Rat(125)}});
                m.at(1, 1) = mk(tag, {{0, Rat(25)}});
            } else {
                m.at(0, 0) = mk(tag, {{0, Rat(625)}});
                m.at(1, 0) = mk(tag, {{1, Rat(3125)}});
                m.at(1, 1) = mk(tag, {{0, Rat(625)}});
            }
            trans.push_back(std::move(m));
        }
        PropagateResult pr = propagate_over_cover(ctx, cover, col.colors, trans, tol);
        expect(pr.verification.size() == 2, "expected one report per node");
        for (const NodeReport& nr : pr.verification)
            expect(nr.ok && norm_le(nr.residual, tol), "a node residual exceeds the tolerance");
        for (const PatchingCertificate& cert : pr.certificates)
            expect(cert.conditions_ok, "a propagation certificate failed its conditions");
    }

    // One circle: propagation must agree with the direct factorization exactly.
    {
        NiceCover cover = build_nice_cover(ctx, {GaussPoint::circle(Rat(0), R_IRR)});
        ColoringResult col = parity_coloring(cover);
        expect(col.ok, "two-piece cover is not colorable");
        RingTag tag{R_IRR, RingMode::Circle};
        Mat<LaurentElement> m{1, {mk(tag, {{0, Rat(25)}, {-1, Rat(625)}})}};
        NormValue tol = NormValue::pos(Rat(30));
        PropagateResult pr = propagate_over_cover(ctx, cover, col.colors, {m}, tol);
        expect(pr.verification.size() == 1 && pr.verification[0].ok,
               "two-piece propagation failed verification");

        PatchTriple<LaurentElement> t;
        t.proto = laurent_zero(tag);
        auto direct = factor_near_identity(
            ctx, t, expand_chart(ctx, GroupChart{1, Rat(1), Magnitude::one(), Rat(1), Rat(1)}), m,
            tol * NormValue::pos(Rat(1)));
        size_t inner = domain_member(ctx, cover.pieces[0], GaussPoint::rigid(Rat(0))) ? 0 : 1;
        size_t outer = 1 - inner;
        expect(pr.pieces[inner].factors.size() == 1 && pr.pieces[outer].factors.size() == 1,
               "two-piece chains must hold one factor each");
        expect(!pr.pieces[inner].factors[0].inverted && pr.pieces[outer].factors[0].inverted,
               "two-piece chain orientation is wrong");
        expect(mat_equal(pr.pieces[inner].factors[0].off, direct.u) &&
                   mat_equal(pr.pieces[outer].factors[0].off, direct.v),
               "propagation differs from the direct factorization");
        expect(pr.certificates.size() == 1 &&
                   pr.certificates[0].iterations == direct.cert.iterations,
               "propagation used a different iteration count");
    }
}

} // namespace

SuiteReport run_acceptance_suite(std::uint64_t seed, long membership_samples,
                                 const CommandRunner& runner) {
    const PrimeContext ctx{Int(5)};
    long samples = std::max<long>(1, membership_samples);
    struct Entry {
        const char* name;
        std::function<void()> fn;
    };
    const std::vector<Entry> entries{
        {"split-contracts", [&] { crit_split(ctx, seed); }},
        {"factorization-certificates", [&] { crit_factor(ctx, seed); }},
        {"fiber-radii", [&] { crit_fiber(ctx, seed); }},
        {"norm-sandwich", [&] { crit_sandwich(ctx, seed); }},
        {"domain-algebra", [&] { crit_domains(ctx, seed, samples); }},
        {"thickening", [&] { crit_thicken(ctx, seed, samples); }},
        {"golden-formulas", [&] { crit_golden(runner); }},
        {"cover-machinery", [&] { crit_cover(ctx, seed); }},
    };
    SuiteReport rep;
    rep.pass = true;
    for (const Entry& e : entries) {
        CriterionOutcome oc;
        oc.name = e.name;
        auto t0 = std::chrono::steady_clock::now();
        try {
            e.fn();
            oc.pass = true;
        } catch (const std::exception& ex) {
            oc.pass = false;
            oc.detail = ex.what();
        }
        oc.millis = (long)std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        rep.pass = rep.pass && oc.pass;
        rep.criteria.push_back(std::move(oc));
    }
    return rep;
}

Json suite_report_to_json(const SuiteReport& rep) {
    Json list = Json::array();
    for (const CriterionOutcome& c : rep.criteria)
        list.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return Json{{"criteria", list}, {"pass", rep.pass}};
}

} // namespace berk
