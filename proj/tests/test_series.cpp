#include <doctest.h>

#include "berkpatch/constants.hpp"
#include "berkpatch/laurent.hpp"
#include "berkpatch/point.hpp"
#include "berkpatch/quotient.hpp"
#include "berkpatch/rng.hpp"
#include "berkpatch/spectral.hpp"

using namespace berk;

static const PrimeContext P5{Int(5)};

// Radius 5^-sqrt2, the branchless choice used throughout.
static const NormValue R_IRR = NormValue::pos(Rat(0), Rat(1));
static const RingTag CT{R_IRR, RingMode::Circle};
static const RingTag DT{R_IRR, RingMode::Disc};
static const RingTag OT{R_IRR, RingMode::Outer};

static LaurentElement mk(const RingTag& tag, std::vector<std::pair<long, Rat>> terms) {
    LaurentElement f{tag, {}};
    for (auto& [n, c] : terms)
        if (c != 0) f.coeffs[n] = c;
    laurent_validate(f);
    return f;
}

static LaurentElement random_laurent(Rng& rng, const RingTag& tag, long lo, long hi) {
    LaurentElement f{tag, {}};
    long terms = rng.range(0, 5);
    for (long t = 0; t < terms; ++t) f.coeffs[rng.range(lo, hi)] = rng.nonzero_rat(20);
    return f;
}

static QuotientElement random_quotient(Rng& rng, const RingTag& tag, const std::vector<Rat>& mod,
                                       long lo, long hi) {
    std::vector<LaurentElement> rep;
    for (size_t i = 0; i + 1 < mod.size(); ++i) rep.push_back(random_laurent(rng, tag, lo, hi));
    return quotient_make(tag, mod, std::move(rep));
}

static QuotientElement quotient_one(const RingTag& tag, const std::vector<Rat>& mod) {
    QuotientElement f = quotient_zero(tag, mod);
    f.rep[0] = laurent_const(tag, Rat(1));
    return f;
}

TEST_CASE("Laurent ring norms across the three modes") {
    // 5T + 2 + 3/T on |T| = 5^-sqrt2: the T^-1 term wins with norm 5^sqrt2.
    LaurentElement f = mk(CT, {{1, Rat(5)}, {0, Rat(2)}, {-1, Rat(3)}});
    CHECK(ring_norm(P5, f) == NormValue::pos(Rat(0), Rat(-1)));

    // Monomial exponents outside a one-sided ring are rejected.
    CHECK_THROWS_AS(laurent_monomial(DT, -1, Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(laurent_monomial(OT, 2, Rat(1)), std::invalid_argument);

    Rng rng(401);
    for (int round = 0; round < 100; ++round) {
        // The disc inclusion into the circle ring is an isometry, same for outer.
        LaurentElement d = random_laurent(rng, DT, 0, 6);
        CHECK(ring_norm(P5, laurent_retag(d, CT)) == ring_norm(P5, d));
        LaurentElement o = random_laurent(rng, OT, -6, 0);
        CHECK(ring_norm(P5, laurent_retag(o, CT)) == ring_norm(P5, o));

        // Shrinking the disc radius can only shrink a disc element's norm.
        LaurentElement small = laurent_retag(d, RingTag{NormValue::pos(Rat(2)), RingMode::Disc});
        CHECK(norm_le(ring_norm(P5, small), ring_norm(P5, d)));
    }
}

TEST_CASE("splitting a circle element is exact and norm sharp") {
    LaurentElement f = mk(CT, {{2, Rat(1, 5)}, {0, Rat(7)}, {-3, Rat(50)}});
    auto [a, b] = split_laurent(f);
    CHECK(a.tag.mode == RingMode::Disc);
    CHECK(b.tag.mode == RingMode::Outer);
    CHECK(a.coeffs == std::map<long, Rat>{{0, Rat(7)}, {2, Rat(1, 5)}});
    CHECK(b.coeffs == std::map<long, Rat>{{-3, Rat(50)}});

    Rng rng(402);
    for (int round = 0; round < 300; ++round) {
        LaurentElement c = random_laurent(rng, CT, -5, 5);
        auto [d, o] = split_laurent(c);
        laurent_validate(d);
        laurent_validate(o);
        for (const auto& [n, x] : d.coeffs) CHECK(n >= 0);
        for (const auto& [n, x] : o.coeffs) CHECK(n < 0);
        // The parts recombine exactly and the larger part carries the full norm.
        LaurentElement back = laurent_add(laurent_retag(d, CT), laurent_retag(o, CT));
        CHECK(laurent_equal(back, c));
        CHECK(norm_max(ring_norm(P5, d), ring_norm(P5, o)) == ring_norm(P5, c));
    }
}

TEST_CASE("Laurent multiplication is multiplicative for the ring norm") {
    Rng rng(403);
    for (int round = 0; round < 120; ++round) {
        LaurentElement f = random_laurent(rng, CT, -4, 4);
        LaurentElement g = random_laurent(rng, CT, -4, 4);
        CHECK(ring_norm(P5, laurent_mul(f, g)) == ring_norm(P5, f) * ring_norm(P5, g));
        LaurentElement fd = random_laurent(rng, DT, 0, 5);
        LaurentElement gd = random_laurent(rng, DT, 0, 5);
        CHECK(ring_norm(P5, laurent_mul(fd, gd)) == ring_norm(P5, fd) * ring_norm(P5, gd));
    }
}

TEST_CASE("quotient reduction by a monic modulus") {
    const std::vector<Rat> mod{Rat(-5), Rat(0), Rat(1)}; // X^2 - 5

    QuotientElement x = quotient_make(CT, mod, {laurent_zero(CT), laurent_const(CT, Rat(1))});
    CHECK(ring_norm(P5, x) == NormValue::one());

    // X * X reduces through X^2 = T + 5.
    QuotientElement xx = quotient_mul(x, x);
    CHECK(xx.rep[0].coeffs == std::map<long, Rat>{{0, Rat(5)}, {1, Rat(1)}});
    CHECK(laurent_is_zero(xx.rep[1]));

    // (X + 1)^2 = (T + 6) + 2X.
    QuotientElement u = quotient_make(CT, mod, {laurent_const(CT, Rat(1)), laurent_const(CT, Rat(1))});
    QuotientElement uu = quotient_mul(u, u);
    CHECK(uu.rep[0].coeffs == std::map<long, Rat>{{0, Rat(6)}, {1, Rat(1)}});
    CHECK(uu.rep[1].coeffs == std::map<long, Rat>{{0, Rat(2)}});

    Rng rng(404);
    const std::vector<std::vector<Rat>> moduli{
        {Rat(-5), Rat(0), Rat(1)},
        {Rat(2), Rat(-3), Rat(1)},
        {Rat(1, 2), Rat(0), Rat(4), Rat(1)},
        {Rat(-2), Rat(1)},
    };
    for (int round = 0; round < 30; ++round) {
        const auto& m = moduli[rng.below(moduli.size())];
        QuotientElement f = random_quotient(rng, CT, m, -3, 3);
        QuotientElement g = random_quotient(rng, CT, m, -3, 3);
        QuotientElement h = random_quotient(rng, CT, m, -3, 3);
        CHECK(quotient_equal(quotient_mul(f, quotient_one(CT, m)), f));
        CHECK(quotient_equal(quotient_mul(f, g), quotient_mul(g, f)));
        CHECK(quotient_equal(quotient_mul(quotient_mul(f, g), h), quotient_mul(f, quotient_mul(g, h))));
        CHECK(quotient_equal(quotient_mul(f, quotient_add(g, h)),
                             quotient_add(quotient_mul(f, g), quotient_mul(f, h))));
        CHECK(norm_le(ring_norm(P5, quotient_mul(f, g)), ring_norm(P5, f) * ring_norm(P5, g)));
    }

    // No reduction fires below degree d, so monomial products have exact norms.
    for (int round = 0; round < 50; ++round) {
        const auto& m = moduli[2]; // degree 3
        long i = rng.range(0, 1), j = rng.range(0, 1);
        QuotientElement f = quotient_zero(CT, m);
        f.rep[i] = mk(CT, {{rng.range(-2, 2), rng.nonzero_rat(30)}});
        QuotientElement g = quotient_zero(CT, m);
        g.rep[j] = mk(CT, {{rng.range(-2, 2), rng.nonzero_rat(30)}});
        CHECK(ring_norm(P5, quotient_mul(f, g)) == ring_norm(P5, f) * ring_norm(P5, g));
    }
}

TEST_CASE("outer representative shape survives multiplication") {
    Rng rng(405);
    const std::vector<std::vector<Rat>> moduli{
        {Rat(-5), Rat(0), Rat(1)},
        {Rat(1, 3), Rat(-7), Rat(2), Rat(1)},
    };
    for (int round = 0; round < 60; ++round) {
        const auto& m = moduli[round % 2];
        std::vector<LaurentElement> fr, gr;
        for (size_t i = 0; i + 1 < m.size(); ++i) {
            fr.push_back(random_laurent(rng, OT, -4, i == 0 ? 0 : -1));
            gr.push_back(random_laurent(rng, OT, -4, i == 0 ? 0 : -1));
        }
        QuotientElement f = quotient_make(OT, m, std::move(fr));
        QuotientElement g = quotient_make(OT, m, std::move(gr));
        // quotient_mul validates the result's shape internally; it must not throw.
        QuotientElement fg = quotient_mul(f, g);
        quotient_validate(fg);
        // And the shape form must round-trip it.
        CHECK(quotient_equal(from_outer_shape(to_outer_shape(fg), m), fg));
    }
}

TEST_CASE("splitting a quotient element into disc and outer shape parts") {
    const std::vector<Rat> mod{Rat(-5), Rat(0), Rat(1)};
    // c = (T + 1/T) + (1/T) X.
    QuotientElement c = quotient_make(
        CT, mod, {mk(CT, {{1, Rat(1)}, {-1, Rat(1)}}), mk(CT, {{-1, Rat(1)}})});
    auto [a, s] = split_quotient(c);
    CHECK(a.tag.mode == RingMode::Disc);
    CHECK(a.rep[0].coeffs == std::map<long, Rat>{{1, Rat(1)}});
    CHECK(laurent_is_zero(a.rep[1]));
    CHECK(s.a00 == 0);
    REQUIRE(s.tail.size() == 2);
    CHECK(s.tail[0] == std::tuple<long, size_t, Rat>{1, 0, Rat(1)});
    CHECK(s.tail[1] == std::tuple<long, size_t, Rat>{1, 1, Rat(1)});
    CHECK(ring_norm(P5, a) == R_IRR);
    CHECK(shape_norm(P5, s) == NormValue::pos(Rat(0), Rat(-1)));
    CHECK(shape_norm(P5, s) == ring_norm(P5, c));

    Rng rng(406);
    for (int round = 0; round < 200; ++round) {
        QuotientElement q = random_quotient(rng, CT, mod, -4, 4);
        auto [d, sh] = split_quotient(q);
        QuotientElement o = from_outer_shape(sh, mod);
        QuotientElement back = quotient_add(quotient_retag(d, CT), quotient_retag(o, CT));
        CHECK(quotient_equal(back, q));
        CHECK(norm_max(ring_norm(P5, d), shape_norm(P5, sh)) == ring_norm(P5, q));
        CHECK(shape_norm(P5, sh) == ring_norm(P5, o));
    }
}

TEST_CASE("inverting near-unit series with certified tails") {
    // h = 2 + T on the disc of radius 5^-sqrt2: e = -T/2 has norm 5^-sqrt2, so four
    // powers push the tail below 5^-5.
    LaurentElement h = mk(DT, {{0, Rat(2)}, {1, Rat(1)}});
    InvertResult res = invert_near_unit(P5, h, NormValue::pos(Rat(5)));
    CHECK(res.inverse.coeffs ==
          std::map<long, Rat>{{0, Rat(1, 2)}, {1, Rat(-1, 4)}, {2, Rat(1, 8)}, {3, Rat(-1, 16)}});
    CHECK(res.tail == NormValue::pos(Rat(0), Rat(4)));
    LaurentElement residual = laurent_sub(laurent_mul(h, res.inverse), laurent_const(DT, Rat(1)));
    CHECK(norm_le(ring_norm(P5, residual), NormValue::pos(Rat(5))));

    // A constant inverts exactly with no tail at all.
    InvertResult c = invert_near_unit(P5, laurent_const(DT, Rat(6)), NormValue::pos(Rat(40)));
    CHECK(c.inverse.coeffs == std::map<long, Rat>{{0, Rat(1, 6)}});
    CHECK(c.tail.is_zero());

    // 1 + 5/T diverges on |T| = 5^-sqrt2 where |5/T| = 5^(sqrt2-1) > 1, but converges
    // once the circle moves out to |T| = 5^-1/2.
    LaurentElement bad = mk({R_IRR, RingMode::Outer}, {{0, Rat(1)}, {-1, Rat(5)}});
    CHECK_THROWS_AS(invert_near_unit(P5, bad, NormValue::pos(Rat(5))), std::domain_error);
    RingTag half{NormValue::pos(Rat(1, 2)), RingMode::Outer};
    LaurentElement ok = mk(half, {{0, Rat(1)}, {-1, Rat(5)}});
    InvertResult r2 = invert_near_unit(P5, ok, NormValue::pos(Rat(4)));
    LaurentElement res2 = laurent_sub(laurent_mul(ok, r2.inverse), laurent_const(half, Rat(1)));
    CHECK(norm_le(ring_norm(P5, res2), NormValue::pos(Rat(4))));

    // No constant term means nothing to invert around.
    CHECK_THROWS_AS(invert_near_unit(P5, mk(DT, {{1, Rat(1)}}), NormValue::pos(Rat(2))),
                    std::domain_error);
}

TEST_CASE("series evaluation with declared coefficient bounds") {
    auto ones = [](const std::vector<long>&) { return Rat(1); };

    // Geometric series at 5: the truncated sum stays within the tail of -1/4.
    SeriesSum geo = eval_series(P5, 1, ones, Rat(1), {Rat(5)}, Magnitude::from_norm(P5, NormValue::pos(Rat(6))));
    CHECK(!geo.exact);
    CHECK(geo.value == Rat(3906)); // 1 + 5 + ... + 5^5
    NormValue err = scalar_norm(P5, geo.value + Rat(1, 4));
    CHECK(compare_norm_magnitude(P5, err, geo.tail) <= 0);

    // A declared polynomial stream sums exactly.
    auto cubic = [](const std::vector<long>& l) {
        static const Rat table[]{Rat(1), Rat(2), Rat(3), Rat(4)};
        return table[l[0]];
    };
    SeriesSum poly = eval_series(P5, 1, cubic, Rat(1), {Rat(5)}, Magnitude::from_norm(P5, NormValue::pos(Rat(40))), 3);
    CHECK(poly.exact);
    CHECK(poly.value == Rat(586));

    // The two-variable group chart u + v + uv is a polynomial stream of degree 2.
    auto chart = [](const std::vector<long>& l) {
        long du = l[0], dv = l[1];
        if ((du == 1 && dv == 0) || (du == 0 && dv == 1) || (du == 1 && dv == 1)) return Rat(1);
        return Rat(0);
    };
    SeriesSum two = eval_series(P5, 2, chart, Rat(1), {Rat(5), Rat(25)},
                                Magnitude::from_norm(P5, NormValue::pos(Rat(30))), 2);
    CHECK(two.exact);
    CHECK(two.value == Rat(155));

    // Bound M = 5 rejects |a| = 1/5 (not strictly inside) but accepts |a| = 1/25.
    CHECK_THROWS_AS(eval_series(P5, 1, ones, Rat(5), {Rat(5)}, Magnitude::from_norm(P5, NormValue::pos(Rat(6)))),
                    std::domain_error);
    SeriesSum okm = eval_series(P5, 1, ones, Rat(5), {Rat(25)}, Magnitude::from_norm(P5, NormValue::pos(Rat(4))));
    CHECK(okm.value == Rat(16276)); // 1 + 25 + 625 + 15625
    CHECK(magnitude_compare(okm.tail, Magnitude::from_norm(P5, NormValue::pos(Rat(4)))) == 0);

    // A coefficient above the declared bound is an error, not a wrong answer.
    auto liar = [](const std::vector<long>& l) { return l[0] == 1 ? Rat(1, 5) : Rat(1); };
    CHECK_THROWS_AS(eval_series(P5, 1, liar, Rat(1), {Rat(5)}, Magnitude::from_norm(P5, NormValue::pos(Rat(2)))),
                    std::invalid_argument);

    // All-zero arguments short-circuit to the constant term, exactly.
    SeriesSum zero = eval_series(P5, 1, ones, Rat(1), {Rat(0)}, Magnitude::from_norm(P5, NormValue::pos(Rat(2))));
    CHECK(zero.exact);
    CHECK(zero.value == Rat(1));
}

TEST_CASE("resultant bound against the derivative") {
    // X^2 - 5 against 2X gives -4(T + 5); on |T| = 5^-sqrt2 the constant term wins.
    ResultantBound rb = resultant_bound(P5, {Rat(-5), Rat(0), Rat(1)}, R_IRR);
    REQUIRE(rb.res_poly.size() == 2);
    CHECK(rb.res_poly[1] == Rat(-4));
    CHECK(rb.res_poly[0] == Rat(5) * rb.res_poly[1]);
    // |res| = 5^-1 exactly, and the enclosure is a point, so m is exactly half of 1/5.
    CHECK(rb.m == Rat(1, 10));

    // X^2 gives -4T with norm 5^-sqrt2; the enclosure brackets an irrational power,
    // so m sits strictly between 0 and the true value.
    ResultantBound rb2 = resultant_bound(P5, {Rat(0), Rat(0), Rat(1)}, R_IRR);
    REQUIRE(rb2.res_poly.size() == 2);
    CHECK(rb2.res_poly[0] == 0);
    CHECK(rb2.res_poly[1] == Rat(-4));
    CHECK(rb2.m > 0);
    CHECK(compare_norm_rational(P5, R_IRR, Rat(2) * rb2.m) > 0);

    CHECK_THROWS_AS(resultant_bound(P5, {Rat(-3), Rat(1)}, R_IRR), std::invalid_argument);
    CHECK_THROWS_AS(resultant_bound(P5, {Rat(1), Rat(2)}, R_IRR), std::invalid_argument);

    // The integer-exponent fast path keeps enclosures of rational powers exact.
    RationalInterval fifth = norm_enclosure(P5, NormValue::pos(Rat(1)), 24);
    CHECK(fifth.lo == Rat(1, 5));
    CHECK(fifth.hi == Rat(1, 5));
}

TEST_CASE("the norm comparison constant chain") {
    // X^2 - 5 on |T| = 5^-sqrt2. beta_0 = -5 - T has norm 1/5 and beta_1 = 0, so the
    // sum is 1/5, v' = 5/2, C' = 2, s = 5/2, m = 1/10, and
    // C = 2 * (2/5) * 4 * 5^2 / (1/10) = 800.
    NormComparisonConstants nc = norm_constants(P5, {Rat(-5), Rat(0), Rat(1)}, R_IRR);
    CHECK(nc.vprime.lo == Rat(5, 2));
    CHECK(nc.vprime.hi == Rat(5, 2));
    CHECK(nc.cprime.lo == Rat(2));
    CHECK(nc.cprime.hi == Rat(2));
    CHECK(nc.s == Rat(5, 2));
    CHECK(nc.m == Rat(1, 10));
    CHECK(nc.C.lo == Rat(800));
    CHECK(nc.C.hi == Rat(800));

    // X^2 - 5X on |T| = 5^-3 exercises the middle-coefficient branch: the sum is
    // 1/125 + 1/5, v' = 125/52, v'' = 1/5, s = 125/52, resultant -4T - 25 has norm
    // 1/25 so m = 1/50, and C = 2 * (52/125) * 4 * (125/26)^2 * 50 = 50000/13.
    NormComparisonConstants nc2 = norm_constants(P5, {Rat(0), Rat(-5), Rat(1)}, NormValue::pos(Rat(3)));
    CHECK(nc2.vprime.lo == Rat(125, 52));
    CHECK(nc2.vprime.hi == Rat(125, 52));
    CHECK(nc2.cprime.lo == Rat(2));
    CHECK(nc2.cprime.hi == Rat(2));
    CHECK(nc2.s == Rat(125, 52));
    CHECK(nc2.m == Rat(1, 50));
    CHECK(nc2.C.lo == Rat(50000, 13));
    CHECK(nc2.C.hi == Rat(50000, 13));

    // Degree 1 is an isometry, so every constant collapses to 1.
    NormComparisonConstants nc1 = norm_constants(P5, {Rat(-2), Rat(1)}, NormValue::pos(Rat(1)));
    CHECK(nc1.C.lo == Rat(1));
    CHECK(nc1.C.hi == Rat(1));
    CHECK(nc1.s == Rat(1));
    CHECK(nc1.m == Rat(1));
}

TEST_CASE("spectral seminorm at the fiber points") {
    const std::vector<Rat> mod{Rat(0), Rat(-5), Rat(1)}; // X(X - 5)
    const std::vector<std::pair<Rat, long>> roots{{Rat(0), 1}, {Rat(5), 1}};
    const NormValue r3 = NormValue::pos(Rat(3));
    const RingTag disc3{r3, RingMode::Disc};

    // f = X: the fiber at 0 sees |X| = 5^-2, the fiber at 5 sees |X| = 5^-1.
    QuotientElement fx = quotient_make(disc3, mod, {laurent_zero(disc3), laurent_const(disc3, Rat(1))});
    SpectralBound sx = spectral_enclosure(P5, fx, roots);
    CHECK(sx.value == NormValue::pos(Rat(1)));
    CHECK(sx.enclosure.lo == Rat(1, 5));
    CHECK(sx.enclosure.hi == Rat(1, 5));

    // f = T evaluates to |P| = r at every fiber point.
    QuotientElement ft = quotient_make(disc3, mod, {laurent_monomial(disc3, 1, Rat(1)), laurent_zero(disc3)});
    CHECK(spectral_enclosure(P5, ft, roots).value == r3);

    QuotientElement f1 = quotient_make(disc3, mod, {laurent_const(disc3, Rat(1)), laurent_zero(disc3)});
    SpectralBound s1 = spectral_enclosure(P5, f1, roots);
    CHECK(s1.value == NormValue::one());
    CHECK(s1.enclosure.lo == Rat(1));
    CHECK(s1.enclosure.hi == Rat(1));

    // A double root at 0: the fiber radius solves s^2 = r.
    const std::vector<Rat> modsq{Rat(0), Rat(0), Rat(1)};
    const RingTag disc2{NormValue::pos(Rat(2)), RingMode::Disc};
    QuotientElement gx = quotient_make(disc2, modsq, {laurent_zero(disc2), laurent_const(disc2, Rat(1))});
    SpectralBound gsb = spectral_enclosure(P5, gx, {{Rat(0), 2}});
    CHECK(gsb.value == NormValue::pos(Rat(1)));

    // Root lists that do not factor the modulus, or repeat a root, are rejected.
    CHECK_THROWS_AS(spectral_enclosure(P5, fx, {{Rat(0), 1}, {Rat(4), 1}}), std::invalid_argument);
    CHECK_THROWS_AS(spectral_enclosure(P5, gx, {{Rat(0), 1}, {Rat(0), 1}}), std::invalid_argument);
}

TEST_CASE("ring norm sandwiched by the spectral bound") {
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

    Rng rng(407);
    for (int round = 0; round < 24; ++round) {
        const Case& cs = cases[round % cases.size()];
        RingTag tag{radii[rng.below(radii.size())], RingMode::Circle};
        QuotientElement f = random_quotient(rng, tag, cs.mod, -3, 3);
        if (quotient_is_zero(f)) continue;
        NormValue rn = ring_norm(P5, f);
        SpectralBound sb = spectral_enclosure(P5, f, cs.roots);
        NormComparisonConstants nc = norm_constants(P5, cs.mod, tag.r);
        REQUIRE(sb.enclosure.lo > 0);
        // Spectral value below the ring norm, and the ring norm below C times it.
        CHECK(compare_norm_rational(P5, rn, sb.enclosure.lo) >= 0);
        CHECK(compare_norm_rational(P5, rn, nc.C.hi * sb.enclosure.hi) <= 0);
        if (cs.mod.size() == 2) {
            // Degree 1 is isometric: the spectral value is the norm on the nose.
            CHECK(sb.value == rn);
            CHECK(nc.C.lo == 1);
            CHECK(nc.C.hi == 1);
        }
    }
}
