#include <doctest.h>

#include "berkpatch/interval.hpp"
#include "berkpatch/json_io.hpp"
#include "berkpatch/magnitude.hpp"
#include "berkpatch/norm.hpp"
#include "berkpatch/rng.hpp"

using namespace berk;

static const PrimeContext P5{Int(5)};

TEST_CASE("scalar norms against hand-factored values") {
    // 50 = 2 * 5^2, so the 5-adic norm is 5^-2.
    CHECK(scalar_norm(P5, Rat(50)) == NormValue::pos(Rat(2)));
    CHECK(scalar_norm(P5, Rat(0)).is_zero());
    CHECK(scalar_norm(P5, Rat(3) / Rat(50)) == NormValue::pos(Rat(-2)));
    CHECK(scalar_norm(P5, Rat(1) / Rat(5)) == NormValue::pos(Rat(-1)));
    CHECK(scalar_norm(P5, Rat(7)) == NormValue::one());
    PrimeContext p2{Int(2)};
    CHECK(scalar_norm(p2, Rat(12)) == NormValue::pos(Rat(2)));
}

TEST_CASE("exponent comparison decides rational vs sqrt2 parts exactly") {
    // 1 < sqrt2 since 1 < 2.
    CHECK(log_compare({Rat(1), Rat(0)}, {Rat(0), Rat(1)}) < 0);
    // 3 > 2*sqrt2 since 9 > 8.
    CHECK(log_compare({Rat(3), Rat(0)}, {Rat(0), Rat(2)}) > 0);
    // sqrt2 - 1 > 0.
    CHECK(log_sign({Rat(-1), Rat(1)}) > 0);
    // 4 - 3*sqrt2 < 0 since 16 < 18.
    CHECK(log_sign({Rat(4), Rat(-3)}) < 0);
    CHECK(log_sign({Rat(0), Rat(0)}) == 0);
    // 7/5 < sqrt2 < 17/12 (consecutive continued-fraction convergents).
    CHECK(log_sign({Rat(-7, 5), Rat(1)}) > 0);
    CHECK(log_sign({Rat(-17, 12), Rat(1)}) < 0);
}

TEST_CASE("norm order and lattice operations") {
    NormValue z = NormValue::zero_value();
    NormValue small = NormValue::pos(Rat(2));  // 5^-2
    NormValue mid = NormValue::pos(Rat(1));    // 5^-1
    NormValue one = NormValue::one();
    NormValue big = NormValue::pos(Rat(-1));   // 5
    CHECK(norm_less(z, small));
    CHECK(norm_less(small, mid));
    CHECK(norm_less(mid, one));
    CHECK(norm_less(one, big));
    CHECK(norm_max(small, mid) == mid);
    CHECK(norm_min(z, big) == z);
    // Type 3 radius 5^-sqrt2 sits between 5^-2 and 5^-1.
    NormValue t3 = NormValue::pos(Rat(0), Rat(1));
    CHECK(norm_less(small, t3));
    CHECK(norm_less(t3, mid));
    CHECK(!in_sqrt_value_group(t3));
    CHECK(in_sqrt_value_group(NormValue::pos(Rat(3, 2))));
    CHECK(!in_sqrt_value_group(z));
}

TEST_CASE("norm multiplicativity and ultrametric inequality on random rationals") {
    Rng rng(2024);
    for (int i = 0; i < 400; ++i) {
        Rat x = rng.rat(200), y = rng.rat(200);
        NormValue nx = scalar_norm(P5, x), ny = scalar_norm(P5, y);
        CHECK(scalar_norm(P5, x * y) == nx * ny);
        NormValue ns = scalar_norm(P5, x + y);
        CHECK(norm_le(ns, norm_max(nx, ny)));
        if (norm_compare(nx, ny) != 0) CHECK(ns == norm_max(nx, ny));
    }
}

TEST_CASE("enclosure of 5^-sqrt2 against independently computed digits") {
    NormValue v = NormValue::pos(Rat(0), Rat(1));
    RationalInterval e = norm_enclosure(P5, v, 24);
    // 5^-sqrt2 = 0.102685031383450280...
    CHECK(e.lo <= Rat(102686, 1000000));
    CHECK(e.hi >= Rat(102685, 1000000));
    CHECK(e.lo >= Rat(1, 10));
    CHECK(e.hi <= Rat(11, 100));
    CHECK((e.hi - e.lo) * (Int(1) << 24) <= e.hi);
}

TEST_CASE("enclosures are nested and tighten with precision") {
    Rng rng(77);
    for (int i = 0; i < 20; ++i) {
        NormValue v = NormValue::pos(rng.rat(6), rng.rat(6));
        RationalInterval a = norm_enclosure(P5, v, 8);
        RationalInterval b = norm_enclosure(P5, v, 9);
        RationalInterval c = norm_enclosure(P5, v, 16);
        RationalInterval d = norm_enclosure(P5, v, 32);
        CHECK(a.contains(b));
        CHECK(b.contains(c));
        CHECK(c.contains(d));
        CHECK((d.hi - d.lo) * (Int(1) << 32) <= d.hi);
        CHECK(d.lo > 0);
    }
    CHECK(norm_enclosure(P5, NormValue::zero_value(), 10).hi == 0);
}

TEST_CASE("exact comparison of norms with rationals") {
    CHECK(compare_norm_rational(P5, NormValue::pos(Rat(3)), Rat(1, 8)) < 0);   // 1/125 < 1/8
    CHECK(compare_norm_rational(P5, NormValue::pos(Rat(3)), Rat(1, 125)) == 0);
    CHECK(compare_norm_rational(P5, NormValue::pos(Rat(0), Rat(1)), Rat(1, 8)) < 0);
    CHECK(compare_norm_rational(P5, NormValue::pos(Rat(0), Rat(1)), Rat(1, 10)) > 0);
    // 5^(3/2) = 11.18..., between 11 and 12.
    CHECK(compare_norm_rational(P5, NormValue::pos(Rat(-3, 2)), Rat(11)) > 0);
    CHECK(compare_norm_rational(P5, NormValue::pos(Rat(-3, 2)), Rat(12)) < 0);
    CHECK(compare_norm_rational(P5, NormValue::zero_value(), Rat(1, 1000)) < 0);
    CHECK(compare_norm_rational(P5, NormValue::zero_value(), Rat(0)) == 0);
    CHECK(compare_norm_rational(P5, NormValue::one(), Rat(-3)) > 0);
}

TEST_CASE("magnitudes: structure, products, exact ties") {
    Magnitude eighth = Magnitude::from_rational(Rat(1, 8));
    Magnitude tiny = Magnitude::from_norm(P5, NormValue::pos(Rat(3)));
    CHECK(magnitude_compare(eighth, tiny) > 0);
    CHECK(magnitude_compare(magnitude_min(eighth, tiny), tiny) == 0);
    CHECK(magnitude_compare(Magnitude::from_rational(Rat(4, 8)), Magnitude::from_rational(Rat(1, 2))) == 0);
    Magnitude half = Magnitude::from_rational(Rat(1, 2));
    CHECK(magnitude_compare(half * half * half, eighth) == 0);
    CHECK(half.pow(Rat(3)).factors == eighth.factors);
    CHECK(magnitude_compare(eighth * eighth.inverse(), Magnitude::one()) == 0);
}

TEST_CASE("magnitudes: mixed-base envelope comparisons") {
    // eps' = 2 * 5^-3; eps'^(3/2) = 0.0020238..., and 5^-5 = 0.00032 is below it.
    Magnitude epsp = Magnitude::from_rational(Rat(2, 125));
    Magnitude env = epsp.pow(Rat(3, 2));
    CHECK(compare_norm_magnitude(P5, NormValue::pos(Rat(5)), env) < 0);
    // 5^-4 = 0.00064 is also below it, 5^-3 = 0.008 is above.
    CHECK(compare_norm_magnitude(P5, NormValue::pos(Rat(4)), env) < 0);
    CHECK(compare_norm_magnitude(P5, NormValue::pos(Rat(3)), env) > 0);
    CHECK(compare_norm_magnitude(P5, NormValue::zero_value(), env) < 0);
    // Brackets agree with the independently computed decimal 0.002023857702...
    RationalInterval e = magnitude_enclosure(env, 24);
    CHECK(e.lo <= Rat(2023858, 1000000000));
    CHECK(e.hi >= Rat(2023857, 1000000000));
}

TEST_CASE("norm json round-trips bit-exactly") {
    Rng rng(5150);
    for (int i = 0; i < 100; ++i) {
        NormValue v = rng.coin() ? NormValue::pos(rng.rat(1000), rng.rat(1000)) : NormValue::zero_value();
        Json j = norm_to_json(v);
        NormValue back = norm_from_json(Json::parse(j.dump()));
        CHECK(back == v);
        CHECK(norm_to_json(back).dump() == j.dump());
    }
    CHECK_THROWS_AS(norm_from_json(Json::parse("{\"kind\":\"wat\"}")), SchemaError);
    CHECK_THROWS_AS(norm_from_json(Json::parse("{\"kind\":\"pos\",\"a\":\"1/0\",\"b\":\"0\"}")), SchemaError);
    CHECK_THROWS_AS(norm_from_json(Json::parse("[]")), SchemaError);
}

TEST_CASE("interval arithmetic basics") {
    RationalInterval a{Rat(1, 2), Rat(2)};
    RationalInterval b{Rat(-1), Rat(3)};
    RationalInterval p = a * b;
    CHECK(p.lo == Rat(-2));
    CHECK(p.hi == Rat(6));
    RationalInterval r = interval_recip(a);
    CHECK(r.lo == Rat(1, 2));
    CHECK(r.hi == Rat(2));
    CHECK_THROWS(interval_recip(b));
    CHECK(interval_pow(a, 2).hi == Rat(4));
    CHECK(interval_pow(a, -1).lo == Rat(1, 2));
    RationalInterval l5 = enclose_ln(Rat(5), 20);
    // ln 5 = 1.6094379124341003...
    CHECK(l5.lo <= Rat(16094380, 10000000));
    CHECK(l5.hi >= Rat(16094379, 10000000));
    CHECK(l5.hi - l5.lo <= Rat(1, 1 << 18));
}
