#include <doctest.h>

#include "berkpatch/rootsys.hpp"
#include "berkpatch/thicken.hpp"

using namespace berk;

static const PrimeContext P5{Int(5)};

// Base point 5^-sqrt2 and the fiber radius 5^-4sqrt2 used by most cases below.
static const BasePoint B1{NormValue::pos(Rat(0), Rat(1))};
static const NormValue R4 = NormValue::pos(Rat(0), Rat(4));

// Zero section and the diagonal section T_base, simple multiplicities.
static RelativeRootSystem two_sections() {
    return RelativeRootSystem{{RelRoot{Rat(0), 0, 1}, RelRoot{Rat(1), 1, 1}}};
}

TEST_CASE("base point and root list validation") {
    CHECK_THROWS_AS(validate_base_point(BasePoint{NormValue::zero_value()}), std::invalid_argument);
    CHECK_THROWS_AS(validate_base_point(BasePoint{NormValue::pos(Rat(2))}), std::invalid_argument);
    CHECK_NOTHROW(validate_base_point(B1));

    CHECK_THROWS_AS(validate_relative_roots(RelativeRootSystem{}), std::invalid_argument);
    CHECK_THROWS_AS(validate_relative_roots(RelativeRootSystem{{RelRoot{Rat(1), 0, 0}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_relative_roots(RelativeRootSystem{{RelRoot{Rat(1), -1, 1}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_relative_roots(RelativeRootSystem{{RelRoot{Rat(0), 2, 1}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        validate_relative_roots(RelativeRootSystem{{RelRoot{Rat(3), 1, 1}, RelRoot{Rat(3), 1, 2}}}),
        std::invalid_argument);
    CHECK_NOTHROW(validate_relative_roots(two_sections()));
}

TEST_CASE("monomial norms and section distances are exact") {
    NormValue t = B1.t;
    CHECK(monomial_norm_at(P5, Rat(25), 3, t) == NormValue::pos(Rat(2), Rat(3)));
    CHECK(monomial_norm_at(P5, Rat(0), 0, t).is_zero());

    // Equal degrees subtract inside one monomial.
    CHECK(relative_distance(P5, RelRoot{Rat(2), 1}, RelRoot{Rat(7), 1}, t) ==
          NormValue::pos(Rat(1), Rat(1)));
    // Distinct degrees never cancel; the larger monomial wins.
    CHECK(relative_distance(P5, RelRoot{Rat(2), 0}, RelRoot{Rat(1), 2}, t) == NormValue::one());
    CHECK(relative_distance(P5, RelRoot{Rat(0), 0}, RelRoot{Rat(3), 2}, t) ==
          NormValue::pos(Rat(0), Rat(2)));
}

TEST_CASE("fiber radius over a moving base point") {
    RelativeRootSystem rs = two_sections();

    // Around the zero section the shell equation reads s * t = r here.
    NormValue s = relative_fiber_radius(P5, rs, 0, R4, B1.t);
    CHECK(s == NormValue::pos(Rat(0), Rat(3)));
    CHECK(relative_shell_norm(P5, rs, 0, s, B1.t) == R4);

    // Moving the base point moves the radius in exact step.
    NormValue t2 = NormValue::pos(Rat(0), Rat(3, 2));
    CHECK(relative_fiber_radius(P5, rs, 0, R4, t2) == NormValue::pos(Rat(0), Rat(5, 2)));

    // The two sections play symmetric roles.
    CHECK(relative_fiber_radius(P5, rs, 1, R4, B1.t) == NormValue::pos(Rat(0), Rat(3)));

    // r = 5^-2sqrt2 forces s onto the distance circle itself, which the strict
    // solve rejects.
    CHECK_THROWS_AS(relative_fiber_radius(P5, rs, 0, NormValue::pos(Rat(0), Rat(2)), B1.t),
                    std::domain_error);

    // A single root of multiplicity three takes a cube root.
    RelativeRootSystem lone{{RelRoot{Rat(2), 0, 3}}};
    CHECK(relative_fiber_radius(P5, lone, 0, R4, B1.t) == NormValue::pos(Rat(0), Rat(4, 3)));

    CHECK_THROWS_AS(relative_fiber_radius(P5, rs, 5, R4, B1.t), std::invalid_argument);
    CHECK_THROWS_AS(relative_fiber_radius(P5, rs, 0, NormValue::zero_value(), B1.t),
                    std::invalid_argument);
}

TEST_CASE("constant sections reduce to the absolute solve") {
    RelativeRootSystem rel{
        {RelRoot{Rat(0), 0, 1}, RelRoot{Rat(1), 0, 1}, RelRoot{Rat(5), 0, 2}}};
    RootSystem abs;
    abs.mult = {1, 1, 2};
    abs.dist.assign(3, std::vector<NormValue>(3, NormValue::zero_value()));
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            if (i != j) abs.dist[i][j] = relative_distance(P5, rel.roots[i], rel.roots[j], B1.t);
    validate_root_system(P5, abs);

    NormValue r = NormValue::pos(Rat(4));
    for (size_t a = 0; a < 3; ++a)
        CHECK(relative_fiber_radius(P5, rel, a, r, B1.t) == fiber_radii(P5, abs, a, r));
    CHECK(relative_fiber_radius(P5, rel, 2, r, B1.t) == NormValue::pos(Rat(3, 2)));
}

TEST_CASE("thickening window for the two-section system") {
    ThickeningWindow w = thickening_window(P5, two_sections(), 0, R4, B1);

    REQUIRE(w.rows.size() == 1);
    CHECK(w.rows[0].q == Rat(2));
    CHECK(w.rows[0].w == LogExponent{Rat(0), Rat(-4)});
    REQUIRE(w.t1_exp.has_value());
    CHECK(*w.t1_exp == LogExponent{Rat(0), Rat(2)});
    CHECK(!w.t2_exp.has_value());

    CHECK(window_status(w, B1.t).interior());
    CHECK(window_status(w, NormValue::pos(Rat(0), Rat(2))).boundary());
    CHECK(window_status(w, NormValue::pos(Rat(0), Rat(3))).violated);
    // Rational radii on either side of the endpoint 2*sqrt2.
    CHECK(window_status(w, NormValue::pos(Rat(2))).interior());
    CHECK(window_status(w, NormValue::pos(Rat(3))).violated);
    CHECK_THROWS_AS(window_status(w, NormValue::zero_value()), std::invalid_argument);

    // Inside the window the frozen formula tracks the direct solve.
    NormValue t2 = NormValue::pos(Rat(0), Rat(3, 2));
    CHECK(window_status(w, t2).interior());
    CHECK(relative_fiber_radius(P5, two_sections(), 0, R4, t2) == NormValue::pos(Rat(0), Rat(5, 2)));

    // When the shell equation already degenerates at the center there is no window.
    CHECK_THROWS_AS(thickening_window(P5, two_sections(), 0, NormValue::pos(Rat(0), Rat(2)), B1),
                    std::domain_error);
}

TEST_CASE("window with a dominance bound and intersection") {
    // Distance between 2 and T^2 is |2| = 1 near the center but the T^2 monomial
    // takes over at radius 1, so the window gains an upper radius endpoint.
    RelativeRootSystem rs{{RelRoot{Rat(2), 0, 1}, RelRoot{Rat(1), 2, 1}}};
    ThickeningWindow w = thickening_window(P5, rs, 0, NormValue::pos(Rat(0), Rat(2)), B1);

    CHECK(w.rows.size() == 2);
    CHECK(!w.t1_exp.has_value());
    REQUIRE(w.t2_exp.has_value());
    CHECK(*w.t2_exp == LogExponent{Rat(0), Rat(0)});
    CHECK(window_status(w, B1.t).interior());
    CHECK(window_status(w, NormValue::one()).boundary());

    // A single section has nothing to constrain.
    RelativeRootSystem lone{{RelRoot{Rat(2), 0, 3}}};
    ThickeningWindow open = thickening_window(P5, lone, 0, R4, B1);
    CHECK(open.rows.empty());
    CHECK(!open.t1_exp.has_value());
    CHECK(!open.t2_exp.has_value());
    CHECK(window_status(open, NormValue::pos(Rat(-7), Rat(11))).interior());

    ThickeningWindow both = window_intersect(thickening_window(P5, two_sections(), 0, R4, B1), w);
    CHECK(both.rows.size() == 3);
    REQUIRE(both.t1_exp.has_value());
    REQUIRE(both.t2_exp.has_value());
    CHECK(*both.t1_exp == LogExponent{Rat(0), Rat(2)});
    CHECK(*both.t2_exp == LogExponent{Rat(0), Rat(0)});
    CHECK(window_status(both, B1.t).interior());
    CHECK(window_status(both, NormValue::pos(Rat(0), Rat(3))).violated);
}

TEST_CASE("norm of the split polynomial at fiber points") {
    RelativeRootSystem rs = two_sections();
    NormValue t = B1.t;

    // Rigid point sitting on a root.
    CHECK(relative_poly_norm(P5, rs, RelPoint{Rat(0), 0, NormValue::zero_value()}, t).is_zero());

    // The circle of the solved radius around either root lies on the r shell.
    NormValue s = relative_fiber_radius(P5, rs, 0, R4, t);
    CHECK(relative_poly_norm(P5, rs, RelPoint{Rat(0), 0, s}, t) == R4);
    CHECK(relative_poly_norm(P5, rs, RelPoint{Rat(1), 1, s}, t) == R4);

    // A rigid point away from both roots multiplies two plain distances.
    CHECK(relative_poly_norm(P5, rs, RelPoint{Rat(5), 0, NormValue::zero_value()}, t) ==
          NormValue::pos(Rat(2)));
}

TEST_CASE("fiberwise domain check across the window") {
    RelativeRootSystem rs = two_sections();
    ThickeningWindow w = thickening_window(P5, rs, 0, R4, B1);
    ThickenedDomain u{Rel::LE, {}};
    ThickenedDomain v{Rel::GE, {}};

    FiberCheckReport rep = thickened_domain_check(P5, rs, R4, u, v, w, B1, 4, 60, 811);
    CHECK(rep.pass);
    CHECK(rep.witness_fiber == -1);
    CHECK(rep.failure.empty());
    CHECK(rep.fibers == 4);
    CHECK(rep.points_per_fiber == 60);

    // Extra linear constraints ride along unchanged on every fiber.
    ThickenedDomain u2{Rel::LE, {Constraint{{Rat(0), Rat(1)}, Rel::LE, NormValue::pos(Rat(1))}}};
    CHECK(thickened_domain_check(P5, rs, R4, u2, v, w, B1, 3, 40, 812).pass);

    // The center-only run is the plain fiber check.
    CHECK(thickened_domain_check(P5, rs, R4, u, v, w, B1, 1, 40, 813).pass);

    CHECK_THROWS_AS(thickened_domain_check(P5, rs, R4, u, u, w, B1, 2, 10, 814),
                    std::invalid_argument);
    ThickenedDomain bad{Rel::LE, {Constraint{{Rat(0), Rat(1), Rat(1)}, Rel::LE, NormValue::one()}}};
    CHECK_THROWS_AS(thickened_domain_check(P5, rs, R4, bad, v, w, B1, 2, 10, 815),
                    std::invalid_argument);
    BasePoint outside{NormValue::pos(Rat(0), Rat(5, 2))};
    CHECK_THROWS_AS(thickened_domain_check(P5, rs, R4, u, v, w, outside, 2, 10, 816),
                    std::invalid_argument);
    CHECK_THROWS_AS(thickened_domain_check(P5, rs, R4, u, v, w, B1, 0, 10, 817),
                    std::invalid_argument);
}

TEST_CASE("two-variable Gauss norm") {
    NormValue t = B1.t;
    NormValue s = NormValue::pos(Rat(0), Rat(3));

    std::vector<BivariateTerm> f{{1, 0, Rat(1)}, {0, 1, Rat(1)}, {1, 1, Rat(5)}};
    CHECK(bivariate_norm(P5, f, t, s) == NormValue::pos(Rat(0), Rat(1)));

    // Duplicate exponent pairs add before the max is taken.
    std::vector<BivariateTerm> twice{{2, 3, Rat(1, 2)}, {2, 3, Rat(1, 2)}};
    CHECK(bivariate_norm(P5, twice, t, s) == NormValue::pos(Rat(0), Rat(11)));
    std::vector<BivariateTerm> cancel{{0, 0, Rat(3)}, {0, 0, Rat(-3)}, {1, 0, Rat(1)}};
    CHECK(bivariate_norm(P5, cancel, t, s) == NormValue::pos(Rat(0), Rat(1)));
    CHECK(bivariate_norm(P5, {{0, 0, Rat(3)}, {0, 0, Rat(-3)}}, t, s).is_zero());

    // Negative exponents are fine on a circle.
    CHECK(bivariate_norm(P5, {{-1, 0, Rat(1)}}, t, s) == NormValue::pos(Rat(0), Rat(-1)));
    CHECK(bivariate_norm(P5, {}, t, s).is_zero());
    CHECK_THROWS_AS(bivariate_norm(P5, f, NormValue::zero_value(), s), std::invalid_argument);
}
