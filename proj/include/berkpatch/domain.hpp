#pragma once

#include "berkpatch/point.hpp"

#include <string>
#include <vector>

namespace berk {

enum class Rel { LE, EQ, GE };

// One closed condition |P(T)| rel bound with P monic.
struct Constraint {
    std::vector<Rat> poly; // coefficients, constant first, leading coefficient 1
    Rel rel{Rel::LE};
    NormValue bound{NormValue::one()};
};

enum class Certainty { Unknown, No, Yes };

// A finite conjunction of constraints. The connectedness flag is a certificate carried
// by constructors that can prove it, never inferred after the fact.
struct AffinoidDomain {
    std::vector<Constraint> constraints;
    Certainty connected{Certainty::Unknown};

    static AffinoidDomain whole_line() { return {{}, Certainty::Yes}; }
};

bool constraint_holds(const PrimeContext& ctx, const Constraint& c, const GaussPoint& pt);
bool domain_member(const PrimeContext& ctx, const AffinoidDomain& d, const GaussPoint& pt);

// Every constraint is linear, which is the regime where the disc-tree decision
// procedures below are complete.
bool all_linear(const AffinoidDomain& d);

// Finite point set meeting every membership-pattern class cut out by the linear
// constraints of the given domains: rigid centers, circles at every critical radius
// (bounds and pairwise center distances), circles strictly between consecutive critical
// radii, padding beyond the extremes, and infinity. Throws on nonlinear constraints.
std::vector<GaussPoint> candidate_points(const PrimeContext& ctx, const std::vector<AffinoidDomain>& ds);

bool domain_empty(const PrimeContext& ctx, const AffinoidDomain& d);
bool domain_subset(const PrimeContext& ctx, const AffinoidDomain& u, const AffinoidDomain& v);
bool domain_equal(const PrimeContext& ctx, const AffinoidDomain& u, const AffinoidDomain& v);

// Whether the intersection of the two domains is exactly the single type 3 point eta.
bool intersection_is_single_point(const PrimeContext& ctx, const AffinoidDomain& u, const AffinoidDomain& v,
                                  const GaussPoint& eta);

AffinoidDomain domain_intersect(const PrimeContext& ctx, const AffinoidDomain& u, const AffinoidDomain& v);

// Union of two domains whose intersection is a single type 3 circle cut out by a
// constraint pair shared with opposite senses. Drops that pair and keeps the rest;
// with nothing left the result is the whole line.
AffinoidDomain domain_union(const PrimeContext& ctx, const AffinoidDomain& u, const AffinoidDomain& v);

// For eta on the boundary of u: does the interior of u sit inside the disc at eta
// (Rel::LE) or outside it (Rel::GE)?
Rel domain_side(const PrimeContext& ctx, const AffinoidDomain& u, const GaussPoint& eta);

// Rebuild a domain from its boundary circles plus one interior witness; one constraint
// per boundary point, deterministically ordered, so the construction is idempotent.
AffinoidDomain canonical_form(const PrimeContext& ctx, const std::vector<GaussPoint>& boundary,
                              const GaussPoint& witness);

} // namespace berk
