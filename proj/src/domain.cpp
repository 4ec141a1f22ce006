#include "berkpatch/domain.hpp"

#include <algorithm>
#include <stdexcept>

namespace berk {

namespace {

bool poly_is_linear_monic(const std::vector<Rat>& p) { return p.size() == 2 && p[1] == 1; }

Rat linear_center(const Constraint& c) { return -c.poly[0]; }

void require_monic(const Constraint& c) {
    if (c.poly.size() < 2 || c.poly.back() != 1)
        throw std::invalid_argument("constraint polynomials must be monic of degree at least 1");
}

bool norm_rel_holds(Rel rel, const NormValue& value, const NormValue& bound) {
    int cmp = norm_compare(value, bound);
    switch (rel) {
        case Rel::LE: return cmp <= 0;
        case Rel::EQ: return cmp == 0;
        case Rel::GE: return cmp >= 0;
    }
    return false;
}

// Deterministic order used everywhere a constraint or point list is emitted.
bool point_before(const GaussPoint& x, const GaussPoint& y) {
    if (x.infinity != y.infinity) return y.infinity;
    if (x.infinity) return false;
    if (x.center != y.center) return x.center < y.center;
    return norm_less(x.radius, y.radius);
}

bool constraint_before(const Constraint& a, const Constraint& b) {
    if (a.poly != b.poly) return std::lexicographical_compare(a.poly.begin(), a.poly.end(), b.poly.begin(), b.poly.end());
    int c = norm_compare(a.bound, b.bound);
    if (c != 0) return c < 0;
    return (int)a.rel < (int)b.rel;
}

} // namespace

bool constraint_holds(const PrimeContext& ctx, const Constraint& c, const GaussPoint& pt) {
    require_monic(c);
    if (pt.infinity) {
        // A monic polynomial grows without bound toward infinity.
        return c.rel == Rel::GE;
    }
    return norm_rel_holds(c.rel, eval_gauss_norm(ctx, c.poly, pt), c.bound);
}

bool domain_member(const PrimeContext& ctx, const AffinoidDomain& d, const GaussPoint& pt) {
    for (const auto& c : d.constraints)
        if (!constraint_holds(ctx, c, pt)) return false;
    return true;
}

bool all_linear(const AffinoidDomain& d) {
    for (const auto& c : d.constraints)
        if (!poly_is_linear_monic(c.poly)) return false;
    return true;
}

std::vector<GaussPoint> candidate_points(const PrimeContext& ctx, const std::vector<AffinoidDomain>& ds) {
    std::vector<Rat> centers;
    std::vector<NormValue> radii;
    radii.push_back(NormValue::zero_value());
    for (const auto& d : ds) {
        for (const auto& c : d.constraints) {
            require_monic(c);
            if (!poly_is_linear_monic(c.poly))
                throw std::invalid_argument("decision procedures need linear constraints");
            centers.push_back(linear_center(c));
            radii.push_back(c.bound);
        }
    }
    if (centers.empty()) centers.push_back(Rat(0));
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
    for (size_t i = 0; i < centers.size(); ++i)
        for (size_t j = i + 1; j < centers.size(); ++j)
            radii.push_back(scalar_norm(ctx, centers[i] - centers[j]));

    auto norm_lt = [](const NormValue& x, const NormValue& y) { return norm_less(x, y); };
    std::sort(radii.begin(), radii.end(), norm_lt);
    radii.erase(std::unique(radii.begin(), radii.end(), [](const NormValue& x, const NormValue& y) { return x == y; }),
                radii.end());

    // Between consecutive critical radii the membership pattern is constant along the
    // arc, and constraints only flip truth at the criticals, so one sample circle per
    // open gap plus the criticals themselves see every pattern class. The geometric
    // mean of a consecutive pair can never collide with another critical.
    std::vector<NormValue> sample = radii;
    for (size_t i = 0; i + 1 < radii.size(); ++i) {
        if (radii[i].is_zero())
            sample.push_back(radii[i + 1] * NormValue::pos(Rat(2)));
        else
            sample.push_back((radii[i] * radii[i + 1]).pow_rat(Rat(1, 2)));
    }
    if (!radii.empty() && !radii.back().is_zero())
        sample.push_back(radii.back() * NormValue::pos(Rat(-2)));

    std::vector<GaussPoint> out;
    for (const auto& c : centers) {
        for (const auto& r : sample) {
            if (r.is_zero())
                out.push_back(GaussPoint::rigid(c));
            else
                out.push_back(GaussPoint::circle(c, r));
        }
    }
    out.push_back(GaussPoint::at_infinity());

    std::vector<GaussPoint> dedup;
    for (const auto& pt : out) {
        bool seen = false;
        for (const auto& q : dedup)
            if (point_equal(ctx, pt, q)) { seen = true; break; }
        if (!seen) dedup.push_back(pt);
    }
    std::sort(dedup.begin(), dedup.end(), point_before);
    return dedup;
}

bool domain_empty(const PrimeContext& ctx, const AffinoidDomain& d) {
    for (const auto& pt : candidate_points(ctx, {d}))
        if (domain_member(ctx, d, pt)) return false;
    return true;
}

bool domain_subset(const PrimeContext& ctx, const AffinoidDomain& u, const AffinoidDomain& v) {
    for (const auto& pt : candidate_points(ctx, {u, v}))
        if (domain_member(ctx, u, pt) && !domain_member(ctx, v, pt)) return false;
    return true;
}

bool domain_equal(const PrimeContext& ctx, const AffinoidDomain& u, const AffinoidDomain& v) {
    return domain_subset(ctx, u, v) && domain_subset(ctx, v, u);
}

bool intersection_is_single_point(const PrimeContext& ctx, const AffinoidDomain& u, const AffinoidDomain& v,
                                  const GaussPoint& eta) {
    if (classify_point(eta) != 3) return false;
    if (!domain_member(ctx, u, eta) || !domain_member(ctx, v, eta)) return false;
    for (const auto& pt : candidate_points(ctx, {u, v}))
        if (domain_member(ctx, u, pt) && domain_member(ctx, v, pt) && !point_equal(ctx, pt, eta)) return false;
    return true;
}

AffinoidDomain domain_intersect(const PrimeContext& ctx, const AffinoidDomain& u, const AffinoidDomain& v) {
    (void)ctx;
    AffinoidDomain r;
    r.constraints = u.constraints;
    r.constraints.insert(r.constraints.end(), v.constraints.begin(), v.constraints.end());
    // A conjunction of closed discs and disc complements around rational centers is
    // connected whenever it is anything at all: discs are nested or disjoint, so the
    // region is a disc minus open subdiscs, or a complement of such. Nonlinear
    // constraints can disconnect, so there the flag stays unknown.
    r.connected = all_linear(r) ? Certainty::Yes : Certainty::Unknown;
    return r;
}

AffinoidDomain domain_union(const PrimeContext& ctx, const AffinoidDomain& u, const AffinoidDomain& v) {
    for (size_t i = 0; i < u.constraints.size(); ++i) {
        const Constraint& cu = u.constraints[i];
        if (!poly_is_linear_monic(cu.poly) || cu.rel == Rel::EQ) continue;
        for (size_t j = 0; j < v.constraints.size(); ++j) {
            const Constraint& cv = v.constraints[j];
            if (cv.poly != cu.poly || !(cv.bound == cu.bound)) continue;
            bool opposite = (cu.rel == Rel::LE && cv.rel == Rel::GE) || (cu.rel == Rel::GE && cv.rel == Rel::LE);
            if (!opposite) continue;
            GaussPoint eta = GaussPoint::circle(linear_center(cu), cu.bound);
            if (!intersection_is_single_point(ctx, u, v, eta)) continue;
            AffinoidDomain r;
            for (size_t k = 0; k < u.constraints.size(); ++k)
                if (k != i) r.constraints.push_back(u.constraints[k]);
            for (size_t k = 0; k < v.constraints.size(); ++k)
                if (k != j) r.constraints.push_back(v.constraints[k]);
            r.connected = all_linear(r) ? Certainty::Yes : Certainty::Unknown;
            return r;
        }
    }
    throw std::invalid_argument("domains do not meet in a single shared boundary circle");
}

Rel domain_side(const PrimeContext& ctx, const AffinoidDomain& u, const GaussPoint& eta) {
    if (eta.infinity || eta.radius.is_zero()) throw std::invalid_argument("boundary point must be a circle");
    bool saw_le = false, saw_ge = false;
    for (const auto& pt : candidate_points(ctx, {u})) {
        if (!domain_member(ctx, u, pt) || point_equal(ctx, pt, eta)) continue;
        if (pt.infinity) { saw_ge = true; continue; }
        int cmp = norm_compare(linear_norm(ctx, eta.center, pt), eta.radius);
        if (cmp < 0) saw_le = true;
        if (cmp > 0) saw_ge = true;
    }
    if (saw_le == saw_ge)
        throw std::domain_error(saw_le ? "witnesses on both sides of the boundary circle"
                                       : "no interior witness away from the boundary circle");
    return saw_le ? Rel::LE : Rel::GE;
}

AffinoidDomain canonical_form(const PrimeContext& ctx, const std::vector<GaussPoint>& boundary,
                              const GaussPoint& witness) {
    AffinoidDomain r;
    for (const auto& b : boundary) {
        if (b.infinity || b.radius.is_zero())
            throw std::invalid_argument("boundary points must be circles");
        Rel rel;
        if (witness.infinity) {
            rel = Rel::GE;
        } else {
            int cmp = norm_compare(linear_norm(ctx, b.center, witness), b.radius);
            if (cmp == 0) throw std::invalid_argument("witness sits on a boundary circle");
            rel = cmp < 0 ? Rel::LE : Rel::GE;
        }
        r.constraints.push_back(Constraint{{-b.center, Rat(1)}, rel, b.radius});
    }
    std::sort(r.constraints.begin(), r.constraints.end(), constraint_before);
    r.constraints.erase(std::unique(r.constraints.begin(), r.constraints.end(),
                                    [](const Constraint& a, const Constraint& b) {
                                        return a.poly == b.poly && a.rel == b.rel && a.bound == b.bound;
                                    }),
                        r.constraints.end());
    r.connected = Certainty::Yes;
    return r;
}

} // namespace berk
