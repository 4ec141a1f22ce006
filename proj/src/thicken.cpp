#include "berkpatch/thicken.hpp"

#include "berkpatch/rng.hpp"
#include "berkpatch/rootsys.hpp"

#include <algorithm>
#include <stdexcept>

namespace berk {

void validate_base_point(const BasePoint& b) {
    if (b.t.is_zero()) throw std::invalid_argument("base radius must be positive");
    if (in_sqrt_value_group(b.t))
        throw std::invalid_argument("base point must have an irrational exponent");
}

void validate_relative_roots(const RelativeRootSystem& rs) {
    if (rs.roots.empty()) throw std::invalid_argument("root system is empty");
    for (const RelRoot& r : rs.roots) {
        if (r.mult <= 0) throw std::invalid_argument("root multiplicities must be positive");
        if (r.k < 0) throw std::invalid_argument("root exponents must be nonnegative");
        if (r.c == 0 && r.k != 0) throw std::invalid_argument("the zero root is written with k = 0");
    }
    for (size_t i = 0; i < rs.size(); ++i)
        for (size_t j = i + 1; j < rs.size(); ++j)
            if (rs.roots[i].c == rs.roots[j].c && rs.roots[i].k == rs.roots[j].k)
                throw std::invalid_argument("roots must be distinct monomials");
}

NormValue monomial_norm_at(const PrimeContext& ctx, const Rat& c, long k, const NormValue& t_y) {
    if (c == 0) return NormValue::zero_value();
    if (t_y.is_zero()) throw std::invalid_argument("base radius must be positive");
    return scalar_norm(ctx, c) * t_y.pow_rat(Rat(k));
}

NormValue relative_distance(const PrimeContext& ctx, const RelRoot& x, const RelRoot& y,
                            const NormValue& t_y) {
    if (x.k == y.k) return monomial_norm_at(ctx, x.c - y.c, x.k, t_y);
    // Different degrees never cancel in a Gauss norm, so the difference is exactly
    // the larger of the two monomials.
    return norm_max(monomial_norm_at(ctx, x.c, x.k, t_y), monomial_norm_at(ctx, y.c, y.k, t_y));
}

NormValue relative_shell_norm(const PrimeContext& ctx, const RelativeRootSystem& rs, size_t alpha,
                              const NormValue& s, const NormValue& t_y) {
    NormValue prod = s.pow_rat(Rat(rs.roots[alpha].mult));
    for (size_t j = 0; j < rs.size(); ++j) {
        if (j == alpha) continue;
        NormValue d = relative_distance(ctx, rs.roots[alpha], rs.roots[j], t_y);
        prod = prod * norm_max(s, d).pow_rat(Rat(rs.roots[j].mult));
    }
    return prod;
}

NormValue relative_fiber_radius(const PrimeContext& ctx, const RelativeRootSystem& rs, size_t alpha,
                                const NormValue& r, const NormValue& t_y) {
    validate_relative_roots(rs);
    if (alpha >= rs.size()) throw std::invalid_argument("root index out of range");
    if (r.is_zero()) throw std::invalid_argument("fiber radius must be positive");
    if (t_y.is_zero()) throw std::invalid_argument("base radius must be positive");
    long m = rs.roots[alpha].mult;

    std::vector<NormValue> d;
    for (size_t j = 0; j < rs.size(); ++j) {
        if (j == alpha) continue;
        NormValue dist = relative_distance(ctx, rs.roots[alpha], rs.roots[j], t_y);
        for (long t = 0; t < rs.roots[j].mult; ++t) d.push_back(dist);
    }
    std::sort(d.begin(), d.end(), [](const NormValue& x, const NormValue& y) { return norm_less(x, y); });
    size_t n = d.size();

    // Same segment scan as the absolute solve, but the strict form: every distance
    // must fall strictly on one side of s, and a tie is an error rather than a
    // boundary solution.
    std::optional<NormValue> found;
    for (size_t j0 = 0; j0 <= n; ++j0) {
        NormValue tailprod = NormValue::one();
        for (size_t j = j0; j < n; ++j) tailprod = tailprod * d[j];
        NormValue s = (r / tailprod).pow_rat(Rat(1) / Rat((long)j0 + m));
        if (j0 > 0 && !norm_less(d[j0 - 1], s)) continue;
        if (j0 < n && !norm_less(s, d[j0])) continue;
        if (!(relative_shell_norm(ctx, rs, alpha, s, t_y) == r)) continue;
        if (found && !(*found == s)) throw std::logic_error("fiber radius solution is not unique");
        found = s;
    }
    if (!found)
        throw std::domain_error("no fiber radius keeps every root distance strictly off the circle");
    return *found;
}

namespace {

// Exponent of a monomial norm as an affine function q*x + w of the base exponent x.
struct Affine {
    Rat q;
    LogExponent w;

    LogExponent at(const LogExponent& x) const { return w + x * q; }
};

Affine affine_sub(const Affine& a, const Affine& b) { return {a.q - b.q, a.w - b.w}; }

} // namespace

ThickeningWindow thickening_window(const PrimeContext& ctx, const RelativeRootSystem& rs,
                                   size_t alpha, const NormValue& r, const BasePoint& base) {
    validate_relative_roots(rs);
    validate_base_point(base);
    if (alpha >= rs.size()) throw std::invalid_argument("root index out of range");
    if (r.is_zero()) throw std::invalid_argument("fiber radius must be positive");
    const LogExponent x0 = base.t.e;
    long m = rs.roots[alpha].mult;

    std::vector<WindowRow> rows;
    auto push_row = [&](const Affine& row) {
        for (const WindowRow& have : rows)
            if (have.q == row.q && have.w == row.w) return;
        if (log_sign(row.at(x0)) >= 0)
            throw std::logic_error("window row does not hold at the base point");
        rows.push_back({row.q, row.w});
    };

    // Resolve each distance from alpha to a single monomial valid near the center,
    // recording a dominance row whenever two monomials compete.
    std::vector<Affine> dists;
    for (size_t j = 0; j < rs.size(); ++j) {
        if (j == alpha) continue;
        const RelRoot& a = rs.roots[alpha];
        const RelRoot& b = rs.roots[j];
        Affine resolved;
        if (a.k == b.k) {
            resolved = {Rat(a.k), LogExponent{Rat(valuation(a.c - b.c, ctx.p)), Rat(0)}};
        } else if (a.c == 0) {
            resolved = {Rat(b.k), LogExponent{Rat(valuation(b.c, ctx.p)), Rat(0)}};
        } else if (b.c == 0) {
            resolved = {Rat(a.k), LogExponent{Rat(valuation(a.c, ctx.p)), Rat(0)}};
        } else {
            Affine ma{Rat(a.k), LogExponent{Rat(valuation(a.c, ctx.p)), Rat(0)}};
            Affine mb{Rat(b.k), LogExponent{Rat(valuation(b.c, ctx.p)), Rat(0)}};
            int cmp = log_sign(affine_sub(ma, mb).at(x0));
            if (cmp == 0) throw std::logic_error("monomial tie at an irrational base exponent");
            // The dominant monomial has the larger norm, so the smaller exponent.
            const Affine& dom = cmp < 0 ? ma : mb;
            const Affine& oth = cmp < 0 ? mb : ma;
            push_row(affine_sub(dom, oth));
            resolved = dom;
        }
        for (long t = 0; t < b.mult; ++t) dists.push_back(resolved);
    }

    // Ascending distance norm means descending exponent at the center.
    std::sort(dists.begin(), dists.end(),
              [&](const Affine& a, const Affine& b) { return log_sign(a.at(x0) - b.at(x0)) > 0; });
    size_t n = dists.size();
    const LogExponent rho = r.e;

    std::optional<size_t> pick;
    std::optional<Affine> sigma;
    for (size_t j0 = 0; j0 <= n; ++j0) {
        Affine sum{Rat(0), LogExponent{Rat(0), Rat(0)}};
        for (size_t j = j0; j < n; ++j) sum = {sum.q + dists[j].q, sum.w + dists[j].w};
        Rat denom{(long)j0 + m};
        Affine sg{-sum.q / denom, (rho - sum.w) / denom};
        bool ok = true;
        for (size_t j = 0; j < j0 && ok; ++j)
            ok = log_sign(sg.at(x0) - dists[j].at(x0)) < 0; // distance below s strictly
        for (size_t j = j0; j < n && ok; ++j)
            ok = log_sign(dists[j].at(x0) - sg.at(x0)) < 0; // distance above s strictly
        if (!ok) continue;
        if (pick) throw std::logic_error("fiber radius segment is not unique");
        pick = j0;
        sigma = sg;
    }
    if (!pick) throw std::domain_error("thickening inequalities fail at the base point");

    // The window cross-checks against the direct fiber solve at the center.
    if (!(NormValue::pos(sigma->at(x0)) == relative_fiber_radius(ctx, rs, alpha, r, base.t)))
        throw std::logic_error("window center disagrees with the fiber radius");

    for (size_t j = 0; j < *pick; ++j) push_row(affine_sub(*sigma, dists[j]));
    for (size_t j = *pick; j < n; ++j) push_row(affine_sub(dists[j], *sigma));

    ThickeningWindow w;
    w.rows = rows;
    for (const WindowRow& row : rows) {
        if (row.q == 0) continue; // holds everywhere, already verified at the center
        LogExponent bound = -row.w / row.q;
        if (row.q > 0) {
            if (!w.t1_exp || log_sign(bound - *w.t1_exp) < 0) w.t1_exp = bound;
        } else {
            if (!w.t2_exp || log_sign(bound - *w.t2_exp) > 0) w.t2_exp = bound;
        }
    }
    return w;
}

WindowStatus window_status(const ThickeningWindow& w, const NormValue& t_y) {
    if (t_y.is_zero()) throw std::invalid_argument("base radius must be positive");
    WindowStatus st;
    for (const WindowRow& row : w.rows) {
        int sign = log_sign(row.w + t_y.e * row.q);
        if (sign > 0) st.violated = true;
        if (sign == 0) st.equality = true;
    }
    return st;
}

ThickeningWindow window_intersect(const ThickeningWindow& a, const ThickeningWindow& b) {
    ThickeningWindow w = a;
    w.rows.insert(w.rows.end(), b.rows.begin(), b.rows.end());
    if (b.t1_exp && (!w.t1_exp || log_sign(*b.t1_exp - *w.t1_exp) < 0)) w.t1_exp = b.t1_exp;
    if (b.t2_exp && (!w.t2_exp || log_sign(*b.t2_exp - *w.t2_exp) > 0)) w.t2_exp = b.t2_exp;
    return w;
}

NormValue relative_poly_norm(const PrimeContext& ctx, const RelativeRootSystem& rs,
                             const RelPoint& pt, const NormValue& t_y) {
    RelRoot center{pt.c, pt.k, 1};
    NormValue prod = NormValue::one();
    for (const RelRoot& root : rs.roots) {
        NormValue d = relative_distance(ctx, center, root, t_y);
        prod = prod * norm_max(d, pt.radius).pow_rat(Rat(root.mult));
    }
    return prod;
}

namespace {

bool linear_constraint_holds(const PrimeContext& ctx, const Constraint& c, const RelPoint& pt,
                             const NormValue& t_y) {
    RelRoot center{-c.poly[0], 0, 1};
    RelRoot at{pt.c, pt.k, 1};
    NormValue v = norm_max(relative_distance(ctx, at, center, t_y), pt.radius);
    switch (c.rel) {
        case Rel::LE: return norm_le(v, c.bound);
        case Rel::GE: return norm_le(c.bound, v);
        case Rel::EQ: return v == c.bound;
    }
    return false;
}

} // namespace

FiberCheckReport thickened_domain_check(const PrimeContext& ctx, const RelativeRootSystem& rs,
                                        const NormValue& r, const ThickenedDomain& u,
                                        const ThickenedDomain& v, const ThickeningWindow& window,
                                        const BasePoint& base, long fibers, long points,
                                        std::uint64_t seed) {
    validate_relative_roots(rs);
    validate_base_point(base);
    if (r.is_zero()) throw std::invalid_argument("fiber radius must be positive");
    if (fibers < 1 || points < 1) throw std::invalid_argument("sample counts must be positive");
    bool opposite = (u.rel == Rel::LE && v.rel == Rel::GE) || (u.rel == Rel::GE && v.rel == Rel::LE);
    if (!opposite) throw std::invalid_argument("domains must bound the shell from opposite sides");
    for (const ThickenedDomain* d : {&u, &v})
        for (const Constraint& c : d->extra)
            if (c.poly.size() != 2 || c.poly[1] != 1)
                throw std::invalid_argument("extra constraints must be linear");
    if (!window_status(window, base.t).interior())
        throw std::invalid_argument("base point is not interior to the window");

    FiberCheckReport rep;
    rep.fibers = fibers;
    rep.points_per_fiber = points;
    Rng rng(seed);
    size_t n = rs.size();
    auto fail = [&](long fiber, std::string why) {
        rep.pass = false;
        rep.witness_fiber = fiber;
        rep.failure = std::move(why);
    };

    for (long i = 0; i < fibers && rep.pass; ++i) {
        NormValue t_y = base.t;
        if (i > 0) {
            // Rational offset from the center exponent, halved until it fits inside
            // the bounded side; the irrational part is untouched, so every sampled
            // fiber stays branchless.
            bool up = rng.coin();
            const auto& bound = up ? window.t1_exp : window.t2_exp;
            Rat delta = Rat(rng.range(1, 1200), 997);
            if (bound) {
                LogExponent gap = up ? *bound - base.t.e : base.t.e - *bound;
                while (log_sign(gap - LogExponent{delta, Rat(0)}) <= 0) delta /= 2;
            }
            LogExponent x = base.t.e;
            x.a += up ? delta : -delta;
            t_y = NormValue::pos(x);
        }
        if (!window_status(window, t_y).interior()) {
            fail(i, "sampled base radius left the window");
            break;
        }

        RootSystem abs;
        for (const RelRoot& root : rs.roots) abs.mult.push_back(root.mult);
        abs.dist.assign(n, std::vector<NormValue>(n, NormValue::zero_value()));
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                if (a != b) abs.dist[a][b] = relative_distance(ctx, rs.roots[a], rs.roots[b], t_y);
        try {
            validate_root_system(ctx, abs);
        } catch (const std::invalid_argument&) {
            fail(i, "distance matrix is not ultrametric at a sampled fiber");
            break;
        }

        std::vector<NormValue> radii(n);
        for (size_t a = 0; a < n && rep.pass; ++a) {
            try {
                radii[a] = relative_fiber_radius(ctx, rs, a, r, t_y);
            } catch (const std::exception&) {
                fail(i, "fiber radius solve failed at a sampled fiber");
                break;
            }
            if (!(relative_shell_norm(ctx, rs, a, radii[a], t_y) == r)) {
                fail(i, "shell identity violated at a sampled fiber");
                break;
            }
            // The circle around each root lies in both domains when no extra
            // constraint interferes, witnessing a nonempty intersection.
            if (u.extra.empty() && v.extra.empty()) {
                NormValue node = relative_poly_norm(
                    ctx, rs, RelPoint{rs.roots[a].c, rs.roots[a].k, radii[a]}, t_y);
                if (!(node == r)) {
                    fail(i, "root circle misses the shell at a sampled fiber");
                    break;
                }
            }
        }
        if (!rep.pass) break;

        for (long pidx = 0; pidx < points; ++pidx) {
            RelPoint pt;
            size_t near = (size_t)rng.below((std::uint64_t)n);
            if (rng.coin()) {
                pt.c = rs.roots[near].c + rng.rat(9);
                pt.k = rs.roots[near].k;
            } else {
                pt.c = rng.rat(9);
                pt.k = rng.range(0, 2);
            }
            if (rng.below(4) != 0)
                pt.radius = NormValue::pos(Rat(rng.range(-2, 2)), Rat(rng.range(-1, 1)));

            NormValue nr = relative_poly_norm(ctx, rs, pt, t_y);
            auto member = [&](const ThickenedDomain& d) {
                bool ok = d.rel == Rel::LE ? norm_le(nr, r) : norm_le(r, nr);
                for (const Constraint& c : d.extra)
                    ok = ok && linear_constraint_holds(ctx, c, pt, t_y);
                return ok;
            };
            bool mu = member(u);
            bool mv = member(v);
            bool shell = nr == r;
            bool extras_u = true, extras_v = true;
            for (const Constraint& c : u.extra) extras_u = extras_u && linear_constraint_holds(ctx, c, pt, t_y);
            for (const Constraint& c : v.extra) extras_v = extras_v && linear_constraint_holds(ctx, c, pt, t_y);
            if ((mu && mv) != (shell && extras_u && extras_v)) {
                fail(i, "intersection of thickenings differs from the thickened intersection");
                break;
            }
            if (u.extra.empty() && v.extra.empty() && !(mu || mv)) {
                fail(i, "the two domains fail to cover a sampled fiber point");
                break;
            }
        }
    }
    return rep;
}

NormValue bivariate_norm(const PrimeContext& ctx, const std::vector<BivariateTerm>& terms,
                         const NormValue& t, const NormValue& s) {
    if (t.is_zero() || s.is_zero()) throw std::invalid_argument("both radii must be positive");
    // Collapse duplicate exponent pairs before taking the max, so the input may be
    // any formal sum of terms.
    std::vector<BivariateTerm> sum;
    for (const BivariateTerm& term : terms) {
        bool merged = false;
        for (BivariateTerm& have : sum)
            if (have.m == term.m && have.n == term.n) {
                have.c += term.c;
                merged = true;
                break;
            }
        if (!merged) sum.push_back(term);
    }
    NormValue best = NormValue::zero_value();
    for (const BivariateTerm& term : sum) {
        if (term.c == 0) continue;
        best = norm_max(best, scalar_norm(ctx, term.c) * t.pow_rat(Rat(term.m)) * s.pow_rat(Rat(term.n)));
    }
    return best;
}

} // namespace berk
