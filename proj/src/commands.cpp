#include "berkpatch/commands.hpp"

#include "berkpatch/constants.hpp"
#include "berkpatch/format.hpp"
#include "berkpatch/json_conv.hpp"
#include "berkpatch/plot.hpp"
#include "berkpatch/spectral.hpp"
#include "berkpatch/suite.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>

namespace berk {

namespace {

struct CommandInput {
    PrimeContext ctx;
    Json request;
    Json options;
    std::string format;

    std::uint64_t seed() const {
        for (const Json* src : {&request, &options})
            if (src->is_object() && src->contains("seed")) {
                const Json& s = (*src)["seed"];
                if (!s.is_number_integer() && !s.is_number_unsigned())
                    throw SchemaError("\"seed\" must be an integer");
                return s.get<std::uint64_t>();
            }
        return 0;
    }

    long samples(long fallback) const {
        for (const Json* src : {&request, &options})
            if (src->is_object() && src->contains("samples")) return int_field(*src, "samples");
        return fallback;
    }

    NormValue tol() const {
        for (const Json* src : {&request, &options})
            if (src->is_object() && src->contains("tol")) return norm_from_json((*src)["tol"]);
        return NormValue::pos(Rat(40));
    }
};

struct CommandResult {
    Json payload = Json::object();
    bool pass{true};
    std::string text; // empty means: render the payload itself
};

PrimeContext parse_prime(const Json& request) {
    long p = int_field_or(request, "p", 5);
    Int pi(p);
    if (p < 2 || mpz_probab_prime_p(pi.backend().data(), 30) == 0)
        throw SchemaError("\"p\" must be a prime");
    return PrimeContext{pi};
}

// ---- norm-eval ----------------------------------------------------------------

NormValue partial_fraction_norm(const PrimeContext& ctx, const Json& req) {
    NormValue r = norm_from_json(json_field(req, "r"));
    if (r.is_zero()) throw std::domain_error("the circle radius must be positive");
    Rat alpha = req.contains("alpha") ? rat_from_json(req["alpha"]) : Rat(0);

    std::vector<Rat> poles;
    if (req.contains("poles")) {
        if (!req["poles"].is_array()) throw SchemaError("\"poles\" must be an array of rationals");
        for (const Json& e : req["poles"]) poles.push_back(rat_from_json(e));
    }
    for (const Rat& pole : poles)
        if (!norm_le(scalar_norm(ctx, pole - alpha), r))
            throw std::domain_error("every pole must lie in the closed disc of the point");
    for (size_t i = 0; i < poles.size(); ++i)
        for (size_t j = i + 1; j < poles.size(); ++j)
            if (!(scalar_norm(ctx, poles[i] - poles[j]) == r))
                throw std::domain_error("distinct poles must sit at pairwise distance exactly r");

    NormValue best = NormValue::zero_value();
    if (req.contains("taylor")) {
        if (!req["taylor"].is_array()) throw SchemaError("\"taylor\" must be an array of rationals");
        long n = 0;
        for (const Json& e : req["taylor"]) {
            best = norm_max(best, scalar_norm(ctx, rat_from_json(e)) * r.pow_rat(Rat(n)));
            ++n;
        }
    }
    if (req.contains("parts")) {
        if (!req["parts"].is_array()) throw SchemaError("\"parts\" must be an array");
        for (const Json& e : req["parts"]) {
            long pole = int_field(e, "pole");
            long n = int_field(e, "n");
            if (pole < 0 || (size_t)pole >= poles.size()) throw SchemaError("pole index out of range");
            if (n < 1) throw SchemaError("principal parts need n >= 1");
            best = norm_max(best, scalar_norm(ctx, rat_from_json(json_field(e, "c"))) * r.pow_rat(Rat(-n)));
        }
    }
    return best;
}

CommandResult cmd_norm_eval(const CommandInput& in) {
    const Json& req = in.request;
    std::string kind = string_field(req, "kind");
    NormValue norm;
    if (kind == "poly") {
        std::vector<Rat> coeffs;
        const Json& cs = json_field(req, "coeffs");
        if (!cs.is_array()) throw SchemaError("\"coeffs\" must be an array of rationals");
        for (const Json& e : cs) coeffs.push_back(rat_from_json(e));
        norm = eval_gauss_norm(in.ctx, coeffs, point_from_json(json_field(req, "point")));
    } else if (kind == "series") {
        const Json& el = json_field(req, "element");
        norm = element_json_is_quotient(el) ? ring_norm(in.ctx, quotient_from_json(el))
                                            : ring_norm(in.ctx, laurent_from_json(el));
    } else if (kind == "shape") {
        norm = partial_fraction_norm(in.ctx, req);
    } else if (kind == "bivariate") {
        std::vector<BivariateTerm> terms;
        const Json& ts = json_field(req, "terms");
        if (!ts.is_array()) throw SchemaError("\"terms\" must be an array");
        for (const Json& e : ts)
            terms.push_back({int_field(e, "m"), int_field(e, "n"), rat_from_json(json_field(e, "c"))});
        norm = bivariate_norm(in.ctx, terms, norm_from_json(json_field(req, "t")),
                              norm_from_json(json_field(req, "s")));
    } else {
        throw SchemaError("\"kind\" must be \"poly\", \"series\", \"shape\" or \"bivariate\"");
    }
    CommandResult out;
    out.payload["norm"] = norm_to_json(norm);
    out.text = "norm = " + norm_text(in.ctx, norm) + "\n";
    return out;
}

// ---- geometry -----------------------------------------------------------------

CommandResult cmd_point_classify(const CommandInput& in) {
    GaussPoint pt = point_from_json(json_field(in.request, "point"));
    CommandResult out;
    int type = classify_point(pt);
    out.payload["type"] = type;
    out.text = "type " + std::to_string(type) + " point\n";
    return out;
}

CommandResult cmd_fiber_radii(const CommandInput& in) {
    RootSystem rs = root_system_from_json(in.request);
    validate_root_system(in.ctx, rs);
    long alpha = int_field(in.request, "alpha");
    if (alpha < 0 || (size_t)alpha >= rs.size()) throw SchemaError("\"alpha\" out of range");
    NormValue r = norm_from_json(json_field(in.request, "r"));
    NormValue s = fiber_radii(in.ctx, rs, (size_t)alpha, r);
    CommandResult out;
    out.payload["radius"] = norm_to_json(s);
    out.text = "s = " + norm_text(in.ctx, s) + "\n";
    return out;
}

CommandResult cmd_domain_op(const CommandInput& in) {
    const Json& req = in.request;
    std::string op = string_field(req, "op");
    CommandResult out;
    auto domain_arg = [&](const char* name) { return domain_from_json(json_field(req, name)); };
    if (op == "union") {
        out.payload["domain"] = domain_to_json(domain_union(in.ctx, domain_arg("u"), domain_arg("v")));
    } else if (op == "intersect") {
        out.payload["domain"] = domain_to_json(domain_intersect(in.ctx, domain_arg("u"), domain_arg("v")));
    } else if (op == "canonical") {
        const Json& bj = json_field(req, "boundary");
        if (!bj.is_array()) throw SchemaError("\"boundary\" must be an array of points");
        std::vector<GaussPoint> boundary;
        for (const Json& e : bj) boundary.push_back(point_from_json(e));
        GaussPoint witness = point_from_json(json_field(req, "witness"));
        out.payload["domain"] = domain_to_json(canonical_form(in.ctx, boundary, witness));
    } else if (op == "side") {
        Rel side = domain_side(in.ctx, domain_arg("u"), point_from_json(json_field(req, "point")));
        out.payload["side"] = side == Rel::LE ? "le" : "ge";
    } else if (op == "member") {
        out.payload["member"] =
            domain_member(in.ctx, domain_arg("u"), point_from_json(json_field(req, "point")));
    } else if (op == "subset") {
        out.payload["subset"] = domain_subset(in.ctx, domain_arg("u"), domain_arg("v"));
    } else if (op == "equal") {
        out.payload["equal"] = domain_equal(in.ctx, domain_arg("u"), domain_arg("v"));
    } else if (op == "empty") {
        out.payload["empty"] = domain_empty(in.ctx, domain_arg("u"));
    } else {
        throw SchemaError("unknown domain op \"" + op + "\"");
    }
    return out;
}

std::vector<GaussPoint> points_from_request(const Json& req) {
    const Json& pj = json_field(req, "points");
    if (!pj.is_array()) throw SchemaError("\"points\" must be an array");
    std::vector<GaussPoint> points;
    for (const Json& e : pj) points.push_back(point_from_json(e));
    return points;
}

NiceCover cover_from_request(const PrimeContext& ctx, const Json& req) {
    if (req.contains("cover")) return cover_from_json(req["cover"]);
    return build_nice_cover(ctx, points_from_request(req));
}

CommandResult cmd_cover_build(const CommandInput& in) {
    NiceCover cover = build_nice_cover(in.ctx, points_from_request(in.request));
    CommandResult out;
    out.payload["cover"] = cover_to_json(cover);
    return out;
}

CommandResult cmd_cover_check(const CommandInput& in) {
    CheckReport rep = nice_cover_check(in.ctx, cover_from_request(in.ctx, in.request));
    CommandResult out;
    out.pass = rep.valid;
    out.payload["valid"] = rep.valid;
    out.payload["violations"] = rep.violations;
    out.text = rep.valid ? "cover is nice\n" : "cover violations:\n";
    for (const std::string& v : rep.violations) out.text += "  " + v + "\n";
    return out;
}

CommandResult cmd_cover_color(const CommandInput& in) {
    ColoringResult col = parity_coloring(cover_from_request(in.ctx, in.request));
    CommandResult out;
    out.pass = col.ok;
    if (col.ok) {
        out.payload["colors"] = col.colors;
    } else {
        out.payload["reason"] = col.reason;
    }
    return out;
}

CommandResult cmd_cover_dot(const CommandInput& in) {
    std::string dot = cover_dot(in.ctx, cover_from_request(in.ctx, in.request));
    CommandResult out;
    out.payload["dot"] = dot;
    out.text = dot;
    return out;
}

// ---- series -------------------------------------------------------------------

CommandResult cmd_series_split(const CommandInput& in) {
    const Json& el = json_field(in.request, "element");
    CommandResult out;
    if (element_json_is_quotient(el)) {
        QuotientElement c = quotient_from_json(el);
        auto [disc, shape] = split_quotient(c);
        out.payload["disc"] = quotient_to_json(disc);
        out.payload["outer_shape"] = shape_to_json(shape);
        out.payload["norm"] = norm_to_json(ring_norm(in.ctx, c));
        out.payload["norm_disc"] = norm_to_json(ring_norm(in.ctx, disc));
        out.payload["norm_outer"] = norm_to_json(shape_norm(in.ctx, shape));
    } else {
        LaurentElement c = laurent_from_json(el);
        auto [disc, outer] = split_laurent(c);
        out.payload["disc"] = laurent_to_json(disc);
        out.payload["outer"] = laurent_to_json(outer);
        out.payload["norm"] = norm_to_json(ring_norm(in.ctx, c));
        out.payload["norm_disc"] = norm_to_json(ring_norm(in.ctx, disc));
        out.payload["norm_outer"] = norm_to_json(ring_norm(in.ctx, outer));
    }
    return out;
}

CommandResult cmd_series_mul(const CommandInput& in) {
    const Json& fj = json_field(in.request, "f");
    const Json& gj = json_field(in.request, "g");
    if (element_json_is_quotient(fj) != element_json_is_quotient(gj))
        throw SchemaError("\"f\" and \"g\" must live in the same kind of ring");
    CommandResult out;
    if (element_json_is_quotient(fj)) {
        QuotientElement f = quotient_from_json(fj), g = quotient_from_json(gj);
        QuotientElement prod = quotient_mul(f, g);
        out.payload["product"] = quotient_to_json(prod);
        out.payload["norm_f"] = norm_to_json(ring_norm(in.ctx, f));
        out.payload["norm_g"] = norm_to_json(ring_norm(in.ctx, g));
        out.payload["norm"] = norm_to_json(ring_norm(in.ctx, prod));
    } else {
        LaurentElement f = laurent_from_json(fj), g = laurent_from_json(gj);
        LaurentElement prod = laurent_mul(f, g);
        out.payload["product"] = laurent_to_json(prod);
        out.payload["norm_f"] = norm_to_json(ring_norm(in.ctx, f));
        out.payload["norm_g"] = norm_to_json(ring_norm(in.ctx, g));
        out.payload["norm"] = norm_to_json(ring_norm(in.ctx, prod));
    }
    return out;
}

CommandResult cmd_series_invert(const CommandInput& in) {
    LaurentElement h = laurent_from_json(json_field(in.request, "element"));
    InvertResult inv = invert_near_unit(in.ctx, h, in.tol());
    CommandResult out;
    out.payload["inverse"] = laurent_to_json(inv.inverse);
    out.payload["tail"] = norm_to_json(inv.tail);
    return out;
}

CommandResult cmd_constants(const CommandInput& in) {
    const Json& mj = json_field(in.request, "modulus");
    if (!mj.is_array()) throw SchemaError("\"modulus\" must be an array of rationals");
    std::vector<Rat> modulus;
    for (const Json& e : mj) modulus.push_back(rat_from_json(e));
    NormValue r = norm_from_json(json_field(in.request, "r"));

    NormComparisonConstants nc = norm_constants(in.ctx, modulus, r);
    CommandResult out;
    out.payload["constants"] = Json{{"vprime", interval_to_json(nc.vprime)},
                                    {"cprime", interval_to_json(nc.cprime)},
                                    {"s", rat_str(nc.s)},
                                    {"m", rat_str(nc.m)},
                                    {"C", interval_to_json(nc.C)}};
    if (modulus.size() >= 3) {
        ResultantBound rb = resultant_bound(in.ctx, modulus, r);
        Json poly = Json::array();
        for (const Rat& c : rb.res_poly) poly.push_back(rat_str(c));
        out.payload["resultant"] = Json{{"poly", poly}, {"m", rat_str(rb.m)}};
    }
    return out;
}

// ---- patching -----------------------------------------------------------------

GroupChart chart_from_request(const PrimeContext& ctx, const Json& req, size_t n_default) {
    GroupChart chart;
    chart.n = n_default;
    if (req.contains("chart")) {
        const Json& cj = req["chart"];
        chart.n = (size_t)int_field_or(cj, "n", (long)n_default);
        if (cj.contains("M")) chart.M = rat_from_json(cj["M"]);
        if (cj.contains("delta")) {
            NormValue d = norm_from_json(cj["delta"]);
            if (d.is_zero()) throw SchemaError("chart \"delta\" must be positive");
            chart.delta = Magnitude::from_norm(ctx, d);
        }
    }
    return chart;
}

Rat split_constant_from_request(const Json& req) {
    if (req.contains("d")) return rat_from_json(req["d"]);
    return Rat(1, 2);
}

struct FactorRun {
    Json payload;
    bool pass{true};
    PatchingCertificate cert;
    double log10_d{0}, log10_epsp{0};
};

template <typename E, typename MatToJson>
FactorRun run_factor(const CommandInput& in, const PatchTriple<E>& triple, const Mat<E>& target,
                     MatToJson&& mat_json) {
    GroupChart chart = chart_from_request(in.ctx, in.request, target.n);
    ChartExpansion expansion = expand_chart(in.ctx, chart);
    NormValue tol = in.tol();
    bool outer_first = in.request.contains("outer_first") && in.request["outer_first"].get<bool>();

    FactorResult<E> fr = factor_near_identity(in.ctx, triple, expansion, target, tol, outer_first);
    Mat<E> id = mat_identity(target.n, target.a[0]);
    VerifyResult vr = verify_factorization(in.ctx, mat_add(id, target), mat_add(id, fr.u),
                                           mat_add(id, fr.v), tol);

    FactorRun out;
    out.cert = fr.cert;
    out.payload["u"] = mat_json(fr.u);
    out.payload["v"] = mat_json(fr.v);
    out.payload["certificate"] = certificate_to_json(fr.cert);
    out.payload["verified"] = vr.ok;
    out.payload["residual"] = norm_to_json(vr.residual);
    out.payload["p"] = in.ctx.p.convert_to<long>();
    out.payload["d"] = rat_str(triple.d);
    out.log10_d = std::log10((double)triple.d);
    NormValue na = mat_norm(in.ctx, target);
    if (!na.is_zero()) {
        Magnitude epsp = Magnitude::from_norm(in.ctx, na) / Magnitude::from_rational(triple.d);
        out.log10_epsp = std::log10(magnitude_approx(epsp));
    }
    out.payload["eps_prime_log10"] = out.log10_epsp;
    out.pass = fr.cert.conditions_ok && vr.ok;
    return out;
}

CommandResult cmd_patch_factor(const CommandInput& in) {
    const Json& req = in.request;
    const Json& ring = json_field(req, "ring");
    NormValue r = norm_from_json(json_field(ring, "r"));
    RingTag tag{r, RingMode::Circle};
    std::string kind = string_field(ring, "kind");

    FactorRun run;
    if (kind == "laurent") {
        PatchTriple<LaurentElement> t;
        t.proto = laurent_zero(tag);
        t.d = split_constant_from_request(req);
        run = run_factor(in, t, lmat_from_json(json_field(req, "target")),
                         [](const Mat<LaurentElement>& m) { return lmat_to_json(m); });
    } else if (kind == "quotient") {
        const Json& mj = json_field(ring, "modulus");
        if (!mj.is_array()) throw SchemaError("ring \"modulus\" must be an array of rationals");
        std::vector<Rat> modulus;
        for (const Json& e : mj) modulus.push_back(rat_from_json(e));
        PatchTriple<QuotientElement> t;
        t.proto = quotient_zero(tag, modulus);
        t.d = split_constant_from_request(req);
        run = run_factor(in, t, qmat_from_json(json_field(req, "target")),
                         [](const Mat<QuotientElement>& m) { return qmat_to_json(m); });
    } else {
        throw SchemaError("ring \"kind\" must be \"laurent\" or \"quotient\"");
    }

    if (req.contains("plot")) {
        std::string path = string_field(req, "plot");
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write plot file " + path);
        f << svg_convergence_plot(in.ctx, run.cert, run.log10_d, run.log10_epsp);
    }
    CommandResult out;
    out.payload = std::move(run.payload);
    out.pass = run.pass;
    return out;
}

CommandResult cmd_patch_propagate(const CommandInput& in) {
    NiceCover cover = cover_from_request(in.ctx, in.request);
    ColoringResult col = parity_coloring(cover);
    CommandResult out;
    if (!col.ok) {
        out.pass = false;
        out.payload["reason"] = col.reason;
        return out;
    }
    const Json& tj = json_field(in.request, "transitions");
    if (!tj.is_array() || tj.size() != cover.nodes.size())
        throw SchemaError("\"transitions\" must list one matrix per cover node");
    std::vector<Mat<LaurentElement>> transitions;
    for (const Json& e : tj) transitions.push_back(lmat_from_json(e));

    PropagateResult pr = propagate_over_cover(in.ctx, cover, col.colors, transitions, in.tol());
    out.payload["cover"] = cover_to_json(cover);
    out.payload["colors"] = col.colors;
    Json pieces = Json::array(), certs = Json::array(), ver = Json::array();
    for (const ProductChain& c : pr.pieces) pieces.push_back(chain_to_json(c));
    for (const PatchingCertificate& c : pr.certificates) certs.push_back(certificate_to_json(c));
    for (const NodeReport& nr : pr.verification) {
        ver.push_back(Json{{"node", (long)nr.node}, {"residual", norm_to_json(nr.residual)}, {"ok", nr.ok}});
        out.pass = out.pass && nr.ok;
    }
    out.payload["pieces"] = pieces;
    out.payload["certificates"] = certs;
    out.payload["verification"] = ver;
    return out;
}

CommandResult cmd_patch_verify(const CommandInput& in) {
    const Json& gj = json_field(in.request, "g");
    auto entry_is_quotient = [&](const Json& mj) {
        const Json& rows = json_field(mj, "entries");
        if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty())
            throw SchemaError("\"entries\" must hold one row per dimension");
        return element_json_is_quotient(rows[0][0]);
    };
    VerifyResult vr;
    if (entry_is_quotient(gj)) {
        vr = verify_factorization(in.ctx, qmat_from_json(gj),
                                  qmat_from_json(json_field(in.request, "g1")),
                                  qmat_from_json(json_field(in.request, "g2")), in.tol());
    } else {
        vr = verify_factorization(in.ctx, lmat_from_json(gj),
                                  lmat_from_json(json_field(in.request, "g1")),
                                  lmat_from_json(json_field(in.request, "g2")), in.tol());
    }
    CommandResult out;
    out.pass = vr.ok;
    out.payload["verified"] = vr.ok;
    out.payload["residual"] = norm_to_json(vr.residual);
    return out;
}

// ---- thickening ---------------------------------------------------------------

struct ThickenProblem {
    RelativeRootSystem roots;
    BasePoint base;
    NormValue r;
    size_t alpha{0};
};

ThickenProblem thicken_problem(const Json& req) {
    ThickenProblem p;
    p.roots = relative_roots_from_json(json_field(req, "roots"));
    p.base.t = norm_from_json(json_field(json_field(req, "base"), "t"));
    p.r = norm_from_json(json_field(req, "r"));
    long alpha = int_field_or(req, "alpha", 0);
    if (alpha < 0 || (size_t)alpha >= p.roots.size()) throw SchemaError("\"alpha\" out of range");
    p.alpha = (size_t)alpha;
    return p;
}

CommandResult cmd_thicken_window(const CommandInput& in) {
    ThickenProblem p = thicken_problem(in.request);
    ThickeningWindow w = thickening_window(in.ctx, p.roots, p.alpha, p.r, p.base);
    CommandResult out;
    out.payload["window"] = window_to_json(w);
    out.payload["radius_at_base"] =
        norm_to_json(relative_fiber_radius(in.ctx, p.roots, p.alpha, p.r, p.base.t));
    return out;
}

ThickenedDomain thickened_domain_from_json(const Json& j, Rel fallback) {
    ThickenedDomain d;
    d.rel = fallback;
    if (j.is_null()) return d;
    if (j.contains("rel")) {
        std::string rel = string_field(j, "rel");
        if (rel == "le") d.rel = Rel::LE;
        else if (rel == "ge") d.rel = Rel::GE;
        else throw SchemaError("thickened domain \"rel\" must be \"le\" or \"ge\"");
    }
    if (j.contains("extra")) {
        if (!j["extra"].is_array()) throw SchemaError("\"extra\" must be an array of constraints");
        for (const Json& e : j["extra"]) d.extra.push_back(constraint_from_json(e));
    }
    return d;
}

CommandResult cmd_thicken_check(const CommandInput& in) {
    ThickenProblem p = thicken_problem(in.request);
    ThickeningWindow w = thickening_window(in.ctx, p.roots, p.alpha, p.r, p.base);
    ThickenedDomain u = thickened_domain_from_json(
        in.request.contains("u") ? in.request["u"] : Json(nullptr), Rel::LE);
    ThickenedDomain v = thickened_domain_from_json(
        in.request.contains("v") ? in.request["v"] : Json(nullptr), Rel::GE);
    long fibers = int_field_or(in.request, "fibers", 4);
    long points = in.samples(1000);

    FiberCheckReport rep =
        thickened_domain_check(in.ctx, p.roots, p.r, u, v, w, p.base, fibers, points, in.seed());
    CommandResult out;
    out.pass = rep.pass;
    out.payload["window"] = window_to_json(w);
    out.payload["report"] = Json{{"pass", rep.pass},
                                 {"fibers", rep.fibers},
                                 {"points_per_fiber", rep.points_per_fiber},
                                 {"failure", rep.failure},
                                 {"witness_fiber", rep.witness_fiber}};
    return out;
}

// ---- suite --------------------------------------------------------------------

CommandResult cmd_suite(const CommandInput& in) {
    CommandRunner runner = [](const std::string& cmd, const Json& request) {
        RunOutput o = dispatch_command(cmd, request, Json{{"format", "json"}});
        return std::make_pair(o.code, Json::parse(o.body));
    };
    SuiteReport rep = run_acceptance_suite(in.seed(), in.samples(1000), runner);
    CommandResult out;
    out.pass = rep.pass;
    out.payload = suite_report_to_json(rep);
    for (const CriterionOutcome& c : rep.criteria)
        out.text += c.name + ": " + (c.pass ? "PASS" : "FAIL (" + c.detail + ")") + "\n";
    return out;
}

using Handler = CommandResult (*)(const CommandInput&);

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table{
        {"norm-eval", cmd_norm_eval},
        {"point-classify", cmd_point_classify},
        {"fiber-radii", cmd_fiber_radii},
        {"domain-op", cmd_domain_op},
        {"cover-build", cmd_cover_build},
        {"cover-check", cmd_cover_check},
        {"cover-color", cmd_cover_color},
        {"cover-dot", cmd_cover_dot},
        {"series-split", cmd_series_split},
        {"series-mul", cmd_series_mul},
        {"series-invert", cmd_series_invert},
        {"constants", cmd_constants},
        {"patch-factor", cmd_patch_factor},
        {"patch-propagate", cmd_patch_propagate},
        {"patch-verify", cmd_patch_verify},
        {"thicken-window", cmd_thicken_window},
        {"thicken-check", cmd_thicken_check},
        {"suite", cmd_suite},
    };
    return table;
}

RunOutput render(const CommandInput& in, const std::string& command, CommandResult&& res) {
    RunOutput out;
    out.code = res.pass ? 0 : 4;
    if (in.format == "json") {
        Json env = std::move(res.payload);
        env["status"] = res.pass ? "ok" : "fail";
        out.body = env.dump() + "\n";
    } else if (in.format == "text") {
        out.body = std::string("status: ") + (res.pass ? "ok" : "fail") + "\n";
        out.body += res.text.empty() ? res.payload.dump(2) + "\n" : res.text;
    } else if (in.format == "dot") {
        if (command != "cover-dot") throw SchemaError("dot format is only available for cover-dot");
        out.body = res.text;
    } else {
        throw SchemaError("format must be \"json\", \"text\" or \"dot\"");
    }
    return out;
}

RunOutput error_output(const std::string& format, int code, const std::string& kind,
                       const std::string& message) {
    RunOutput out;
    out.code = code;
    if (format == "text") {
        out.body = "status: error (" + kind + ")\n" + message + "\n";
    } else {
        out.body = Json{{"status", "error"}, {"error", kind}, {"message", message}}.dump() + "\n";
    }
    return out;
}

} // namespace

RunOutput dispatch_command(const std::string& command, const Json& request, const Json& options) {
    auto start = std::chrono::steady_clock::now();
    std::string format = "json";
    if (options.is_object() && options.contains("format")) {
        if (!options["format"].is_string()) format = "";
        else format = options["format"].get<std::string>();
    }
    if (format != "json" && format != "text" && format != "dot")
        return error_output("json", 3, "schema", "format must be \"json\", \"text\" or \"dot\"");

    RunOutput out;
    auto it = handlers().find(command);
    if (it == handlers().end()) {
        out = error_output(format, 2, "unknown-command", "unknown command \"" + command + "\"");
    } else {
        try {
            CommandInput in{parse_prime(request), request, options, format};
            out = render(in, command, it->second(in));
        } catch (const SchemaError& e) {
            out = error_output(format, 3, "schema", e.what());
        } catch (const std::invalid_argument& e) {
            out = error_output(format, 3, "schema", e.what());
        } catch (const std::domain_error& e) {
            out = error_output(format, 4, "math", e.what());
        } catch (const Json::exception& e) {
            out = error_output(format, 3, "schema", e.what());
        } catch (const std::exception& e) {
            out = error_output(format, 4, "math", e.what());
        }
    }
    out.elapsed_ms = (long)std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return out;
}

RunOutput dispatch_command_text(const std::string& command, const std::string& request_text,
                                const std::string& options_text) {
    Json request, options;
    try {
        request = request_text.empty() ? Json::object() : Json::parse(request_text);
        options = options_text.empty() ? Json::object() : Json::parse(options_text);
        if (!request.is_object()) throw SchemaError("the request must be a JSON object");
        if (!options.is_object()) throw SchemaError("the options must be a JSON object");
    } catch (const std::exception& e) {
        RunOutput out;
        out.code = 3;
        out.body = Json{{"status", "error"}, {"error", "schema"}, {"message", e.what()}}.dump() + "\n";
        return out;
    }
    return dispatch_command(command, request, options);
}

} // namespace berk
