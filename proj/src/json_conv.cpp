#include "berkpatch/json_conv.hpp"

namespace berk {

const Json& json_field(const Json& j, const char* name) {
    if (!j.is_object()) throw SchemaError(std::string("expected an object with field \"") + name + "\"");
    auto it = j.find(name);
    if (it == j.end()) throw SchemaError(std::string("missing field \"") + name + "\"");
    return *it;
}

std::string string_field(const Json& j, const char* name) {
    const Json& f = json_field(j, name);
    if (!f.is_string()) throw SchemaError(std::string("field \"") + name + "\" must be a string");
    return f.get<std::string>();
}

long int_field(const Json& j, const char* name) {
    const Json& f = json_field(j, name);
    if (!f.is_number_integer()) throw SchemaError(std::string("field \"") + name + "\" must be an integer");
    return (long)f.get<std::int64_t>();
}

long int_field_or(const Json& j, const char* name, long fallback) {
    if (!j.is_object() || !j.contains(name)) return fallback;
    return int_field(j, name);
}

Json point_to_json(const GaussPoint& pt) {
    if (pt.infinity) return Json{{"infinity", true}};
    return Json{{"center", rat_str(pt.center)}, {"radius", norm_to_json(pt.radius)}};
}

GaussPoint point_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("point must be an object");
    if (j.contains("infinity")) {
        if (!j["infinity"].is_boolean() || !j["infinity"].get<bool>())
            throw SchemaError("\"infinity\" may only be true");
        return GaussPoint::at_infinity();
    }
    Rat c = rat_from_json(json_field(j, "center"));
    NormValue r = j.contains("radius") ? norm_from_json(j["radius"]) : NormValue::zero_value();
    return GaussPoint::circle(std::move(c), std::move(r));
}

namespace {

std::string rel_str(Rel r) { return r == Rel::LE ? "le" : (r == Rel::EQ ? "eq" : "ge"); }

Rel rel_parse(const std::string& s) {
    if (s == "le") return Rel::LE;
    if (s == "eq") return Rel::EQ;
    if (s == "ge") return Rel::GE;
    throw SchemaError("relation must be \"le\", \"eq\" or \"ge\"");
}

std::vector<Rat> rat_list_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array of rationals");
    std::vector<Rat> out;
    for (const Json& e : j) out.push_back(rat_from_json(e));
    return out;
}

Json rat_list_to_json(const std::vector<Rat>& v) {
    Json a = Json::array();
    for (const Rat& q : v) a.push_back(rat_str(q));
    return a;
}

} // namespace

Json constraint_to_json(const Constraint& c) {
    return Json{{"poly", rat_list_to_json(c.poly)}, {"rel", rel_str(c.rel)}, {"bound", norm_to_json(c.bound)}};
}

Constraint constraint_from_json(const Json& j) {
    Constraint c;
    c.poly = rat_list_from_json(json_field(j, "poly"), "\"poly\"");
    c.rel = rel_parse(string_field(j, "rel"));
    c.bound = norm_from_json(json_field(j, "bound"));
    return c;
}

Json domain_to_json(const AffinoidDomain& d) {
    Json cs = Json::array();
    for (const Constraint& c : d.constraints) cs.push_back(constraint_to_json(c));
    const char* conn = d.connected == Certainty::Yes ? "yes" : (d.connected == Certainty::No ? "no" : "unknown");
    return Json{{"constraints", cs}, {"connected", conn}};
}

AffinoidDomain domain_from_json(const Json& j) {
    AffinoidDomain d;
    const Json* cs = &j;
    if (j.is_object()) {
        cs = &json_field(j, "constraints");
        if (j.contains("connected")) {
            std::string c = string_field(j, "connected");
            if (c == "yes") d.connected = Certainty::Yes;
            else if (c == "no") d.connected = Certainty::No;
            else if (c == "unknown") d.connected = Certainty::Unknown;
            else throw SchemaError("\"connected\" must be \"yes\", \"no\" or \"unknown\"");
        }
    }
    if (!cs->is_array()) throw SchemaError("domain must be a constraint array or an object holding one");
    for (const Json& e : *cs) d.constraints.push_back(constraint_from_json(e));
    return d;
}

Json cover_to_json(const NiceCover& c) {
    Json pieces = Json::array(), nodes = Json::array(), edges = Json::array();
    for (const AffinoidDomain& p : c.pieces) pieces.push_back(domain_to_json(p));
    for (const GaussPoint& n : c.nodes) nodes.push_back(point_to_json(n));
    for (const auto& [a, b] : c.edges) edges.push_back(Json::array({a, b}));
    return Json{{"pieces", pieces}, {"nodes", nodes}, {"edges", edges}};
}

NiceCover cover_from_json(const Json& j) {
    NiceCover c;
    const Json& pieces = json_field(j, "pieces");
    const Json& nodes = json_field(j, "nodes");
    const Json& edges = json_field(j, "edges");
    if (!pieces.is_array() || !nodes.is_array() || !edges.is_array())
        throw SchemaError("cover fields \"pieces\", \"nodes\" and \"edges\" must be arrays");
    for (const Json& e : pieces) c.pieces.push_back(domain_from_json(e));
    for (const Json& e : nodes) c.nodes.push_back(point_from_json(e));
    for (const Json& e : edges) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw SchemaError("each edge must be a pair of piece indices");
        c.edges.emplace_back((int)e[0].get<std::int64_t>(), (int)e[1].get<std::int64_t>());
    }
    return c;
}

Json tag_to_json(const RingTag& t) {
    const char* mode = t.mode == RingMode::Disc ? "disc" : (t.mode == RingMode::Outer ? "outer" : "circle");
    return Json{{"r", norm_to_json(t.r)}, {"mode", mode}};
}

RingTag tag_from_json(const Json& j) {
    RingTag t;
    t.r = norm_from_json(json_field(j, "r"));
    std::string mode = string_field(j, "mode");
    if (mode == "disc") t.mode = RingMode::Disc;
    else if (mode == "outer") t.mode = RingMode::Outer;
    else if (mode == "circle") t.mode = RingMode::Circle;
    else throw SchemaError("ring mode must be \"disc\", \"outer\" or \"circle\"");
    return t;
}

namespace {

long exponent_key(const std::string& key) {
    try {
        size_t used = 0;
        long n = std::stol(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
        return n;
    } catch (const std::exception&) {
        throw SchemaError("coefficient keys must be integer exponents, got \"" + key + "\"");
    }
}

} // namespace

Json laurent_to_json(const LaurentElement& f) {
    Json coeffs = Json::object();
    for (const auto& [n, c] : f.coeffs) coeffs[std::to_string(n)] = rat_str(c);
    return Json{{"tag", tag_to_json(f.tag)}, {"coeffs", coeffs}};
}

LaurentElement laurent_from_json(const Json& j) {
    LaurentElement f{tag_from_json(json_field(j, "tag")), {}};
    const Json& coeffs = json_field(j, "coeffs");
    if (!coeffs.is_object()) throw SchemaError("\"coeffs\" must be an object keyed by exponent");
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
        Rat c = rat_from_json(it.value());
        if (c != 0) f.coeffs[exponent_key(it.key())] = std::move(c);
    }
    try {
        laurent_validate(f);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    return f;
}

bool element_json_is_quotient(const Json& j) { return j.is_object() && j.contains("modulus"); }

Json quotient_to_json(const QuotientElement& f) {
    size_t d = quotient_degree(f);
    Json coeffs = Json::object();
    for (size_t i = 0; i < d; ++i)
        for (const auto& [n, c] : f.rep[i].coeffs) {
            std::string key = std::to_string(n);
            if (!coeffs.contains(key)) {
                Json row = Json::array();
                for (size_t t = 0; t < d; ++t) row.push_back("0");
                coeffs[key] = row;
            }
            coeffs[key][i] = rat_str(c);
        }
    return Json{{"tag", tag_to_json(f.tag)}, {"modulus", rat_list_to_json(f.modulus)}, {"coeffs", coeffs}};
}

QuotientElement quotient_from_json(const Json& j) {
    RingTag tag = tag_from_json(json_field(j, "tag"));
    std::vector<Rat> modulus = rat_list_from_json(json_field(j, "modulus"), "\"modulus\"");
    if (modulus.size() < 2) throw SchemaError("modulus must have degree at least 1");
    size_t d = modulus.size() - 1;
    std::vector<LaurentElement> rep(d, laurent_zero(tag));
    const Json& coeffs = json_field(j, "coeffs");
    if (!coeffs.is_object()) throw SchemaError("\"coeffs\" must be an object keyed by exponent");
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
        long n = exponent_key(it.key());
        const Json& val = it.value();
        if (val.is_array()) {
            if (val.size() > d) throw SchemaError("coefficient row longer than the representative degree");
            for (size_t i = 0; i < val.size(); ++i) {
                Rat c = rat_from_json(val[i]);
                if (c != 0) rep[i].coeffs[n] = std::move(c);
            }
        } else {
            Rat c = rat_from_json(val);
            if (c != 0) rep[0].coeffs[n] = std::move(c);
        }
    }
    try {
        return quotient_make(tag, modulus, std::move(rep));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

Json shape_to_json(const OuterQuotientShape& s) {
    Json tail = Json::array();
    for (const auto& [n, i, c] : s.tail)
        tail.push_back(Json{{"n", n}, {"i", (long)i}, {"c", rat_str(c)}});
    return Json{{"r", norm_to_json(s.r)}, {"d", (long)s.d}, {"a00", rat_str(s.a00)}, {"tail", tail}};
}

namespace {

template <typename E, typename ToJson>
Json mat_to_json_impl(const Mat<E>& m, ToJson&& elem) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.n; ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.n; ++j) row.push_back(elem(m.a[i * m.n + j]));
        rows.push_back(row);
    }
    return Json{{"n", (long)m.n}, {"entries", rows}};
}

template <typename E, typename FromJson>
Mat<E> mat_from_json_impl(const Json& j, FromJson&& elem) {
    long n = int_field(j, "n");
    if (n <= 0) throw SchemaError("matrix dimension must be positive");
    const Json& rows = json_field(j, "entries");
    if (!rows.is_array() || (long)rows.size() != n)
        throw SchemaError("\"entries\" must hold one row per dimension");
    Mat<E> m;
    m.n = (size_t)n;
    for (const Json& row : rows) {
        if (!row.is_array() || (long)row.size() != n)
            throw SchemaError("every matrix row must have one entry per column");
        for (const Json& e : row) m.a.push_back(elem(e));
    }
    for (const E& e : m.a)
        if (!tag_equal(e.tag, m.a[0].tag)) throw SchemaError("matrix entries must share one ring tag");
    return m;
}

} // namespace

Json lmat_to_json(const Mat<LaurentElement>& m) {
    return mat_to_json_impl(m, [](const LaurentElement& e) { return laurent_to_json(e); });
}

Mat<LaurentElement> lmat_from_json(const Json& j) {
    return mat_from_json_impl<LaurentElement>(j, [](const Json& e) { return laurent_from_json(e); });
}

Json qmat_to_json(const Mat<QuotientElement>& m) {
    return mat_to_json_impl(m, [](const QuotientElement& e) { return quotient_to_json(e); });
}

Mat<QuotientElement> qmat_from_json(const Json& j) {
    Mat<QuotientElement> m = mat_from_json_impl<QuotientElement>(j, [](const Json& e) { return quotient_from_json(e); });
    for (const QuotientElement& e : m.a)
        if (e.modulus != m.a[0].modulus) throw SchemaError("matrix entries must share one modulus");
    return m;
}

Json certificate_to_json(const PatchingCertificate& c) {
    Json steps = Json::array();
    for (const StepRecord& s : c.steps)
        steps.push_back(Json{{"step", s.step},
                             {"norm_u", norm_to_json(s.norm_u)},
                             {"norm_v", norm_to_json(s.norm_v)},
                             {"delta_u", norm_to_json(s.delta_u)},
                             {"delta_v", norm_to_json(s.delta_v)},
                             {"residual", norm_to_json(s.residual)},
                             {"cond1", s.cond1},
                             {"cond2", s.cond2},
                             {"cond3", s.cond3}});
    return Json{{"steps", steps},
                {"final_residual", norm_to_json(c.final_residual)},
                {"conditions_ok", c.conditions_ok},
                {"iterations", c.iterations}};
}

PatchingCertificate certificate_from_json(const Json& j) {
    PatchingCertificate c;
    const Json& steps = json_field(j, "steps");
    if (!steps.is_array()) throw SchemaError("\"steps\" must be an array");
    for (const Json& s : steps) {
        StepRecord rec;
        rec.step = int_field(s, "step");
        rec.norm_u = norm_from_json(json_field(s, "norm_u"));
        rec.norm_v = norm_from_json(json_field(s, "norm_v"));
        rec.delta_u = norm_from_json(json_field(s, "delta_u"));
        rec.delta_v = norm_from_json(json_field(s, "delta_v"));
        rec.residual = norm_from_json(json_field(s, "residual"));
        rec.cond1 = json_field(s, "cond1").get<bool>();
        rec.cond2 = json_field(s, "cond2").get<bool>();
        rec.cond3 = json_field(s, "cond3").get<bool>();
        c.steps.push_back(rec);
    }
    c.final_residual = norm_from_json(json_field(j, "final_residual"));
    c.conditions_ok = json_field(j, "conditions_ok").get<bool>();
    c.iterations = int_field(j, "iterations");
    return c;
}

Json chain_to_json(const ProductChain& c) {
    Json factors = Json::array();
    for (const ChainFactor& f : c.factors)
        factors.push_back(Json{{"off", lmat_to_json(f.off)}, {"inverted", f.inverted}});
    return Json{{"factors", factors}};
}

Json window_to_json(const ThickeningWindow& w) {
    Json rows = Json::array();
    for (const WindowRow& r : w.rows)
        rows.push_back(Json{{"q", rat_str(r.q)}, {"w", exponent_to_json(r.w)}});
    return Json{{"t1_exp", w.t1_exp ? exponent_to_json(*w.t1_exp) : Json(nullptr)},
                {"t2_exp", w.t2_exp ? exponent_to_json(*w.t2_exp) : Json(nullptr)},
                {"rows", rows}};
}

RelativeRootSystem relative_roots_from_json(const Json& j) {
    if (!j.is_array()) throw SchemaError("\"roots\" must be an array");
    RelativeRootSystem rs;
    for (const Json& e : j) {
        RelRoot r;
        r.c = rat_from_json(json_field(e, "c"));
        r.k = int_field_or(e, "k", 0);
        r.mult = int_field_or(e, "mult", 1);
        rs.roots.push_back(std::move(r));
    }
    try {
        validate_relative_roots(rs);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    return rs;
}

Json relative_roots_to_json(const RelativeRootSystem& rs) {
    Json out = Json::array();
    for (const RelRoot& r : rs.roots)
        out.push_back(Json{{"c", rat_str(r.c)}, {"k", r.k}, {"mult", r.mult}});
    return out;
}

RootSystem root_system_from_json(const Json& j) {
    RootSystem rs;
    const Json& mult = json_field(j, "mult");
    if (!mult.is_array()) throw SchemaError("\"mult\" must be an array of integers");
    for (const Json& m : mult) {
        if (!m.is_number_integer()) throw SchemaError("\"mult\" must be an array of integers");
        rs.mult.push_back((long)m.get<std::int64_t>());
    }
    const Json& dist = json_field(j, "dist");
    size_t n = rs.mult.size();
    if (!dist.is_array() || dist.size() != n) throw SchemaError("\"dist\" must be a square matrix");
    for (const Json& row : dist) {
        if (!row.is_array() || row.size() != n) throw SchemaError("\"dist\" must be a square matrix");
        std::vector<NormValue> r;
        for (const Json& e : row) r.push_back(norm_from_json(e));
        rs.dist.push_back(std::move(r));
    }
    if (j.contains("embedded"))
        rs.embedded = rat_list_from_json(j["embedded"], "\"embedded\"");
    return rs;
}

} // namespace berk
