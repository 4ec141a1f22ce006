#include "berkpatch/json_io.hpp"

namespace berk {

Json norm_to_json(const NormValue& v) {
    if (v.is_zero()) return Json{{"kind", "zero"}};
    return Json{{"kind", "pos"}, {"a", rat_str(v.e.a)}, {"b", rat_str(v.e.b)}};
}

NormValue norm_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw SchemaError("norm value must be an object with a \"kind\" string");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "zero") return NormValue::zero_value();
    if (kind != "pos") throw SchemaError("norm kind must be \"zero\" or \"pos\"");
    if (!j.contains("a") || !j.contains("b")) throw SchemaError("positive norm needs \"a\" and \"b\"");
    return NormValue::pos(rat_from_json(j["a"]), rat_from_json(j["b"]));
}

Json exponent_to_json(const LogExponent& e) {
    return Json{{"a", rat_str(e.a)}, {"b", rat_str(e.b)}};
}

LogExponent exponent_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b"))
        throw SchemaError("exponent must be an object with \"a\" and \"b\"");
    return {rat_from_json(j["a"]), rat_from_json(j["b"])};
}

Json interval_to_json(const RationalInterval& iv) {
    return Json{{"lo", rat_str(iv.lo)}, {"hi", rat_str(iv.hi)}};
}

Rat rat_from_json(const Json& j) {
    try {
        if (j.is_string()) return parse_rat(j.get<std::string>());
        if (j.is_number_integer()) return Rat((long long)j.get<std::int64_t>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    throw SchemaError("rationals must be \"num/den\" strings or integers");
}

} // namespace berk
