#pragma once

#include "berkpatch/interval.hpp"
#include "berkpatch/norm.hpp"

#include <json.hpp>

namespace berk {

using Json = nlohmann::json;

// Norm values serialize as {"kind":"zero"} or {"kind":"pos","a":"...","b":"..."} with
// exact rational strings, so a parse/serialize loop is bit-exact.
Json norm_to_json(const NormValue& v);
NormValue norm_from_json(const Json& j);

Json exponent_to_json(const LogExponent& e);
LogExponent exponent_from_json(const Json& j);

Json interval_to_json(const RationalInterval& iv);

Rat rat_from_json(const Json& j);
inline Json rat_to_json(const Rat& q) { return Json(rat_str(q)); }

// Schema violations raise this; the dispatcher maps it to the invalid-input status.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace berk
