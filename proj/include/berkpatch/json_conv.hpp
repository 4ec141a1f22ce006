#pragma once

#include "berkpatch/cover.hpp"
#include "berkpatch/json_io.hpp"
#include "berkpatch/matrix.hpp"
#include "berkpatch/patch.hpp"
#include "berkpatch/rootsys.hpp"
#include "berkpatch/thicken.hpp"

namespace berk {

// JSON forms for every type that crosses the command boundary. All converters are
// inverse pairs on valid data, bit-exact: parse(serialize(x)) reproduces x. Parsers
// throw SchemaError with a field-level message on malformed input.

Json point_to_json(const GaussPoint& pt);
GaussPoint point_from_json(const Json& j);

Json constraint_to_json(const Constraint& c);
Constraint constraint_from_json(const Json& j);

Json domain_to_json(const AffinoidDomain& d);
AffinoidDomain domain_from_json(const Json& j);

Json cover_to_json(const NiceCover& c);
NiceCover cover_from_json(const Json& j);

Json tag_to_json(const RingTag& t);
RingTag tag_from_json(const Json& j);

// Laurent elements carry just tag + coeffs; quotient elements add "modulus" and list
// each T-coefficient as an array over the X powers (a plain string means X^0 only).
Json laurent_to_json(const LaurentElement& f);
LaurentElement laurent_from_json(const Json& j);

Json quotient_to_json(const QuotientElement& f);
QuotientElement quotient_from_json(const Json& j);

// Either of the two, keyed on the presence of "modulus".
bool element_json_is_quotient(const Json& j);

Json shape_to_json(const OuterQuotientShape& s);

Json lmat_to_json(const Mat<LaurentElement>& m);
Mat<LaurentElement> lmat_from_json(const Json& j);

Json qmat_to_json(const Mat<QuotientElement>& m);
Mat<QuotientElement> qmat_from_json(const Json& j);

Json certificate_to_json(const PatchingCertificate& c);
PatchingCertificate certificate_from_json(const Json& j);

Json chain_to_json(const ProductChain& c);

Json window_to_json(const ThickeningWindow& w);

RelativeRootSystem relative_roots_from_json(const Json& j);
Json relative_roots_to_json(const RelativeRootSystem& rs);

RootSystem root_system_from_json(const Json& j);

// Schema helpers shared by the command layer.
const Json& json_field(const Json& j, const char* name);
std::string string_field(const Json& j, const char* name);
long int_field(const Json& j, const char* name);
long int_field_or(const Json& j, const char* name, long fallback);

} // namespace berk
