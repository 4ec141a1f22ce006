#pragma once

#include "berkpatch/domain.hpp"
#include "berkpatch/norm.hpp"
#include "berkpatch/point.hpp"

#include <string>

namespace berk {

// Human-readable forms used by text output and DOT labels. These are presentation
// only; exact data travels through the JSON schema.
std::string norm_text(const PrimeContext& ctx, const NormValue& v);
std::string point_text(const PrimeContext& ctx, const GaussPoint& pt);
std::string poly_text(const std::vector<Rat>& coeffs);
std::string constraint_text(const PrimeContext& ctx, const Constraint& c);

} // namespace berk
