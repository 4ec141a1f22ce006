#pragma once

#include "berkpatch/patch.hpp"

#include <string>

namespace berk {

// Standalone SVG of a factorization run: log10 residual per step as a polyline, the
// admissibility envelope d * eps'^((s+2)/2) as a dashed reference curve, and a marker
// on every step whose residual condition failed. Zero-step certificates render as a
// single point. Doubles are for drawing only; nothing here feeds back into checks.
std::string svg_convergence_plot(const PrimeContext& ctx, const PatchingCertificate& cert,
                                 double log10_d, double log10_epsp);

} // namespace berk
