#include "berkpatch/format.hpp"

namespace berk {

std::string norm_text(const PrimeContext& ctx, const NormValue& v) {
    if (v.is_zero()) return "0";
    if (v.e.is_zero()) return "1";
    // The displayed exponent is -(a + b*sqrt2).
    Rat na = -v.e.a, nb = -v.e.b;
    std::string expo;
    if (na != 0 || nb == 0) expo += rat_str(na);
    if (nb != 0) {
        if (nb > 0 && !expo.empty()) expo += "+";
        if (nb == -1)
            expo += "-";
        else if (nb != 1)
            expo += rat_str(nb) + "*";
        expo += "sqrt2";
    }
    return ctx.p.str() + "^(" + expo + ")";
}

std::string point_text(const PrimeContext& ctx, const GaussPoint& pt) {
    if (pt.infinity) return "inf";
    if (pt.radius.is_zero()) return "T=" + rat_str(pt.center);
    return "eta(" + rat_str(pt.center) + ", " + norm_text(ctx, pt.radius) + ")";
}

std::string poly_text(const std::vector<Rat>& coeffs) {
    std::string s;
    for (size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] == 0 && coeffs.size() > 1) continue;
        if (!s.empty()) s += coeffs[i] > 0 ? "+" : "";
        std::string c = rat_str(coeffs[i]);
        if (i == 0) {
            s += c;
        } else {
            std::string var = i == 1 ? "T" : "T^" + std::to_string(i);
            if (coeffs[i] == 1)
                s += var;
            else if (coeffs[i] == -1)
                s += "-" + var;
            else
                s += c + "*" + var;
        }
    }
    return s.empty() ? "0" : s;
}

std::string constraint_text(const PrimeContext& ctx, const Constraint& c) {
    const char* rel = c.rel == Rel::LE ? "<=" : c.rel == Rel::EQ ? "=" : ">=";
    return "|" + poly_text(c.poly) + "| " + rel + " " + norm_text(ctx, c.bound);
}

} // namespace berk
