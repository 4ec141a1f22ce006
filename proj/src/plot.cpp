#include "berkpatch/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace berk {

namespace {

double norm_log10(const PrimeContext& ctx, const NormValue& v, double floor_hint) {
    if (v.is_zero()) return floor_hint;
    double e = (double)v.e.a + std::sqrt(2.0) * (double)v.e.b;
    return -e * std::log10((double)ctx.p);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

} // namespace

std::string svg_convergence_plot(const PrimeContext& ctx, const PatchingCertificate& cert,
                                 double log10_d, double log10_epsp) {
    const double W = 640, H = 400, L = 56, R = 24, T = 28, B = 44;
    long steps = (long)cert.steps.size();

    std::vector<double> res, env;
    for (long s = 0; s < steps; ++s) {
        env.push_back(log10_d + (double)(s + 2) / 2.0 * log10_epsp);
        res.push_back(norm_log10(ctx, cert.steps[(size_t)s].residual, env.back() - 2.0));
    }
    if (steps == 0) {
        env.push_back(log10_d + log10_epsp);
        res.push_back(norm_log10(ctx, cert.final_residual, env.back() - 2.0));
    }

    double lo = res[0], hi = res[0];
    for (double v : res) { lo = std::min(lo, v); hi = std::max(hi, v); }
    for (double v : env) { lo = std::min(lo, v); hi = std::max(hi, v); }
    if (hi - lo < 1.0) { hi += 0.5; lo -= 0.5; }
    double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    long xmax = std::max<long>(1, steps - 1);
    auto px = [&](long s) { return L + (W - L - R) * (double)s / (double)xmax; };
    auto py = [&](double v) { return T + (H - T - B) * (hi - v) / (hi - lo); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" + fmt(H) +
           "\" viewBox=\"0 0 " + fmt(W) + " " + fmt(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(W / 2) + "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">residual per step vs envelope</text>\n";
    svg += "<line x1=\"" + fmt(L) + "\" y1=\"" + fmt(H - B) + "\" x2=\"" + fmt(W - R) + "\" y2=\"" +
           fmt(H - B) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt(L) + "\" y1=\"" + fmt(T) + "\" x2=\"" + fmt(L) + "\" y2=\"" + fmt(H - B) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(W / 2) + "\" y=\"" + fmt(H - 12) + "\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"11\">step</text>\n";
    svg += "<text x=\"14\" y=\"" + fmt(H / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\" transform=\"rotate(-90 14 " + fmt(H / 2) + ")\">log10 residual</text>\n";

    auto polyline = [&](const std::vector<double>& ys, const char* style) {
        std::string pts;
        for (size_t s = 0; s < ys.size(); ++s)
            pts += fmt(px((long)s)) + "," + fmt(py(ys[s])) + " ";
        svg += std::string("<polyline fill=\"none\" points=\"") + pts + "\" " + style + "/>\n";
    };
    polyline(env, "stroke=\"#888\" stroke-dasharray=\"6 4\" stroke-width=\"1.5\"");
    polyline(res, "stroke=\"#1f5fd0\" stroke-width=\"2\"");
    for (size_t s = 0; s < res.size(); ++s) {
        svg += "<circle cx=\"" + fmt(px((long)s)) + "\" cy=\"" + fmt(py(res[s])) +
               "\" r=\"3\" fill=\"#1f5fd0\"/>\n";
        bool violated = s < cert.steps.size() && !cert.steps[s].cond3;
        if (violated) {
            double x = px((long)s), y = py(res[s]);
            svg += "<path d=\"M" + fmt(x - 5) + " " + fmt(y - 5) + " L" + fmt(x + 5) + " " + fmt(y + 5) +
                   " M" + fmt(x - 5) + " " + fmt(y + 5) + " L" + fmt(x + 5) + " " + fmt(y - 5) +
                   "\" stroke=\"#d02020\" stroke-width=\"2\"/>\n";
        }
    }
    if (steps == 0)
        svg += "<text x=\"" + fmt(W / 2) + "\" y=\"" + fmt(T + 16) + "\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"11\">converged before the first step</text>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace berk
