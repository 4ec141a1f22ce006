#include "berkpatch/json_conv.hpp"
#include "berkpatch/plot.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

// Renders the convergence plot for a stored patch-factor response. Reads the JSON
// response from the given file and writes the SVG to the second argument or stdout.
int main(int argc, char** argv) {
    if (argc < 2 || argc > 3) {
        std::cerr << "usage: cert2svg <patch-factor-response.json> [out.svg]\n";
        return 1;
    }
    std::ifstream in(argv[1], std::ios::binary);
    if (!in) {
        std::cerr << "cannot read " << argv[1] << "\n";
        return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    try {
        berk::Json body = berk::Json::parse(buf.str());
        berk::PatchingCertificate cert = berk::certificate_from_json(berk::json_field(body, "certificate"));
        berk::PrimeContext ctx{berk::Int(berk::int_field_or(body, "p", 5))};
        double log10_d = 0.0;
        if (body.contains("d"))
            log10_d = std::log10(berk::rat_from_json(body["d"]).convert_to<double>());
        double log10_epsp = body.value("eps_prime_log10", 0.0);

        std::string svg = berk::svg_convergence_plot(ctx, cert, log10_d, log10_epsp);
        if (argc == 3) {
            std::ofstream out(argv[2], std::ios::binary);
            if (!out) {
                std::cerr << "cannot write " << argv[2] << "\n";
                return 1;
            }
            out << svg;
        } else {
            std::cout << svg;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
