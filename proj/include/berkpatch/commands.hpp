#pragma once

#include "berkpatch/json_io.hpp"

#include <string>

namespace berk {

// Result of one dispatched command. code follows the process exit contract: 0 pass,
// 2 unknown command, 3 invalid input, 4 mathematical failure. body is the complete
// stdout text; in json format it is a single JSON object on every path, failures
// included. elapsed_ms is measured here so callers can report it without touching
// the deterministic body.
struct RunOutput {
    int code{0};
    std::string body;
    long elapsed_ms{0};
};

// Options: {"seed": <u64>, "format": "json"|"text"|"dot", "tol": <NormValue JSON>,
// "samples": <n>}. Every field optional; seed defaults to 0, format to json.
RunOutput dispatch_command(const std::string& command, const Json& request, const Json& options);

// Same, parsing the two documents first; parse errors come back as code 3.
RunOutput dispatch_command_text(const std::string& command, const std::string& request_text,
                                const std::string& options_text);

} // namespace berk
