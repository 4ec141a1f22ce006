#include <berkpatch.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using Json = nlohmann::json;

int emit_error(const std::string& kind, const std::string& message) {
    std::cout << Json{{"status", "error"}, {"error", kind}, {"message", message}}.dump() << "\n";
    return kind == "schema" ? 3 : 4;
}

// The request argument is inline JSON when it looks like JSON, stdin when it is "-",
// and a file path otherwise. An absent argument means the empty request.
bool resolve_request(const std::string& arg, std::string& text, std::string& error) {
    if (arg.empty()) {
        text = "{}";
        return true;
    }
    if (arg == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
        return true;
    }
    size_t first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
        text = arg;
        return true;
    }
    std::ifstream f(arg, std::ios::binary);
    if (!f) {
        error = "cannot read request file " + arg;
        return false;
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    text = buf.str();
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonarchimedean patching toolkit"};
    app.allow_extras(false);

    std::string command, request_arg, seed_arg, tol_arg, format = "json", out_path;
    long samples = -1;
    app.add_option("command", command, "command name, e.g. norm-eval or suite")->required();
    app.add_option("request", request_arg, "request: inline JSON, a file path, or - for stdin");
    app.add_option("--seed", seed_arg, "random seed (defaults to $BERKPATCH_SEED, then 0)");
    app.add_option("--tol", tol_arg, "tolerance as a norm value JSON object");
    app.add_option("--samples", samples, "sample count for randomized checks");
    app.add_option("--format", format, "output format: json, text, or dot");
    app.add_option("--out", out_path, "write the response body to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            std::cout << app.help();
            return 0;
        }
        return emit_error("schema", e.what());
    }

    std::string request_text, io_error;
    if (!resolve_request(request_arg, request_text, io_error)) return emit_error("schema", io_error);

    Json options = Json::object();
    options["format"] = format;
    if (seed_arg.empty()) {
        if (const char* env = std::getenv("BERKPATCH_SEED")) seed_arg = env;
    }
    if (!seed_arg.empty()) {
        try {
            options["seed"] = std::stoull(seed_arg);
        } catch (const std::exception&) {
            return emit_error("schema", "seed must be an unsigned integer");
        }
    }
    if (!tol_arg.empty()) {
        Json tol = Json::parse(tol_arg, nullptr, false);
        if (tol.is_discarded()) return emit_error("schema", "tol must be valid JSON");
        options["tol"] = tol;
    }
    if (samples >= 0) options["samples"] = samples;

    bp_session* session = bp_session_new();
    if (!session) return emit_error("internal", "could not allocate a session");

    auto t0 = std::chrono::steady_clock::now();
    char* body = nullptr;
    int code = bp_run(session, command.c_str(), request_text.c_str(), options.dump().c_str(), &body);
    long elapsed = (long)std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();

    if (code < 0) {
        std::string why = bp_last_error(session);
        bp_session_free(session);
        return emit_error("internal", why.empty() ? "library failure" : why);
    }

    std::string text = body ? body : "";
    bp_string_free(body);
    bp_session_free(session);

    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) return emit_error("io", "cannot write " + out_path);
        f << text;
    } else {
        std::cout << text;
    }
    if (format == "text") std::cerr << "elapsed: " << elapsed << " ms\n";
    return code;
}
