#include "berkpatch.h"

#include "berkpatch/commands.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct bp_session {
    std::string last_error;
};

extern "C" {

bp_session* bp_session_new(void) { return new (std::nothrow) bp_session; }

void bp_session_free(bp_session* session) { delete session; }

int bp_run(bp_session* session, const char* command, const char* request_json,
           const char* options_json, char** out) {
    if (!session || !command || !out) return -1;
    *out = nullptr;
    try {
        berk::RunOutput r = berk::dispatch_command_text(command, request_json ? request_json : "",
                                                        options_json ? options_json : "");
        char* buf = static_cast<char*>(std::malloc(r.body.size() + 1));
        if (!buf) {
            session->last_error = "allocation failure";
            return -1;
        }
        std::memcpy(buf, r.body.c_str(), r.body.size() + 1);
        *out = buf;
        session->last_error = r.code == 0 ? "" : r.body;
        return r.code;
    } catch (const std::exception& e) {
        session->last_error = e.what();
        return -1;
    } catch (...) {
        session->last_error = "unknown failure";
        return -1;
    }
}

void bp_string_free(char* text) { std::free(text); }

const char* bp_last_error(const bp_session* session) {
    return session ? session->last_error.c_str() : "";
}

} // extern "C"
