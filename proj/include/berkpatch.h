#ifndef BERKPATCH_H
#define BERKPATCH_H

/* C interface to the analytic patching toolkit. All state lives behind the opaque
 * session handle; every returned string is owned by the caller and released with
 * bp_string_free. The library never writes to stdout or stderr. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bp_session bp_session;

bp_session* bp_session_new(void);
void bp_session_free(bp_session* session);

/* Runs one command against a JSON request plus JSON options and stores the complete
 * response body (a single JSON document, or raw text/DOT when the options select
 * those formats) in *out as a NUL-terminated heap string.
 *
 * The return value follows the process exit contract:
 *   0  success
 *   2  unknown command
 *   3  invalid input (malformed JSON or a schema violation)
 *   4  mathematical failure, with a certificate in the body where one exists
 *  -1  API misuse (null session/command/out) or allocation failure; *out stays null
 *
 * request_json and options_json may be null or empty, meaning {}. */
int bp_run(bp_session* session, const char* command, const char* request_json,
           const char* options_json, char** out);

void bp_string_free(char* text);

/* Message for the most recent bp_run on this session that did not return 0; the
 * empty string after a success. The pointer stays valid until the next bp_run or
 * bp_session_free. */
const char* bp_last_error(const bp_session* session);

#ifdef __cplusplus
}
#endif

#endif
