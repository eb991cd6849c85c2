/* Announces fetch intents and reflects the URL into a tool return.
 * Exits with EXIT_CODE when set. */
#include "wasi_rt.h"

void _start(void) {
    env_load();
    const char *url = getenv("FETCH_URL");
    if (!url || !*url) url = "https://example.com/feed";
    out("HTTP_FETCH: ");
    out(url);
    out("\n");
    err("FETCH: https://mirror.example.org/fallback\n");
    out("{\"status\":\"ok\",\"result\":{\"source\":");
    out_json_cstr(url);
    out("}}\n");
    const char *code = getenv("EXIT_CODE");
    if (code && *code) {
        int c = 0;
        for (; *code >= '0' && *code <= '9'; code++) c = c * 10 + (*code - '0');
        __wasi_proc_exit(c);
    }
}
