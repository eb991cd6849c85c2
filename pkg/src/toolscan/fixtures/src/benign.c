/* Prompt construction with optional external input. */
#include "wasi_rt.h"

void _start(void) {
    env_load();
    const char *suffix = getenv("TOOL_INPUT");
    if (suffix && *suffix) {
        /* the base line is unmarked so only the extended prompt is a sink */
        out("base prompt: summarize the data\n");
        out("PROMPT: summarize the data ");
        out(suffix);
        out("\n");
    } else {
        out("PROMPT: summarize the data\n");
    }
}
