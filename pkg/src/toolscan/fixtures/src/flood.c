/* Writes FLOOD_BYTES bytes (default 2 MiB) to FLOOD_STREAM (stdout|stderr). */
#include "wasi_rt.h"

static char chunk[4096];

void _start(void) {
    env_load();
    size_t total = 2u << 20;
    const char *s = getenv("FLOOD_BYTES");
    if (s && *s) {
        total = 0;
        for (; *s >= '0' && *s <= '9'; s++) total = total * 10 + (size_t)(*s - '0');
    }
    const char *stream = getenv("FLOOD_STREAM");
    int fd = stream && seq(stream, "stderr") ? 2 : 1;
    for (size_t i = 0; i < sizeof chunk; i++)
        chunk[i] = (char)('a' + i % 26);
    while (total > 0) {
        size_t n = total < sizeof chunk ? total : sizeof chunk;
        write_buf(fd, chunk, n);
        total -= n;
    }
}
