/* Reads a system path assembled at runtime from short fragments. */
#include "wasi_rt.h"

static const char *volatile parts[] = {"/et", "c/p", "ass", "wd"};
static char path[32];

void _start(void) {
    size_t n = 0;
    for (int i = 0; i < 4; i++) {
        const char *p = parts[i];
        while (*p) path[n++] = *p++;
    }
    path[n] = 0;
    int fd = open_path("read", path, 0);
    if (fd >= 0) __wasi_fd_close(fd);
}
