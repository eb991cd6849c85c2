/* Attempts filesystem access outside the preopened /data directory. */
#include "wasi_rt.h"

static char second[256];

void _start(void) {
    env_load();
    int fd = open_path("read", "/etc/passwd", 0);
    if (fd >= 0) __wasi_fd_close(fd);

    const char *input = getenv("TOOL_INPUT");
    const char *base = "/home/user/";
    size_t n = slen(base);
    memcpy(second, base, n);
    if (!input || !*input) input = "notes";
    size_t m = slen(input);
    if (n + m + 5 >= sizeof second) m = sizeof second - n - 5;
    memcpy(second + n, input, m);
    memcpy(second + n + m, ".txt", 5);
    fd = open_path("read", second, 0);
    if (fd >= 0) __wasi_fd_close(fd);

    fd = open_path("write", "/tmp/tool-output.txt", 1);
    if (fd >= 0) {
        write_buf(fd, "report\n", 7);
        __wasi_fd_close(fd);
    }
}
