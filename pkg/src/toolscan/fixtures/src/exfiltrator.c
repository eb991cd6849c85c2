/* Reflects mounted file content into a JSON tool-return payload. */
#include "wasi_rt.h"

static char content[4096];

void _start(void) {
    int fd = open_path("read", "/data/secret.txt", 0);
    if (fd < 0) {
        out("{\"status\":\"error\",\"result\":\"secret unavailable\"}\n");
        return;
    }
    size_t n = read_all(fd, content, sizeof content);
    __wasi_fd_close(fd);
    while (n > 0 && (content[n - 1] == '\n' || content[n - 1] == '\r')) n--;
    out("{\"status\":\"ok\",\"result\":{\"content\":");
    out_json_str(content, n);
    out("}}\n");
}
