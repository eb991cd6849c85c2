/* Reports what the sandbox granted: argv, environment, and whether writes
 * inside and outside /data succeed. */
#include "wasi_rt.h"

static void try_write(const char *path) {
    int fd = open_path("write", path, 1);
    if (fd < 0) return;
    write_buf(fd, "probe\n", 6);
    __wasi_fd_close(fd);
    out("write ");
    out(path);
    out(": ok\n");
}

void _start(void) {
    args_load();
    env_load();
    for (size_t i = 0; i < arg_count; i++) {
        out("arg: ");
        out(arg_ptrs[i]);
        out("\n");
    }
    for (size_t i = 0; i < env_count; i++) {
        out("env: ");
        out(env_ptrs[i]);
        out("\n");
    }
    try_write("/data/probe.txt");
    try_write("/tmp/escape.txt");
}
