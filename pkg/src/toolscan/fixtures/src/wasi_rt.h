/* Minimal freestanding WASI preview1 runtime shared by the fixture tools.
 * No libc: every fixture links only against wasi_snapshot_preview1. */
#ifndef WASI_RT_H
#define WASI_RT_H

#pragma clang diagnostic ignored "-Wunused-function"

typedef unsigned int u32;
typedef unsigned long long u64;
typedef unsigned long size_t;

#define WASI(name) __attribute__((import_module("wasi_snapshot_preview1"), import_name(#name)))

typedef struct { const char *buf; size_t len; } ciovec_t;
typedef struct { char *buf; size_t len; } iovec_t;
typedef struct { unsigned char tag; u32 name_len; } prestat_t;

WASI(fd_write) int __wasi_fd_write(int fd, const ciovec_t *iovs, size_t n, size_t *written);
WASI(fd_read) int __wasi_fd_read(int fd, const iovec_t *iovs, size_t n, size_t *nread);
WASI(fd_close) int __wasi_fd_close(int fd);
WASI(fd_prestat_get) int __wasi_fd_prestat_get(int fd, prestat_t *out);
WASI(fd_prestat_dir_name) int __wasi_fd_prestat_dir_name(int fd, char *buf, size_t len);
WASI(path_open) int __wasi_path_open(int dirfd, u32 dirflags, const char *path, size_t path_len,
                                     unsigned short oflags, u64 rights_base, u64 rights_inherit,
                                     unsigned short fdflags, int *fd_out);
WASI(environ_sizes_get) int __wasi_environ_sizes_get(size_t *count, size_t *buf_size);
WASI(environ_get) int __wasi_environ_get(char **environ, char *buf);
WASI(args_sizes_get) int __wasi_args_sizes_get(size_t *count, size_t *buf_size);
WASI(args_get) int __wasi_args_get(char **argv, char *buf);
WASI(proc_exit) _Noreturn void __wasi_proc_exit(int code);

#define O_CREAT 1
#define O_TRUNC 8
#define RIGHTS_READ ((u64)1 << 1)
#define RIGHTS_WRITE ((u64)1 << 6)

void *memcpy(void *dst, const void *src, size_t n) {
    char *d = dst; const char *s = src;
    while (n--) *d++ = *s++;
    return dst;
}

void *memset(void *dst, int c, size_t n) {
    char *d = dst;
    while (n--) *d++ = (char)c;
    return dst;
}

static size_t slen(const char *s) {
    size_t n = 0;
    while (s[n]) n++;
    return n;
}

static int sstarts(const char *s, const char *prefix, size_t plen) {
    for (size_t i = 0; i < plen; i++)
        if (s[i] != prefix[i]) return 0;
    return 1;
}

static int seq(const char *a, const char *b) {
    while (*a && *a == *b) { a++; b++; }
    return *a == *b;
}

static void write_buf(int fd, const char *s, size_t n) {
    ciovec_t iov = {s, n};
    size_t written;
    __wasi_fd_write(fd, &iov, 1, &written);
}

static void out(const char *s) { write_buf(1, s, slen(s)); }
static void err(const char *s) { write_buf(2, s, slen(s)); }

/* ---- environment ---- */

static char env_buf[8192];
static char *env_ptrs[64];
static size_t env_count;

static void env_load(void) {
    size_t count, size;
    if (__wasi_environ_sizes_get(&count, &size) != 0) return;
    if (count > 64 || size > sizeof env_buf) return;
    __wasi_environ_get(env_ptrs, env_buf);
    env_count = count;
}

static const char *getenv(const char *key) {
    size_t k = slen(key);
    for (size_t i = 0; i < env_count; i++) {
        const char *e = env_ptrs[i];
        if (sstarts(e, key, k) && e[k] == '=') return e + k + 1;
    }
    return 0;
}

/* ---- arguments ---- */

static char arg_buf[4096];
static char *arg_ptrs[64];
static size_t arg_count;

static void args_load(void) {
    size_t count, size;
    if (__wasi_args_sizes_get(&count, &size) != 0) return;
    if (count > 64 || size > sizeof arg_buf) return;
    __wasi_args_get(arg_ptrs, arg_buf);
    arg_count = count;
}

/* ---- preopen resolution (mirrors the usual WASI libc lookup) ---- */

static char preopen_name[256];

/* Finds the preopened directory containing the absolute `path`; sets *rel to
 * the remainder. Returns the directory fd or -1 when no preopen covers it. */
static int find_preopen(const char *path, const char **rel) {
    for (int fd = 3; fd < 64; fd++) {
        prestat_t ps;
        if (__wasi_fd_prestat_get(fd, &ps) != 0) break;
        if (ps.tag != 0 || ps.name_len >= sizeof preopen_name) continue;
        if (__wasi_fd_prestat_dir_name(fd, preopen_name, ps.name_len) != 0) continue;
        preopen_name[ps.name_len] = 0;
        size_t n = ps.name_len;
        while (n > 1 && preopen_name[n - 1] == '/') n--;
        if (sstarts(path, preopen_name, n) && (path[n] == '/' || path[n] == 0)) {
            const char *r = path + n;
            while (*r == '/') r++;
            *rel = *r ? r : ".";
            return fd;
        }
    }
    return -1;
}

static void report_denied(const char *op, const char *path) {
    out(op);
    out(" ");
    out(path);
    out(": failed to find a preopened file descriptor through which \"");
    out(path);
    out("\" could be opened\n");
}

/* Opens `path` for reading (write=0) or writing (write=1). Prints the
 * denial message and returns -1 when the path is outside every preopen. */
static int open_path(const char *op, const char *path, int write) {
    const char *rel;
    int dirfd = find_preopen(path, &rel);
    if (dirfd < 0) {
        report_denied(op, path);
        return -1;
    }
    int fd;
    unsigned short oflags = write ? (O_CREAT | O_TRUNC) : 0;
    u64 rights = write ? RIGHTS_WRITE : RIGHTS_READ;
    int rc = __wasi_path_open(dirfd, 1, rel, slen(rel), oflags, rights, 0, 0, &fd);
    if (rc != 0) {
        out(op);
        out(" ");
        out(path);
        out(": open failed\n");
        return -1;
    }
    return fd;
}

static size_t read_all(int fd, char *buf, size_t cap) {
    size_t total = 0;
    while (total < cap) {
        iovec_t iov = {buf + total, cap - total};
        size_t n;
        if (__wasi_fd_read(fd, &iov, 1, &n) != 0 || n == 0) break;
        total += n;
    }
    return total;
}

/* ---- JSON string output ---- */

static void out_json_str(const char *s, size_t n) {
    static const char hex[] = "0123456789abcdef";
    out("\"");
    for (size_t i = 0; i < n; i++) {
        unsigned char c = (unsigned char)s[i];
        if (c == '"' || c == '\\') {
            char esc[2] = {'\\', (char)c};
            write_buf(1, esc, 2);
        } else if (c < 0x20) {
            char esc[6] = {'\\', 'u', '0', '0', hex[c >> 4], hex[c & 15]};
            write_buf(1, esc, 6);
        } else {
            write_buf(1, (const char *)&s[i], 1);
        }
    }
    out("\"");
}

static void out_json_cstr(const char *s) { out_json_str(s, slen(s)); }

#endif
