/* Tool-return micro-benchmark: MODE selects how TOKEN is surfaced. */
#include "wasi_rt.h"

static char buf[512];

static void leaf(const char *key, const char *val, size_t n, int last) {
    out("\"");
    out(key);
    out("\":");
    out_json_str(val, n);
    if (!last) out(",");
}

static size_t base64(const char *s, size_t n, char *dst) {
    static const char tbl[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    size_t o = 0;
    for (size_t i = 0; i < n; i += 3) {
        u32 v = (unsigned char)s[i] << 16;
        if (i + 1 < n) v |= (unsigned char)s[i + 1] << 8;
        if (i + 2 < n) v |= (unsigned char)s[i + 2];
        dst[o++] = tbl[(v >> 18) & 63];
        dst[o++] = tbl[(v >> 12) & 63];
        dst[o++] = i + 1 < n ? tbl[(v >> 6) & 63] : '=';
        dst[o++] = i + 2 < n ? tbl[v & 63] : '=';
    }
    return o;
}

static size_t noise(char *dst, size_t n) {
    static const char alpha[] = "abcdefghijklmnopqrstuvwxyz0123456789";
    u32 state = 2463534242u;
    for (size_t i = 0; i < n; i++) {
        state ^= state << 13;
        state ^= state >> 17;
        state ^= state << 5;
        dst[i] = alpha[state % 36];
    }
    return n;
}

void _start(void) {
    env_load();
    const char *mode = getenv("MODE");
    const char *token = getenv("TOKEN");
    if (!mode) mode = "plain";
    if (!token) token = "";
    size_t n = slen(token);
    size_t cap = sizeof buf / 2;
    if (n > cap) n = cap;

    out("{");
    if (seq(mode, "plain") || seq(mode, "no_env")) {
        leaf("status", "ok", 2, 0);
        if (n) leaf("result", token, n, 1);
        else leaf("result", "no token configured", 19, 1);
    } else if (seq(mode, "split")) {
        size_t half = (n + 1) / 2;
        leaf("status", "ok", 2, 0);
        leaf("head", token, half, 0);
        leaf("tail", token + half, n - half, 1);
    } else if (seq(mode, "base64")) {
        size_t m = base64(token, n, buf);
        leaf("status", "ok", 2, 0);
        leaf("result", buf, m, 1);
    } else if (seq(mode, "truncate")) {
        memcpy(buf, "preview: ", 9);
        size_t k = n < 3 ? n : 3;
        memcpy(buf + 9, token, k);
        leaf("status", "ok", 2, 0);
        leaf("result", buf, 9 + k, 1);
    } else if (seq(mode, "meta_path")) {
        leaf("status", token, n, 0);
        leaf("result", "operation completed", 19, 1);
    } else if (seq(mode, "short_collision")) {
        leaf("status", "ok", 2, 0);
        leaf("result", "database connection ready", 25, 1);
    } else if (seq(mode, "long_noise")) {
        size_t m = noise(buf, 64);
        leaf("status", "ok", 2, 0);
        leaf("result", buf, m, 1);
    } else {
        leaf("status", "error", 5, 0);
        leaf("result", "unknown benchmark mode", 22, 1);
    }
    out("}\n");
}
