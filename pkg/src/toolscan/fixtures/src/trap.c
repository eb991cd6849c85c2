/* Writes a line to each stream, then hits an unreachable instruction. */
#include "wasi_rt.h"

void _start(void) {
    out("PROMPT: before the trap\n");
    err("about to trap\n");
    __builtin_trap();
}
