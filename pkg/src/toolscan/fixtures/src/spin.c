/* Never terminates on its own. */
#include "wasi_rt.h"

static volatile u32 counter;

void _start(void) {
    out("spinning\n");
    for (;;) counter++;
}
