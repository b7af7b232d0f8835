#include <stdio.h>
#include <string.h>
#include "dpinv.h"

static int fail(const char *what) {
    char *msg = dpinv_last_error();
    fprintf(stderr, "%s: %s\n", what, msg ? msg : "(none)");
    dpinv_string_free(msg);
    return 1;
}

int main(void) {
    DpModule *m = NULL;
    size_t g = 0, l = 0;
    if (dpinv_module_new(DP_MODULE_KIND_TENSOR, 2, 2, 1, 3, 0, &m) != DP_STATUS_OK) return fail("module");
    if (dpinv_module_group_invariants(m, &g) != DP_STATUS_OK) return fail("group");
    if (dpinv_module_lie_invariants(m, &l) != DP_STATUS_OK) return fail("lie");
    dpinv_module_free(m);

    DpElement *e = NULL;
    char *text = NULL;
    if (dpinv_element_new("div e[1,1]", 3, 2, &e) != DP_STATUS_OK) return fail("element");
    if (dpinv_element_to_string(e, &text) != DP_STATUS_OK) return fail("to_string");
    bool in_ds = false;
    if (dpinv_element_in_ds(e, 1, &in_ds) != DP_STATUS_OK) return fail("in_ds");
    dpinv_element_free(e);

    DpStatus bad = dpinv_module_new(DP_MODULE_KIND_DS, 4, 2, 1, 1, 0, &m);
    printf("%zu %zu %d %d %s\n", g, l, (int)in_ds, (int)bad, text);
    dpinv_string_free(text);
    return 0;
}
