/* Minimal use of the C interface: solve (x1 or x2) and (not x1), print the model. */
#include <stdio.h>
#include "vivisat.h"

int main(void) {
    VivisatSolver *s = vivisat_new();
    const int32_t c1[] = {1, 2};
    const int32_t c2[] = {-1};
    vivisat_add_clause(s, c1, 2);
    vivisat_add_clause(s, c2, 1);
    if (vivisat_set_option(s, "viv-select", "live++") != VIVISAT_STATUS_OK) {
        fprintf(stderr, "%s\n", vivisat_last_error(s));
        return 1;
    }
    int32_t answer = vivisat_solve(s);
    if (answer < 0) {
        fprintf(stderr, "error: %s\n", vivisat_last_error(s));
        return 1;
    }
    printf("answer %d\n", answer);
    if (answer == VIVISAT_SAT) {
        for (int32_t v = 1; v <= vivisat_num_vars(s); v++) {
            printf("x%d = %d\n", v, vivisat_value(s, v));
        }
    }
    char *stats = vivisat_stats_json(s);
    printf("stats: %.40s...\n", stats);
    vivisat_string_free(stats);
    vivisat_free(s);
    return 0;
}
