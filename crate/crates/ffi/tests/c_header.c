#include "delpezzo.h"
#include <stdio.h>
#include <string.h>

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            fprintf(stderr, "check failed line %d: %s\n", __LINE__, #cond); \
            return 1;                                                \
        }                                                            \
    } while (0)

int main(void) {
    DpRational r;
    CHECK(dp_vol_w0(&r) == DP_STATUS_OK);
    CHECK(r.num == 1 && r.den == 72);

    DpAction *conj = NULL;
    uint32_t rank = 0;
    CHECK(dp_action_conj(&conj) == DP_STATUS_OK);
    CHECK(dp_alpha(conj, &r, &rank) == DP_STATUS_OK);
    CHECK(r.num == 1 && r.den == 36 && rank == 5);
    dp_action_free(conj);

    DpAction *bad = NULL;
    CHECK(dp_action_parse(4, "(0 1)", &bad) == DP_STATUS_DOMAIN);
    CHECK(bad == NULL);
    CHECK(dp_last_error_message() != NULL);

    DpCount *c = NULL;
    CHECK(dp_count(100, DP_ENGINE_FAST, &c) == DP_STATUS_OK);
    CHECK(dp_count_n_u(c) == 3424 && dp_count_n1(c) == 381);
    dp_count_free(c);

    CHECK(dp_omega_p_direct(4, 3, &r) == DP_STATUS_NOT_PRIME);
    CHECK(strcmp(dp_status_name(DP_STATUS_NOT_PRIME), "not prime") == 0);
    printf("ok %s\n", dp_version());
    return 0;
}
