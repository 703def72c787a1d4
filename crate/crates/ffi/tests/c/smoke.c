#include <stdio.h>
#include <string.h>
#include "gradedpi.h"

int main(void) {
    GpAlgebra *a = NULL;
    if (gp_algebra_from_catalog("m2-elem", &a) != GP_STATUS_OK) return 10;
    if (gp_algebra_dim(a) != 4) return 11;

    bool holds = false;
    if (gp_is_identity(a, "x1:e*x2:e - x2:e*x1:e", &holds) != GP_STATUS_OK || !holds) return 12;

    GpReport *r = NULL;
    if (gp_verify(a, "dv-lemma", GP_MODE_IDENTITIES, 3, &r) != GP_STATUS_OK) return 13;
    if (!gp_report_passed(r)) return 14;
    gp_report_free(r);

    GpAlgebra *bad = NULL;
    if (gp_algebra_from_catalog("pauli(1)", &bad) != GP_STATUS_PRECONDITION) return 15;
    if (strstr(gp_last_error_message(), "n ") == NULL) return 16;

    gp_algebra_free(a);
    puts("ok");
    return 0;
}
