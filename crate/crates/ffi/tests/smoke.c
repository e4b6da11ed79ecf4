#include <stdio.h>
#include <string.h>

#include "oddzeta.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "check failed: %s\n", #cond);        \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    OzPoly *poly = NULL;
    char *s = NULL;

    CHECK(oz_poly_new(1, &poly) == OZ_STATUS_OK);
    CHECK(oz_poly_term_count(poly) == 2);
    CHECK(oz_poly_to_latex(poly, &s) == OZ_STATUS_OK);
    CHECK(strcmp(s, "\\frac{\\pi^2}{6}\\left(t^3 - t\\right)") == 0);
    oz_string_free(s);
    oz_poly_free(poly);

    CHECK(oz_poly_new(0, &poly) == OZ_STATUS_DOMAIN);
    CHECK(oz_last_error_message() != NULL);

    OzZetaResult *z = NULL;
    CHECK(oz_zeta_odd(1, OZ_REPRESENTATION_COROLLARY, 20, &z) == OZ_STATUS_OK);
    CHECK(oz_zeta_result_value(z, &s) == OZ_STATUS_OK);
    CHECK(strncmp(s, "1.2020569031595942", 18) == 0);
    printf("zeta(3) = %s\n", s);
    oz_string_free(s);
    oz_zeta_result_free(z);

    CHECK(oz_lemma_check(4) == OZ_STATUS_OK);
    CHECK(oz_digamma("1.5", 20, &s, NULL) == OZ_STATUS_DOMAIN);
    return 0;
}
