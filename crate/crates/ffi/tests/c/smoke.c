#include <stdio.h>
#include <string.h>

#include "bmw.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "check failed line %d: %s\n", __LINE__, #cond); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    BmwSpec *spec = NULL;
    CHECK(bmw_spec_parse("r=-q e=7 p=0", &spec) == BMW_STATUS_OK);
    int32_t singular = -2;
    char *clause = NULL;
    CHECK(bmw_classify(6, spec, &singular, &clause) == BMW_STATUS_OK);
    CHECK(singular == BMW_SINGULAR);
    CHECK(strcmp(clause, "main.1.2.a") == 0);
    bmw_string_free(clause);
    bmw_spec_free(spec);

    BmwGram *g = NULL, *h = NULL;
    CHECK(bmw_gram_new(3, 1, "(1)", &g) == BMW_STATUS_OK);
    CHECK(bmw_gram_substitute(g, "r=q^-1", &h) == BMW_STATUS_OK);
    char *det = NULL;
    CHECK(bmw_gram_det(h, true, &det) == BMW_STATUS_OK);
    CHECK(strcmp(det, "unit * (q^4 + 1)") == 0);
    bmw_string_free(det);
    bmw_gram_free(h);
    bmw_gram_free(g);

    CHECK(bmw_gram_new(3, 1, "(2)", &g) == BMW_STATUS_DOMAIN);
    char *err = bmw_last_error();
    CHECK(err != NULL && strlen(err) > 0);
    bmw_string_free(err);

    uint64_t total = 0;
    CHECK(bmw_dims_sum_of_squares(3, &total) == BMW_STATUS_OK);
    CHECK(total == 15);
    printf("ok %s\n", bmw_version());
    return 0;
}
