#include <stdio.h>
#include "qhecke.h"

int main(void) {
    uint64_t bell = 0;
    if (qh_bell(5, &bell) != QH_STATUS_OK) return 1;

    QhHeckeElement *t1 = NULL, *sq = NULL;
    if (qh_hecke_generator(3, 1, &t1) != QH_STATUS_OK) return 1;
    if (qh_hecke_mul(t1, t1, &sq) != QH_STATUS_OK) return 1;
    char *json = NULL;
    if (qh_hecke_to_json(sq, &json) != QH_STATUS_OK) return 1;
    printf("B(5) = %llu\nT_1^2 = %s\n", (unsigned long long)bell, json);
    qh_string_free(json);

    QhHeckeElement *bad = NULL;
    QhStatus st = qh_hecke_generator(3, 5, &bad);
    printf("status %d: %s\n", (int)st, qh_last_error());

    qh_hecke_free(sq);
    qh_hecke_free(t1);
    return st == QH_STATUS_INVALID_ARGUMENT ? 0 : 1;
}
