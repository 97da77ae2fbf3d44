#include <stdio.h>
#include <string.h>
#include "horn_amoeba.h"

#define CHECK(x) do { if (!(x)) { fprintf(stderr, "failed: %s (%s)\n", #x, ha_last_error() ? ha_last_error() : ""); return 1; } } while (0)

int main(int argc, char **argv) {
    HaPoly *p = NULL;
    CHECK(ha_poly_parse("1 + x1 + x2", 2, &p) == HA_STATUS_OK);
    CHECK(ha_poly_nvars(p) == 2);

    double lo[2] = {-6, -6}, hi[2] = {6, 6};
    HaCensus *c = NULL;
    CHECK(ha_census_run(p, lo, hi, 24, 0, -1.0, 1, &c) == HA_STATUS_OK);
    HaVerdict v;
    CHECK(ha_census_verdict(c, &v) == HA_STATUS_OK && v == HA_VERDICT_SOLID);
    printf("components %zu\n", ha_census_component_count(c));
    ha_census_free(c);

    HaPoly *bad = NULL;
    CHECK(ha_poly_parse("1 +", 1, &bad) == HA_STATUS_PARSE);
    CHECK(bad == NULL && ha_last_error() != NULL);

    if (argc > 1) {
        FILE *f = fopen(argv[1], "rb");
        CHECK(f != NULL);
        static char buf[1 << 16];
        size_t n = fread(buf, 1, sizeof buf - 1, f);
        buf[n] = 0;
        fclose(f);
        HaCoefficient *k = NULL;
        HaSystem *s = NULL;
        CHECK(ha_coefficient_from_json(buf, &k) == HA_STATUS_OK);
        CHECK(ha_coefficient_horn_system(k, &s) == HA_STATUS_OK);
        char *fan = NULL;
        CHECK(ha_coefficient_fan_json(k, &fan) == HA_STATUS_OK);
        printf("fan complete %d\n", strstr(fan, "complete_fan") != NULL);
        ha_string_free(fan);
        ha_system_free(s);
        ha_coefficient_free(k);
    }
    ha_poly_free(p);
    printf("version %s\n", ha_version());
    return 0;
}
