#include <math.h>
#include <stdio.h>
#include <string.h>

#include "h2zeeman.h"

static int failures = 0;

static void expect(int ok, const char *what) {
    if (!ok) {
        fprintf(stderr, "FAIL: %s (%s)\n", what, h2z_last_error_message());
        failures++;
    }
}

int main(void) {
    double x = 0.0;
    expect(h2z_wigner_6j(1, 2, 1, 3, 2, 3, &x) == H2Z_STATUS_OK, "6j status");
    expect(fabs(x - sqrt(10.0) / 12.0) < 1e-14, "6j value");

    H2zModel *model = h2z_model_new_default();
    H2zGFactor g;
    expect(h2z_g_factor(model, 0, 2, 1, 5, &g) == H2Z_STATUS_OK, "g-factor status");
    expect(fabs(g.total - 0.4000631) < 1e-6, "g-factor value");
    expect(g.total == g.g1 + g.g2 + g.g3, "g-factor sum");

    double shift = 0.0;
    enum H2zStatus s = h2z_sigma_shift(model, 0, 1, 1, 1, 1, 5e-5, &shift);
    expect(s == H2Z_STATUS_FORBIDDEN, "J = 1/2 sigma line is forbidden");
    expect(strlen(h2z_last_error_message()) > 0, "error message set");
    expect(strcmp(h2z_status_message(s), "transition forbidden for this polarization") == 0, "status text");

    expect(h2z_g_factor(model, 0, 2, 3, 5, &g) == H2Z_STATUS_DOMAIN, "invalid level rejected");
    expect(h2z_g_rot(NULL, 0, 1, &x) == H2Z_STATUS_NULL_POINTER, "null model rejected");

    h2z_model_free(model);
    h2z_model_free(NULL);
    if (failures == 0) {
        printf("c smoke test passed\n");
    }
    return failures == 0 ? 0 : 1;
}
