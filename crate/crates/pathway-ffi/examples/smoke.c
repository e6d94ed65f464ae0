/* Minimal C consumer of the pathway C ABI.
 *
 * Build (from the workspace root, after `cargo build --release -p pathway-ffi`):
 *   cc examples/smoke.c -Iinclude -L../../target/release -lpathway_ffi -lm -o smoke
 */
#include <stdio.h>
#include "pathway.h"

int main(void) {
    PwPathway *h = NULL;
    if (pw_pathway_new(0.5, 1.0, 1.0, 1.0, 1.0, 0, &h) != PW_OK) {
        fprintf(stderr, "error: %s\n", pw_last_error_message());
        return 1;
    }
    double v;
    pw_pathway_pdf(h, 0.7, &v);
    printf("pdf(0.7)  = %.12f\n", v);
    pw_pathway_cdf(h, 0.7, &v);
    printf("cdf(0.7)  = %.12f\n", v);
    pw_pathway_moment(h, 1.0, &v);
    printf("mean      = %.12f\n", v);
    double draws[5];
    pw_pathway_sample(h, 0, 5, draws);
    printf("sample[0] = %.12f\n", draws[0]);
    pw_pathway_free(h);
    return 0;
}
