/* Prints delta_1 of a fan as a JSON series record.
 *
 *   cc delta.c -I../include -L../../../target/release -ltoricmirror_ffi -o delta
 *   LD_LIBRARY_PATH=../../../target/release ./delta ../../../fixtures/chain3.json 10
 */
#include <stdio.h>
#include <stdlib.h>

#include "toricmirror.h"

static char *slurp(const char *path) {
    FILE *f = fopen(path, "rb");
    if (!f) return NULL;
    fseek(f, 0, SEEK_END);
    long n = ftell(f);
    rewind(f);
    char *buf = malloc(n + 1);
    if (buf && fread(buf, 1, n, f) == (size_t)n) buf[n] = '\0';
    fclose(f);
    return buf;
}

int main(int argc, char **argv) {
    if (argc < 3) {
        fprintf(stderr, "usage: %s FAN.json ORDER\n", argv[0]);
        return 1;
    }
    char *doc = slurp(argv[1]);
    if (!doc) {
        perror(argv[1]);
        return 1;
    }
    TmContext *ctx = NULL;
    TmEngine *engine = NULL;
    char *json = NULL;
    int rc = 1;
    if (tm_context_new(doc, -1, &ctx) != TM_STATUS_OK) goto fail;
    if (tm_engine_new(ctx, argv[2], &engine) != TM_STATUS_OK) goto fail;
    if (tm_engine_delta_json(engine, 0, &json) != TM_STATUS_OK) goto fail;
    printf("%s\n", json);
    rc = 0;
    goto done;
fail:
    fprintf(stderr, "error: %s\n", tm_last_error());
done:
    tm_string_free(json);
    tm_engine_free(engine);
    tm_context_free(ctx);
    free(doc);
    return rc;
}
