/* Exercises the C interface from plain C. */

#include "pforms/pforms.h"

#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

static int contains(const char* haystack, const char* needle) { return strstr(haystack, needle) != NULL; }

static void test_context_and_inspect(void) {
  pforms_context* ctx = NULL;
  char* out = NULL;
  EXPECT(pforms_context_create("{\"family\": \"sl\", \"n\": 3}", &ctx) == PFORMS_OK);
  EXPECT(ctx != NULL);
  EXPECT(strcmp(pforms_last_error(), "") == 0);
  EXPECT(pforms_inspect(ctx, &out) == PFORMS_OK);
  EXPECT(out != NULL && contains(out, "\"algebra\":\"sl(3,R)\""));
  EXPECT(out != NULL && contains(out, "\"invariant_dims\""));
  pforms_string_free(out);
  pforms_context_destroy(ctx);
}

static void test_kernel_and_verify(void) {
  pforms_context* ctx = NULL;
  char* out = NULL;
  int all_ok = -1;
  EXPECT(pforms_context_create("{\"family\": \"so\", \"p\": 3, \"q\": 1}", &ctx) == PFORMS_OK);

  EXPECT(pforms_kernel(ctx, 1, &out) == PFORMS_OK);
  EXPECT(out != NULL && contains(out, "\"p\":1") && contains(out, "\"q\":1"));
  pforms_string_free(out);

  out = NULL;
  EXPECT(pforms_verify(ctx, 0, &out, &all_ok) == PFORMS_OK);
  EXPECT(all_ok == 1);
  EXPECT(out != NULL && contains(out, "\"coclosed\":true"));
  pforms_string_free(out);

  /* all_ok may be NULL */
  out = NULL;
  EXPECT(pforms_verify(ctx, 2, &out, NULL) == PFORMS_OK);
  pforms_string_free(out);

  out = NULL;
  EXPECT(pforms_kernel(ctx, 3, &out) == PFORMS_INVALID_ARGUMENT);
  EXPECT(out == NULL);
  EXPECT(contains(pforms_last_error(), "kernel degree"));
  pforms_context_destroy(ctx);
}

static void test_transform(void) {
  char* out = NULL;
  EXPECT(pforms_transform("{\"n\": 1, \"lambda\": -0.5}", &out) == PFORMS_OK);
  EXPECT(out != NULL && contains(out, "\"value\":1.0"));
  pforms_string_free(out);

  out = NULL;
  EXPECT(pforms_transform("{\"n\": 2, \"density\": \"coord-1\", \"nodes\": [16, 32], \"probe\": [0.1, 0.2, 0.0]}",
                          &out) == PFORMS_OK);
  EXPECT(out != NULL && contains(out, "\"eigenvalue_residual\""));
  pforms_string_free(out);

  out = NULL;
  EXPECT(pforms_transform("{\"n\": 4}", &out) == PFORMS_INVALID_ARGUMENT);
  EXPECT(pforms_transform("{\"n\": 1, \"fd_step\": 1e-8, \"density\": \"coord-0\"}", &out) ==
         PFORMS_INVALID_ARGUMENT);
  EXPECT(pforms_transform("{\"n\": 1, \"density\": \"gaussian\"}", &out) == PFORMS_INVALID_ARGUMENT);
  EXPECT(out == NULL);
}

static void test_errors(void) {
  pforms_context* ctx = NULL;
  EXPECT(pforms_context_create("{\"family\": \"so\", \"p\": 3", &ctx) == PFORMS_INVALID_ARGUMENT);
  EXPECT(ctx == NULL);
  EXPECT(contains(pforms_last_error(), "malformed JSON"));
  EXPECT(pforms_context_create("{\"family\": \"su\", \"n\": 3}", &ctx) == PFORMS_INVALID_ARGUMENT);
  EXPECT(pforms_context_create("{\"family\": \"sl\", \"n\": 3, \"sigma\": [5]}", &ctx) == PFORMS_INVALID_ARGUMENT);
  EXPECT(pforms_context_create(NULL, &ctx) == PFORMS_INVALID_ARGUMENT);
  EXPECT(pforms_inspect(NULL, NULL) == PFORMS_INVALID_ARGUMENT);
  EXPECT(strlen(pforms_last_error()) > 0);
  pforms_context_destroy(NULL);
}

int main(void) {
  EXPECT(strcmp(pforms_version(), "1.0.0") == 0);
  test_context_and_inspect();
  test_kernel_and_verify();
  test_transform();
  test_errors();
  if (failures > 0) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("all C interface checks passed\n");
  return 0;
}
