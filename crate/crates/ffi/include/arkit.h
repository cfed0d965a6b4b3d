#ifndef ARKIT_H
#define ARKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum ArkitStatus {
  ARKIT_STATUS_OK = 0,
  /*
   Malformed input: bad JSON, unknown names, wrong shapes.
   */
  ARKIT_STATUS_INPUT = 1,
  /*
   Valid input outside the domain of the operation.
   */
  ARKIT_STATUS_DOMAIN = 2,
  /*
   Knitting ran out of its object or dimension budget.
   */
  ARKIT_STATUS_BUDGET = 3,
  /*
   A randomized decision procedure did not settle.
   */
  ARKIT_STATUS_UNDECIDED = 4,
  /*
   A required pointer was null.
   */
  ARKIT_STATUS_NULL_ARGUMENT = 5,
  /*
   Internal failure; the library caught a panic.
   */
  ARKIT_STATUS_INTERNAL = 6,
} ArkitStatus;

/*
 A finite-dimensional algebra.
 */
typedef struct ArkitAlgebra ArkitAlgebra;

/*
 A chain of modules over an algebra.
 */
typedef struct ArkitChain ArkitChain;

/*
 A knitted Auslander-Reiten quiver.
 */
typedef struct ArkitQuiver ArkitQuiver;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failure on this thread; empty after a success.
 Valid until the next call into the library from the same thread.
 */
const char *arkit_last_error(void);

/*
 Release a string returned by the library.

 # Safety
 `s` must come from this library and not have been freed.
 */
void arkit_string_free(char *s);

/*
 Load an algebra by name (`nakayama:N,L`, `selfinj:3`) or from a JSON
 file path. `p = 0` keeps the default field.

 # Safety
 `name` must be a NUL-terminated string; `out` must be writable.
 */
enum ArkitStatus arkit_algebra_load(const char *name, uint32_t p, struct ArkitAlgebra **out);

/*
 # Safety
 `a` must come from [`arkit_algebra_load`] and not have been freed.
 */
void arkit_algebra_free(struct ArkitAlgebra *a);

/*
 Dimension over the ground field; 0 for a null handle.

 # Safety
 `a` must be null or a live handle.
 */
size_t arkit_algebra_dim(const struct ArkitAlgebra *a);

/*
 Summary of the algebra as JSON.

 # Safety
 `a` must be a live handle; `out` must be writable.
 */
enum ArkitStatus arkit_algebra_info(const struct ArkitAlgebra *a, uint64_t seed, char **out);

/*
 Parse a chain from its JSON text.

 # Safety
 `a` must be a live handle, `json` NUL-terminated, `out` writable.
 */
enum ArkitStatus arkit_chain_parse(const struct ArkitAlgebra *a,
                                   const char *json,
                                   struct ArkitChain **out);

/*
 # Safety
 `c` must come from this library and not have been freed.
 */
void arkit_chain_free(struct ArkitChain *c);

/*
 Apply a chain operation (`tau-s`, `mimo`, `cok`, `rot`, ...) `power`
 times. `method` may be null for the default translate formula.

 # Safety
 `c` must be a live handle, `op` NUL-terminated, `method` null or
 NUL-terminated, `out` writable.
 */
enum ArkitStatus arkit_chain_apply(const struct ArkitChain *c,
                                   const char *op,
                                   const char *method,
                                   uint32_t power,
                                   uint64_t seed,
                                   struct ArkitChain **out);

/*
 Chain as JSON, in the same format [`arkit_chain_parse`] reads.

 # Safety
 `c` must be a live handle; `out` must be writable.
 */
enum ArkitStatus arkit_chain_to_json(const struct ArkitChain *c, uint64_t seed, char **out);

/*
 Short label such as `(A,S,0)` for indecomposable chains.

 # Safety
 `c` must be a live handle; `out` must be writable.
 */
enum ArkitStatus arkit_chain_label(const struct ArkitChain *c, uint64_t seed, char **out);

/*
 Knit the quiver of `S`, `F` or `mod` with chains of length `n`.

 # Safety
 `a` must be a live handle, `category` NUL-terminated, `out` writable.
 */
enum ArkitStatus arkit_quiver_knit(const struct ArkitAlgebra *a,
                                   size_t n,
                                   const char *category,
                                   size_t max_objects,
                                   uint64_t seed,
                                   struct ArkitQuiver **out);

/*
 # Safety
 `q` must come from [`arkit_quiver_knit`] and not have been freed.
 */
void arkit_quiver_free(struct ArkitQuiver *q);

/*
 Number of vertices; 0 for a null handle.

 # Safety
 `q` must be null or a live handle.
 */
size_t arkit_quiver_len(const struct ArkitQuiver *q);

/*
 Number of projective vertices; 0 for a null handle.

 # Safety
 `q` must be null or a live handle.
 */
size_t arkit_quiver_projectives(const struct ArkitQuiver *q);

/*
 Quiver as JSON.

 # Safety
 `q` must be a live handle; `out` must be writable.
 */
enum ArkitStatus arkit_quiver_to_json(const struct ArkitQuiver *q, uint64_t seed, char **out);

/*
 Run a verifier (`tau-period`, `rotation`, `counts`, ...) with default
 settings. The report goes to `out` and `pass` receives its verdict.

 # Safety
 `property` and `algebra` must be NUL-terminated; `out` and `pass` writable.
 */
enum ArkitStatus arkit_verify(const char *property,
                              const char *algebra,
                              size_t n,
                              uint64_t seed,
                              char **out,
                              bool *pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARKIT_H */
