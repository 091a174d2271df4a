#ifndef RCAKIT_H
#define RCAKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define RCA_OK 0

#define RCA_NULL_POINTER -1

#define RCA_INVALID_UTF8 -2

#define RCA_PANIC -3

#define RCA_ERR_DEGENERATE_INPUT 10

#define RCA_ERR_NOT_UNBORDERED 11

#define RCA_ERR_ALPHABET_MISMATCH 12

#define RCA_ERR_SIZE_MISMATCH 13

#define RCA_ERR_LENGTH_MISMATCH 14

#define RCA_ERR_BAD_TRACK 15

#define RCA_ERR_NOT_REVERSIBLE 20

#define RCA_ERR_RADIUS_BOUND_EXCEEDED 21

#define RCA_ERR_BIRADIUS_EXCEEDED 22

#define RCA_ERR_BUDGET_EXCEEDED 23

#define RCA_ERR_NOT_EVEN 30

#define RCA_ERR_NOT_IN_HYPOCENTER 31

#define RCA_ERR_NOT_WEAKLY_CONNECTED 32

#define RCA_ERR_ALPHABET_TOO_SMALL 33

#define RCA_ERR_PARITY_VIOLATION 34

#define RCA_ERR_NOT_INVERTIBLE 40

#define RCA_ERR_NON_FREE_ORBIT 41

#define RCA_ERR_UNRESOLVED_NAME 50

#define RCA_ERR_PARSE 51

#define RCA_ERR_INCONSISTENT 60

#define RCA_ERR_IO 70

#define RCA_ERR_INVALID 71

/**
 * Outcome of an equality test.
 */
typedef enum RcaVerdict {
  RCA_VERDICT_EXACT_EQUAL = 0,
  RCA_VERDICT_EXACT_UNEQUAL = 1,
  RCA_VERDICT_SAMPLED_EQUAL = 2,
  RCA_VERDICT_SAMPLED_UNEQUAL = 3,
} RcaVerdict;

/**
 * An owned cellular automaton.
 */
typedef struct RcaAutomaton RcaAutomaton;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *rca_last_error_message(void);

/**
 * The identity automaton on an alphabet of `alphabet_size` symbols.
 *
 * # Safety
 * `out` must be valid for writes.
 */
int32_t rca_automaton_identity(uintptr_t alphabet_size, struct RcaAutomaton **out);

/**
 * An automaton from its local rule: `table[i]` is the image of the `i`-th
 * window over cells `lo..=hi`, leftmost cell most significant.
 *
 * # Safety
 * `table` must point to `len` readable values and `out` must be valid
 * for writes.
 */
int32_t rca_automaton_from_table(uintptr_t alphabet_size,
                                 int64_t lo,
                                 int64_t hi,
                                 const uint32_t *table,
                                 uintptr_t len,
                                 struct RcaAutomaton **out);

/**
 * Loads a JSON rule file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` valid for writes.
 */
int32_t rca_automaton_load(const char *path, struct RcaAutomaton **out);

/**
 * Saves `f` as a JSON rule file.
 *
 * # Safety
 * `f` must be a live handle and `path` a NUL-terminated string.
 */
int32_t rca_automaton_save(const struct RcaAutomaton *f, const char *path);

/**
 * Evaluates a word such as `s1^-1 * p[1,0,3,2]` over the product alphabet
 * with the given track sizes.
 *
 * # Safety
 * `word` must be NUL-terminated, `factors` must point to `n_factors`
 * readable values and `out` must be valid for writes.
 */
int32_t rca_automaton_from_word(const char *word,
                                const uintptr_t *factors,
                                uintptr_t n_factors,
                                struct RcaAutomaton **out);

/**
 * `f ∘ g`.
 *
 * # Safety
 * `f` and `g` must be live handles and `out` valid for writes.
 */
int32_t rca_automaton_compose(const struct RcaAutomaton *f,
                              const struct RcaAutomaton *g,
                              struct RcaAutomaton **out);

/**
 * The inverse of `f`, searched up to radius `max_radius`.
 *
 * # Safety
 * `f` must be a live handle and `out` valid for writes.
 */
int32_t rca_automaton_invert(const struct RcaAutomaton *f,
                             uintptr_t max_radius,
                             struct RcaAutomaton **out);

/**
 * Decides whether `f` is injective (hence reversible).
 *
 * # Safety
 * `f` must be a live handle and `out` valid for writes.
 */
int32_t rca_automaton_is_reversible(const struct RcaAutomaton *f, bool *out);

/**
 * Decides `f = g`, exactly when the enumeration fits `budget`.
 *
 * # Safety
 * `f` and `g` must be live handles and `out` valid for writes.
 */
int32_t rca_automaton_equal(const struct RcaAutomaton *f,
                            const struct RcaAutomaton *g,
                            uint64_t budget,
                            uint64_t seed,
                            enum RcaVerdict *out);

/**
 * Number of symbols of the alphabet of `f`, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
uintptr_t rca_automaton_alphabet_size(const struct RcaAutomaton *f);

/**
 * The neighbourhood `[lo, hi]` of `f`.
 *
 * # Safety
 * `f` must be a live handle; `lo` and `hi` must be valid for writes.
 */
int32_t rca_automaton_interval(const struct RcaAutomaton *f, int64_t *lo, int64_t *hi);

/**
 * Applies `f` to the periodic configuration with period `cells[0..len]`
 * (cell 0 at the origin), writing one period of the image to `out`.
 *
 * # Safety
 * `cells` must point to `len` readable values and `out` to `len` writable
 * ones; `f` must be a live handle.
 */
int32_t rca_automaton_apply_periodic(const struct RcaAutomaton *f,
                                     const uint32_t *cells,
                                     uintptr_t len,
                                     uint32_t *out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `f` must be null or a handle not yet freed.
 */
void rca_automaton_free(struct RcaAutomaton *f);

/**
 * Runs the named acceptance suite. `passed` receives the verdict and, when
 * `report` is not null, it receives a JSON report to be released with
 * [`rca_string_free`].
 *
 * # Safety
 * `name` must be NUL-terminated, `passed` valid for writes and `report`
 * null or valid for writes.
 */
int32_t rca_verify(const char *name, uint64_t seed, bool *passed, char **report);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void rca_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RCAKIT_H */
