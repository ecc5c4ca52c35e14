#ifndef CHARCOL_H
#define CHARCOL_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result of every fallible call.
 */
typedef enum CharcolStatus {
  CHARCOL_STATUS_OK = 0,
  CHARCOL_STATUS_NULL_POINTER = 1,
  CHARCOL_STATUS_INVALID_UTF8 = 2,
  /*
   A label, class or name could not be parsed or is unknown.
   */
  CHARCOL_STATUS_PARSE = 3,
  /*
   The request does not make sense for this chain or level.
   */
  CHARCOL_STATUS_USAGE = 4,
  /*
   An explicit table would exceed the size bound.
   */
  CHARCOL_STATUS_SIZE_BOUND = 5,
  /*
   Chain or table data failed validation.
   */
  CHARCOL_STATUS_INVALID_DATA = 6,
  /*
   The output buffer is too small; the required length was written.
   */
  CHARCOL_STATUS_BUFFER_TOO_SMALL = 7,
  /*
   A value does not fit in a 64-bit integer.
   */
  CHARCOL_STATUS_OVERFLOW = 8,
  CHARCOL_STATUS_IO = 9,
  /*
   The library panicked; this is a bug.
   */
  CHARCOL_STATUS_INTERNAL = 10,
} CharcolStatus;

/*
 Opaque chain handle.
 */
typedef struct CharcolChain CharcolChain;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Creates a chain: "sym", "trivial", "S", "z2wreath", "Z2", or a path to a
 GroupTable JSON for H. Writes the handle to `*out`.

 # Safety
 `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum CharcolStatus charcol_chain_new(const char *name, struct CharcolChain **out);

/*
 Releases a chain. Null is ignored.

 # Safety
 `chain` must come from [`charcol_chain_new`] and not be used afterwards.
 */
void charcol_chain_free(struct CharcolChain *chain);

/*
 Sets the bound on |H|^k·k! for explicitly constructed tables.

 # Safety
 `chain` must be a live handle.
 */
enum CharcolStatus charcol_set_max_order(struct CharcolChain *chain, uint64_t max_order);

/*
 Number of irreps at level `n`.

 # Safety
 `chain` must be a live handle and `out` a valid pointer.
 */
enum CharcolStatus charcol_basis_size(const struct CharcolChain *chain, size_t n, size_t *out);

/*
 Label of the `index`-th irrep at level `n`, in basis order. Free the
 result with [`charcol_string_free`].

 # Safety
 `chain` must be a live handle and `out` a valid pointer.
 */
enum CharcolStatus charcol_basis_label(const struct CharcolChain *chain,
                                       size_t n,
                                       size_t index,
                                       char **out);

/*
 Character column of `class` at level `n`, in basis order.

 The number of values is written to `*out_len`. If `capacity` is smaller
 than that, nothing is copied and `BufferTooSmall` is returned, so a call
 with `capacity` 0 queries the length.

 # Safety
 `chain` must be a live handle, `class` a nul-terminated string, `values`
 valid for `capacity` writes (or null when `capacity` is 0), and
 `out_len` a valid pointer.
 */
enum CharcolStatus charcol_column(const struct CharcolChain *chain,
                                  const char *class_,
                                  size_t n,
                                  int64_t *values,
                                  size_t capacity,
                                  size_t *out_len);

/*
 X = Ind·Res at level `n` as JSON {"n", "basis", "entries"}, entries
 sorted by (row, col). Free the result with [`charcol_string_free`].

 # Safety
 `chain` must be a live handle and `out` a valid pointer.
 */
enum CharcolStatus charcol_indres_json(const struct CharcolChain *chain, size_t n, char **out);

/*
 Runs a check suite ("heisenberg", "tasyopari", "jeongha" or "all") up to
 level `max_n`. Writes whether every check passed to `*passed` and, if
 `report` is not null, the JSON report to `*report`.

 # Safety
 `chain` must be a live handle, `suite` a nul-terminated string, `passed`
 a valid pointer and `report` null or a valid pointer.
 */
enum CharcolStatus charcol_verify(const struct CharcolChain *chain,
                                  const char *suite,
                                  size_t max_n,
                                  bool *passed,
                                  char **report);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void charcol_string_free(char *s);

/*
 Message for the last failure on this thread, or null. The pointer stays
 valid until the next failing call on the same thread.
 */
const char *charcol_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHARCOL_H */
