#ifndef DEDUP_LAYOUT_H
#define DEDUP_LAYOUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DlStatus {
  DL_STATUS_OK = 0,
  DL_STATUS_NULL_POINTER = 1,
  DL_STATUS_UTF8 = 2,
  DL_STATUS_PARSE = 3,
  DL_STATUS_INVALID = 4,
  DL_STATUS_GUARD = 5,
  DL_STATUS_INTERNAL = 6,
} DlStatus;

/**
 * A file-model graph (plain, sparse Hamiltonian or rooted tree).
 */
typedef struct DlGraph DlGraph;

/**
 * An uncoded or coded chunk store.
 */
typedef struct DlStore DlStore;

/**
 * Message of the last failed call on this thread; valid until the next call.
 */
const char *dl_last_error(void);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum DlStatus dl_graph_from_json(const char *json, struct DlGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be freed twice; null is ignored.
 */
void dl_graph_free(struct DlGraph *g);

/**
 * Writes a newly allocated JSON string; release it with [`dl_string_free`].
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum DlStatus dl_graph_to_json(const struct DlGraph *g, char **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum DlStatus dl_store_from_json(const char *json, struct DlStore **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice; null is ignored.
 */
void dl_store_free(struct DlStore *s);

/**
 * # Safety
 * `s` must be a live handle and `out` a writable pointer.
 */
enum DlStatus dl_store_to_json(const struct DlStore *s, char **out);

/**
 * Stretch metric as `num/den` and jump metric of `s` over files of at most `t` chunks.
 *
 * # Safety
 * Handles must be live; output pointers must be writable.
 */
enum DlStatus dl_evaluate(const struct DlGraph *g,
                          const struct DlStore *s,
                          size_t t,
                          uint64_t *stretch_num,
                          uint64_t *stretch_den,
                          size_t *jump);

/**
 * Named example graph; negative parameters mean "not given".
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum DlStatus dl_gen_example(const char *name,
                             int64_t n,
                             int64_t k,
                             int64_t big_n,
                             struct DlGraph **out);

/**
 * Folding layout of a sparse Hamiltonian graph.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum DlStatus dl_layout_sham(const struct DlGraph *g, struct DlStore **out);

/**
 * Shortest store keeping every edge file contiguous.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum DlStatus dl_zero_frag_t2(const struct DlGraph *g, struct DlStore **out);

/**
 * # Safety
 * `s` must come from a `*_to_json` call and not be freed twice; null is ignored.
 */
void dl_string_free(char *s);

#endif /* DEDUP_LAYOUT_H */
