#ifndef REDISTRICT_H
#define REDISTRICT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum RdStatus {
  RD_STATUS_OK = 0,
  RD_STATUS_NULL_POINTER = 1,
  RD_STATUS_INVALID_UTF8 = 2,
  RD_STATUS_PARSE = 3,
  RD_STATUS_INVALID_EDGE = 4,
  RD_STATUS_NOT_CONNECTED = 5,
  RD_STATUS_NOT_BICONNECTED = 6,
  RD_STATUS_BICONNECTED = 7,
  RD_STATUS_K_OUT_OF_RANGE = 8,
  RD_STATUS_INVALID_MAP = 9,
  RD_STATUS_INVALID_SWITCH = 10,
  RD_STATUS_INCONTRACTIBLE_DISTRICT = 11,
  RD_STATUS_INVALID_TARGET = 12,
  RD_STATUS_INCONTRACTIBLE_INPUT = 13,
  RD_STATUS_PRECONDITION_VIOLATED = 14,
  RD_STATUS_NOT_PSEUDO_CANONICAL = 15,
  RD_STATUS_MISMATCHED_K = 16,
  RD_STATUS_TOO_LARGE = 17,
  RD_STATUS_UNKNOWN_SIGNATURE = 18,
  RD_STATUS_BAD_PARAMS = 19,
  RD_STATUS_BAD_FORMULA = 20,
  RD_STATUS_NOT_SATISFYING = 21,
  RD_STATUS_WRONG_KIND = 22,
  RD_STATUS_INVALID_PLAN = 23,
  RD_STATUS_IO = 24,
  RD_STATUS_INTERNAL = 25,
  /**
   * Exactly one of the two maps is contractible.
   */
  RD_STATUS_UNREACHABLE = 26,
  /**
   * Both maps are incontractible.
   */
  RD_STATUS_UNSUPPORTED_PAIR = 27,
  /**
   * The plan does not end at the target map.
   */
  RD_STATUS_WRONG_END = 28,
  RD_STATUS_PANIC = 29,
  RD_STATUS_INDEX_OUT_OF_RANGE = 30,
} RdStatus;

/**
 * Opaque graph handle.
 */
typedef struct RdGraph RdGraph;

/**
 * Opaque district map handle.
 */
typedef struct RdMap RdMap;

/**
 * Opaque switch sequence handle.
 */
typedef struct RdPlan RdPlan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * Valid until the next call.
 */
const char *rd_last_error(void);

/**
 * Library version as a static string.
 */
const char *rd_version(void);

void rd_string_free(char *s);

/**
 * Parses the graph text format (`n m`, then `u v` per edge).
 */
enum RdStatus rd_graph_parse(const char *src, struct RdGraph **out);

void rd_graph_free(struct RdGraph *g);

size_t rd_graph_vertex_count(const struct RdGraph *g);

size_t rd_graph_edge_count(const struct RdGraph *g);

/**
 * Parses the map text format and checks it against `g`.
 */
enum RdStatus rd_map_parse(const struct RdGraph *g, const char *src, struct RdMap **out);

void rd_map_free(struct RdMap *p);

size_t rd_map_district_count(const struct RdMap *p);

/**
 * District index of `v`, stable under switches.
 */
enum RdStatus rd_map_district_of(const struct RdMap *p, size_t v, size_t *out);

/**
 * Canonical signature such as `{0,1|2}`; free with [`rd_string_free`].
 */
char *rd_map_signature(const struct RdMap *p);

/**
 * Map text format; free with [`rd_string_free`].
 */
char *rd_map_to_text(const struct RdMap *p);

/**
 * Applies the switch `(u, v, w)` in place.
 */
enum RdStatus rd_map_apply(const struct RdGraph *g, struct RdMap *p, size_t u, size_t v, size_t w);

/**
 * Whether every pair of `k`-district maps of `g` is joined by switches.
 */
enum RdStatus rd_switch_graph_connected(const struct RdGraph *g, size_t k, bool *out);

/**
 * Fewest vertices of a district holding two leaf blocks.
 */
enum RdStatus rd_compute_m(const struct RdGraph *g, size_t *out);

/**
 * Plans switches from `a` to `b`. Returns [`RdStatus::Unreachable`] or
 * [`RdStatus::UnsupportedPair`] when no plan is produced.
 */
enum RdStatus rd_plan(const struct RdGraph *g,
                      const struct RdMap *a,
                      const struct RdMap *b,
                      struct RdPlan **out);

/**
 * Contracts district `district` of `p` to `{target}`.
 */
enum RdStatus rd_contract(const struct RdGraph *g,
                          const struct RdMap *p,
                          size_t district,
                          size_t target,
                          struct RdPlan **out);

/**
 * Parses the plan text format (step count, then `u v w` per line).
 */
enum RdStatus rd_plan_parse(const char *src, struct RdPlan **out);

void rd_plan_free(struct RdPlan *p);

size_t rd_plan_len(const struct RdPlan *p);

/**
 * Step `i` of a plan as `(u, v, w)`.
 */
enum RdStatus rd_plan_step(const struct RdPlan *p, size_t i, size_t *u, size_t *v, size_t *w);

/**
 * Plan text format; free with [`rd_string_free`].
 */
char *rd_plan_to_text(const struct RdPlan *p);

/**
 * Replays `plan` from `a` and checks that it ends at `b`.
 */
enum RdStatus rd_plan_verify(const struct RdGraph *g,
                             const struct RdMap *a,
                             const struct RdPlan *plan,
                             const struct RdMap *b);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REDISTRICT_H */
