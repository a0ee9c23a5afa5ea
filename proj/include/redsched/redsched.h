#ifndef REDSCHED_H
#define REDSCHED_H

/* C interface to the reduction-schedule library.  Every function returns a
 * status code; outputs travel through out-parameters.  Functions that fill a
 * char** allocate with malloc and hand ownership to the caller, who releases
 * the string with rs_string_free.  On any nonzero status the out-parameters
 * are left untouched and rs_last_error() carries a message for the calling
 * thread. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    RS_OK = 0,
    /* Malformed or out-of-domain input: unparsable rationals, unknown
     * names, sizes outside a formula's domain, refused search sizes. */
    RS_ERR_INVALID = 1,
    /* A verification run finished and found counterexamples. */
    RS_ERR_VERIFY = 2
};

/* Message for the most recent failure on this thread; empty string after a
 * success.  The buffer is owned by the library and stays valid until the
 * next rs_ call on the same thread. */
const char* rs_last_error(void);

void rs_string_free(char* s);

const char* rs_version(void);

/* Cost-model point.  alpha/beta/gamma are nonnegative rationals written as
 * "n" or "n/d"; p is the processor count. */
typedef struct rs_params {
    const char* alpha;
    const char* beta;
    const char* gamma;
    int64_t p;
} rs_params;

/* ------------------------------ closed forms ----------------------------- */

/* Time of one algorithm on one machine point, exact.  model is "uni" or
 * "bi"; algorithm is one of "binomial", "pipeline", "binary", "bigreedy",
 * "butterfly" (the last two are two-port only).  m is the message size; s
 * the segment size, or <= 0 for a single segment of size m.  The result is
 * a rational string, or a decimal when as_float is nonzero. */
int rs_time(const char* model, const char* algorithm, const rs_params* par,
            int64_t m, int64_t s, int as_float, char** out);

/* Full table for one point: per-algorithm time at the given segment size,
 * the real-valued optimal segment size and optimal time where the algorithm
 * has one, the reference line, and the reduction lower bounds.  format is
 * "csv" or "json".  algorithm may be NULL for all rows -- rows whose
 * formula is undefined at this p are then skipped -- or a single name,
 * in which case domain errors are reported instead. */
int rs_time_table(const char* model, const char* algorithm,
                  const rs_params* par, int64_t m, int64_t s,
                  const char* format, int as_float, char** out);

/* ------------------------------- schedules ------------------------------- */

typedef struct rs_schedule rs_schedule;

/* Builds the event-level schedule of one generator: "binomial", "pipeline",
 * "unigreedy" (one-port model) or "bigreedy" (two-port model).  The message
 * is either m units cut into equi-segments of size s (s <= 0 means one
 * segment), or an explicit plan of `count` positive sizes when `sizes` is
 * non-NULL. */
int rs_schedule_build(const char* algorithm, const rs_params* par, int64_t m,
                      int64_t s, const int64_t* sizes, size_t count,
                      rs_schedule** out);

/* Round-trips the JSON produced by rs_schedule_emit. */
int rs_schedule_parse(const char* json, rs_schedule** out);

void rs_schedule_free(rs_schedule* s);

/* Completion time as an exact rational string (decimal with as_float). */
int rs_schedule_completion(const rs_schedule* s, int as_float, char** out);

int rs_schedule_event_count(const rs_schedule* s, int64_t* out);

/* Renders the schedule; format is "json", "csv", or "svg" (a Gantt chart,
 * one lane per processor, one color per segment). */
int rs_schedule_emit(const rs_schedule* s, const char* format, char** out);

/* Checks structure, port feasibility, reduction correctness, and (for
 * one-port schedules) the in-order validity rules.  Returns RS_OK with a
 * short summary, or RS_ERR_VERIFY with the first violation. */
int rs_schedule_check(const rs_schedule* s, char** report);

/* -------------------------------- reports -------------------------------- */

/* CSV over message sizes 1, 2, 4, ... up to m_max (default 2^20 when <= 0):
 * per-standard-algorithm optimal times, the greedy best equi-segment time,
 * and ratio = best standard / greedy.  search is "pow2" (power-of-two plus
 * formula-neighbor candidate sizes, the default when NULL) or "exhaustive"
 * (every size, refused above m = 1024). */
int rs_report_sweep(const char* model, const rs_params* par, int64_t m_max,
                    const char* search, char** out);

/* mode "standards-uni": CSV rows (p, m, label) over power-of-two grids
 * p in [4, p_max], m in [1, m_max], labeling the fastest of the one-port
 * closed forms at their optimal segment sizes.  Defaults when <= 0:
 * p_max = 1024, m_max = 2^20.
 * mode "butterfly-bi": CSV rows (p, beta_over_gamma, exists, witness_m)
 * with p the powers of two in [8, p_max] plus p_max itself, the ratio
 * sweeping 1..8 in quarter steps, and exists reporting whether any message
 * size in [1, m_max] (default 10^6) makes butterfly beat the two-port
 * greedy optimum; par supplies alpha (beta and gamma are the sweep). */
int rs_report_regionmap(const char* mode, const rs_params* par, int64_t p_max,
                        int64_t m_max, char** out);

/* Runs the unequal-segmentation experiment and returns the per-point CSV
 * and/or a JSON summary (either out pointer may be NULL).  scheduler is
 * "greedy" (default when NULL) or "pipeline".  alpha/gamma restrict the
 * grid to one value when non-NULL (integers); p_max > 0 drops larger
 * processor counts; m > 0 overrides the message size of 10. */
int rs_report_unequal(const char* scheduler, const char* alpha,
                      const char* gamma, int64_t p_max, int64_t m,
                      int as_float, char** csv_out, char** summary_json_out);

/* ------------------------------ verification ----------------------------- */

/* Runs the oracle and property suites: exhaustive-search optimality of the
 * one-port greedy time for p in [2, oracle_max_p] (default 4 when <= 0)
 * over small plans and cost triples, schedule safety properties across the
 * generator families, and the two-port round-count law on p in [2, 64],
 * q in [1, 10].  Returns RS_OK when everything holds, RS_ERR_VERIFY with
 * counterexamples in the report otherwise.  The report is written in both
 * cases when report_out is non-NULL. */
int rs_verify(int64_t oracle_max_p, char** report_out);

#ifdef __cplusplus
}
#endif

#endif /* REDSCHED_H */
