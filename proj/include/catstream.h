/* C interface to the catstream categorical stream clustering library.
 *
 * Conventions:
 *   - Handles are opaque; every *_new has a matching *_free.
 *   - Functions returning int use 0 for success and a negative cs_status
 *     otherwise; cs_last_error() describes the most recent failure on the
 *     calling thread.
 *   - Returned strings are heap-allocated; release them with cs_string_free.
 */

#ifndef CATSTREAM_H
#define CATSTREAM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cs_clusterer cs_clusterer;
typedef struct cs_reader cs_reader;

enum cs_status {
  CS_OK = 0,
  CS_ERR_INVALID_ARGUMENT = -1,
  CS_ERR_IO = -2,
  CS_ERR_STATE = -3,
  CS_ERR_ROW = -4  /* malformed input row; the stream may continue */
};

const char* cs_version(void);

/* Message for the last failure on this thread, empty string if none. */
const char* cs_last_error(void);

void cs_string_free(char* s);

/* ---- clustering ----------------------------------------------------- */

/* config_json keys:
 *   algorithm      "streamclucd" (default) | "squeezer" | "kmodes"
 *   attrs          arity m (required unless "schema" given)
 *   schema         array of "categorical" | "numeric"
 *   epsilon, support, sim_threshold, max_clusters, bin_width,
 *   missing_policy ("ignore" | "value"), balance_beta
 *   k, chunk_size, max_iter   (kmodes)
 */
cs_clusterer* cs_clusterer_new(const char* config_json);
void cs_clusterer_free(cs_clusterer* h);

/* Cells are the m attribute values of one record; a null pointer or the
 * configured missing token marks a missing cell. For the streaming
 * algorithms the assignment is reported immediately through the out
 * parameters (any of which may be null); for kmodes it is available after
 * cs_clusterer_finish and cluster_index is set to -1 here. */
int cs_clusterer_push(cs_clusterer* h, const char* const* cells, size_t n,
                      int64_t* cluster_index, int* created_new,
                      double* best_similarity);

/* Ends the stream. Required for kmodes; a no-op otherwise. */
int cs_clusterer_finish(cs_clusterer* h);

int64_t cs_clusterer_record_count(const cs_clusterer* h);
int64_t cs_clusterer_cluster_count(const cs_clusterer* h);
int64_t cs_clusterer_entry_count(const cs_clusterer* h);

int cs_clusterer_assignment(const cs_clusterer* h, int64_t record_index,
                            int64_t* cluster_index, int* created_new,
                            double* best_similarity);

char* cs_clusterer_summary_json(const cs_clusterer* h);
char* cs_clusterer_model_json(const cs_clusterer* h);

/* ---- CSV ingestion --------------------------------------------------- */

/* path "-" reads standard input. schema_json may be null (header inferred,
 * all categorical, "?" missing); otherwise:
 *   { "names": [...], "kinds": ["categorical"|"numeric", ...],
 *     "missing_token": "?", "label_column": "class" }
 */
cs_reader* cs_reader_new(const char* path, const char* schema_json);
void cs_reader_free(cs_reader* h);

size_t cs_reader_arity(const cs_reader* h);
char* cs_reader_schema_json(const cs_reader* h);

/* Returns 1 when a row was produced, 0 at end of stream, CS_ERR_ROW for a
 * malformed line (cs_last_error has details) and other negatives on hard
 * failures. cells/label point into reader-owned storage valid until the next
 * call; a missing cell is returned as the schema's missing token. label is
 * null when the schema names no label column. */
int cs_reader_next(cs_reader* h, const char* const** cells, size_t* n,
                   const char** label);

/* ---- generation, evaluation, sweeps ---------------------------------- */

/* spec_json: { "rows":..., "attrs":..., "classes":..., "domain_size":...,
 * "purity":..., "seed":... }. Returns the full CSV text. metadata_json_out,
 * when non-null, receives a JSON echo of the spec plus the RNG identifier. */
char* cs_generate_csv(const char* spec_json, char** metadata_json_out);

/* Clustering accuracy of labeled assignments; returns a JSON report with
 * r, e, ace, n, k and per-cluster dominants. */
char* cs_accuracy_json(const int64_t* assignments, const char* const* labels,
                       size_t n);

/* spec_json: { "input": "<csv path>", "schema": {...} | null,
 * "label_column": "...", "base": { clusterer config }, "runs": [ SweepRun
 * objects as in cs_clusterer_new plus "algorithm" ] }. Returns a JSON array
 * of per-run reports. */
char* cs_sweep_json(const char* spec_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CATSTREAM_H */
