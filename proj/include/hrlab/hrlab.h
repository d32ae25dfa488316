/* hrlab C API: spectral and scattering diagnostics for gapped quantum spin
 * chains behind an opaque-handle, error-code interface.
 *
 * Usage pattern:
 *   hrlab_session* s = hrlab_session_new();
 *   hrlab_load_config_file(s, "experiment.cfg");
 *   hrlab_set_option(s, "out_dir", "results");
 *   int rc = hrlab_run(s, "spectrum");
 *   const char* json = hrlab_result_json(s);
 *   ...
 *   hrlab_session_free(s);
 *
 * All strings returned by accessors are owned by the session and remain valid
 * until the next API call on the same session, or until the session is freed.
 * Sessions are not thread-safe; use one session per thread.
 */

#ifndef HRLAB_H
#define HRLAB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hrlab_session hrlab_session;

/* status codes returned by every fallible call */
enum {
  HRLAB_OK = 0,
  HRLAB_ERR_ARGUMENT = 1,      /* bad arguments / domain errors / parse errors */
  HRLAB_ERR_NUMERIC = 2,       /* solver failures, tolerance violations */
  HRLAB_ERR_IO = 3,            /* file system problems */
  HRLAB_ERR_CHECK_FAILED = 4,  /* command ran, but a FAIL verdict was recorded */
  HRLAB_ERR_INTERNAL = 5
};

const char* hrlab_version(void);

hrlab_session* hrlab_session_new(void);
void hrlab_session_free(hrlab_session* s);

/* configuration: line-oriented key-value with [section] headers */
int hrlab_load_config_file(hrlab_session* s, const char* path);
int hrlab_load_config_text(hrlab_session* s, const char* text);

/* options: "out_dir" (string), "no_cache" ("0"/"1"), "plot" ("0"/"1") */
int hrlab_set_option(hrlab_session* s, const char* key, const char* value);

/* commands: certify | spectrum | lightcone | massshell | arveson | scatter |
 * gapflow | all. Results are written under out_dir and kept on the session. */
int hrlab_run(hrlab_session* s, const char* command);

/* JSON envelope of the last successful run (NULL if none) */
const char* hrlab_result_json(const hrlab_session* s);
/* newline-separated list of files the last run emitted (NULL if none) */
const char* hrlab_result_files(const hrlab_session* s);
/* canonical hash of the loaded configuration (NULL if none loaded) */
const char* hrlab_config_hash(const hrlab_session* s);
/* human-readable message for the last error (empty string if none) */
const char* hrlab_last_error(const hrlab_session* s);

/* render an emitted result file; kind: dispersion | lightcone | packet | overlap */
int hrlab_plot_file(hrlab_session* s, const char* result_json_path, const char* kind,
                    const char* svg_out_path);

#ifdef __cplusplus
}
#endif

#endif /* HRLAB_H */
