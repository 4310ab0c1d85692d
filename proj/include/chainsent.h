#ifndef CHAINSENT_H
#define CHAINSENT_H

/*
 * chainsent — blockchain embedded-text sentiment pipeline.
 *
 * C interface around the pipeline stages. A pipeline object is a bag of
 * key=value settings plus an error slot; stages read their inputs and write
 * their outputs through the filesystem only.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum chainsent_status {
    CHAINSENT_OK = 0,
    CHAINSENT_ERR_CONFIG = 1,   /* bad or missing configuration */
    CHAINSENT_ERR_IO = 2,       /* file not readable/writable */
    CHAINSENT_ERR_INPUT = 3,    /* malformed input data */
    CHAINSENT_ERR_INTERNAL = 4  /* anything else */
} chainsent_status;

/* Library version, e.g. "1.0.0". Static storage, never freed. */
const char *chainsent_version(void);

typedef struct chainsent_pipeline chainsent_pipeline;

/* Returns NULL only on allocation failure. */
chainsent_pipeline *chainsent_pipeline_new(void);
void chainsent_pipeline_free(chainsent_pipeline *p);

/*
 * Merge key=value settings from a config file ('#' starts a comment).
 * Relative paths in the file are resolved against the file's directory.
 * Later chainsent_pipeline_set calls override file-provided values.
 */
chainsent_status chainsent_pipeline_load_config(chainsent_pipeline *p,
                                                const char *path);

/* Set one setting. Setting a key twice keeps the latest value. */
chainsent_status chainsent_pipeline_set(chainsent_pipeline *p,
                                        const char *key, const char *value);

/*
 * Look up a setting. Returns NULL when unset. The pointer stays valid until
 * the next call into the same pipeline object.
 */
const char *chainsent_pipeline_get(chainsent_pipeline *p, const char *key);

/*
 * Run one stage: decode | clean | sentiment | topics | dataset | train |
 * report. Returns CHAINSENT_OK on success; on failure the stage's partial
 * output (if any) is left under "<out>.partial" and the error is readable
 * via chainsent_pipeline_last_error.
 */
chainsent_status chainsent_pipeline_run_stage(chainsent_pipeline *p,
                                              const char *stage);

/* Message for the most recent failure on this pipeline; "" if none. */
const char *chainsent_pipeline_last_error(const chainsent_pipeline *p);

#ifdef __cplusplus
}
#endif

#endif /* CHAINSENT_H */
