/*
 * sgtrack: multi-object tracking with an online-learned structural graph.
 *
 * C interface over the C++ core. All objects are opaque handles owned by
 * the library; every fallible call returns an sgt_status, and
 * sgt_last_error() describes the most recent failure on the calling
 * thread. Frames are row-major RGB8 buffers.
 */

#ifndef SGTRACK_H
#define SGTRACK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SGT_API __declspec(dllexport)
#else
#define SGT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sgt_status {
  SGT_OK = 0,
  SGT_ERR_INVALID_ARGUMENT = 1,
  SGT_ERR_IO = 2,
  SGT_ERR_CONFIG = 3,
  SGT_ERR_RUNTIME = 4
} sgt_status;

typedef struct sgt_config sgt_config;
typedef struct sgt_tracker sgt_tracker;

/* Box as top-left corner plus size, in pixels. */
typedef struct sgt_box {
  double x;
  double y;
  double w;
  double h;
} sgt_box;

typedef struct sgt_object_state {
  int object_id;
  sgt_box box;
  double confidence;
} sgt_object_state;

typedef struct sgt_metrics {
  double motp;
  double mota;
  double motg;
  long long id_switches;
  long long misses;
  long long false_positives;
  long long mismatches;
  long long matches;
  long long gt_count;
  double tp_rate;
  double fp_rate;
  int motp_undefined;
} sgt_metrics;

SGT_API const char* sgt_version(void);
SGT_API const char* sgt_status_name(sgt_status status);
SGT_API const char* sgt_last_error(void);

/* ---- configuration ----------------------------------------------------- */

SGT_API sgt_status sgt_config_create(sgt_config** out);
SGT_API sgt_status sgt_config_load(const char* path, sgt_config** out);
SGT_API sgt_status sgt_config_set(sgt_config* config, const char* key,
                                  const char* value);
/* Writes the canonical text of one key into buf (NUL-terminated). */
SGT_API sgt_status sgt_config_get(const sgt_config* config, const char* key,
                                  char* buf, size_t cap);
SGT_API sgt_status sgt_config_save(const sgt_config* config, const char* path);
SGT_API void sgt_config_free(sgt_config* config);

/* ---- streaming tracker -------------------------------------------------- */

/*
 * Creates a tracker from the first frame and one annotation per object
 * (object ids must be 0..count-1 and match the configured adjacency).
 */
SGT_API sgt_status sgt_tracker_create(const sgt_config* config,
                                      const uint8_t* rgb, int width, int height,
                                      const sgt_object_state* annotations,
                                      size_t count, sgt_tracker** out);
SGT_API sgt_status sgt_tracker_step(sgt_tracker* tracker, const uint8_t* rgb,
                                    int width, int height);
/* States for the most recent frame; `cap` entries available in `out`. */
SGT_API sgt_status sgt_tracker_states(const sgt_tracker* tracker,
                                      sgt_object_state* out, size_t cap,
                                      size_t* count);
SGT_API sgt_status sgt_tracker_object_count(const sgt_tracker* tracker,
                                            size_t* count);
SGT_API sgt_status sgt_tracker_save_model(const sgt_tracker* tracker,
                                          const char* path);
SGT_API void sgt_tracker_free(sgt_tracker* tracker);

/* ---- batch runs (the CLI surface) --------------------------------------- */

SGT_API sgt_status sgt_run_track(const sgt_config* config,
                                 const char* sequence_path,
                                 const char* annotations_csv,
                                 const char* out_csv,
                                 const char* overlay_dir_or_null,
                                 const char* model_dump_or_null);

/* Evaluates hypothesis tracks against ground truth; fills `out` and, when
 * report_path is non-NULL, writes the key-value report there. */
SGT_API sgt_status sgt_run_evaluate(const char* gt_csv, const char* hyp_csv,
                                    double iou_threshold,
                                    const char* report_path_or_null,
                                    sgt_metrics* out);

/* Renders a bundled synthetic scenario (frames, gt.csv, annotations.csv,
 * events.csv, config.cfg) into out_dir. frame_override <= 0 keeps the
 * scenario's own length. */
SGT_API sgt_status sgt_run_simulate(const char* scenario, uint64_t seed,
                                    const char* out_dir, int frame_override);

/* Comma-separated bundled scenario names. */
SGT_API sgt_status sgt_scenario_names(char* buf, size_t cap);

/* Grid sweep over the score weights; writes the per-cell CSV to out_csv
 * and marginal means next to it. */
SGT_API sgt_status sgt_run_sweep(const sgt_config* config,
                                 const char* sequence_path,
                                 const char* annotations_csv_or_null,
                                 const char* gt_csv, double step, int repeats,
                                 const char* out_csv);

SGT_API sgt_status sgt_run_overlay(const char* sequence_path,
                                   const char* track_csv, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* SGTRACK_H */
