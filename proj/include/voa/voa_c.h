/*
 * C interface to the VOA grasp-assistance library. All entry points return
 * voa_status; on failure voa_last_error() describes the problem. Handles are
 * opaque and must be released with their matching _free function. Handles
 * are not thread-safe individually, but distinct handles may be used from
 * distinct threads.
 */
#ifndef VOA_C_H
#define VOA_C_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum voa_status {
    VOA_OK = 0,
    VOA_ERROR_COMPUTE = 1, /* failure while computing on valid inputs */
    VOA_ERROR_INPUT = 2    /* bad file, schema, parameter, or id */
} voa_status;

typedef struct voa_scenario voa_scenario;
typedef struct voa_run voa_run;
typedef struct voa_camera_ranking voa_camera_ranking;

const char* voa_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* voa_last_error(void);

voa_status voa_scenario_load(const char* path, voa_scenario** out);
void voa_scenario_free(voa_scenario* scenario);

/*
 * Full pipeline: sample poses, predict observations, compute per-config VOA
 * and the intervention metrics. truth_pose selects the designated true pose
 * for the eval rows (NULL evaluates every sampled pose plus mean rows).
 * out_dir, when non-NULL, receives voa-report.json, voa-values.csv,
 * eval-report.csv, per-config simmat CSVs, obs-cache.json and belief.json.
 */
voa_status voa_run_pipeline(const voa_scenario* scenario, const char* truth_pose,
                            const char* out_dir, voa_run** out);
void voa_run_free(voa_run* run);

size_t voa_run_config_count(const voa_run* run);
const char* voa_run_config_id(const voa_run* run, size_t index);
voa_status voa_run_config_voa(const voa_run* run, size_t index, double* out);
const char* voa_run_selected_config(const voa_run* run);
voa_status voa_run_baseline(const voa_run* run, double* expected_score, const char** grasp_id);

/* Eval rows: one per (config, assumed true pose); truth_pose is "__mean__"
 * for the averaged rows. Any output pointer may be NULL. */
size_t voa_run_eval_row_count(const voa_run* run);
voa_status voa_run_eval_row(const voa_run* run, size_t index, const char** config_id,
                            const char** truth_pose, const char** grasp_initial,
                            const char** grasp_final, const char** grasp_best, double* delta,
                            double* delta_star, int* delta_star_defined, double* advantage,
                            int* advantage_defined, int* selected);

/* Predicted observation for one sampled pose and one sensor config, written
 * as CSV (bearing,range rows for lidar; row,col,depth for depth images). */
voa_status voa_predict_observation_csv(const voa_scenario* scenario, const char* pose_id,
                                       const char* config_id, const char* out_path);

/* Pairwise similarity matrix of the predicted observations for one config. */
voa_status voa_similarity_matrix_csv(const voa_scenario* scenario, const char* config_id,
                                     const char* out_path);

/* Camera-placement ranking by the distance/visibility heuristic. Requires a
 * camera scenario with a camera_ranking section. */
voa_status voa_rank_cameras(const voa_scenario* scenario, voa_camera_ranking** out);
void voa_camera_ranking_free(voa_camera_ranking* ranking);
size_t voa_camera_ranking_count(const voa_camera_ranking* ranking);
voa_status voa_camera_ranking_entry(const voa_camera_ranking* ranking, size_t index,
                                    const char** config_id, double* h, double* distance,
                                    double* visibility);
voa_status voa_camera_ranking_write_csv(const voa_camera_ranking* ranking, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* VOA_C_H */
