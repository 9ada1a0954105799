#pragma once

#include "voa/eval.hpp"
#include "voa/scenario.hpp"
#include "voa/voa.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace voa {

// One eval-report row: intervention metrics for one (sensor config, assumed
// true pose) pair. truth_pose is "__mean__" for the helper-weighted average
// rows emitted when no explicit true pose was designated.
struct EvalRow {
    std::string config_id;
    std::string truth_pose;
    std::string grasp_initial;
    std::string grasp_final;
    std::string grasp_best;
    InterventionMetrics metrics;
    Ratio advantage; // shared across the truth group; ratio for the selected config
    bool selected = false;
};

struct RunResult {
    Belief belief; // the sampled pose set shared by actor and helper
    std::vector<std::string> score_ids;
    VoaResult voa;
    std::vector<EvalRow> eval_rows;
    std::vector<std::filesystem::path> artifacts;
};

// Parallelism cap from VOA_THREADS (0 or unset = one thread per core).
int max_threads_from_env();

// Full pipeline: sample the pose set, precompute observations and similarity
// matrices, score every sensor config, and evaluate interventions. With
// `truth_pose` the eval rows cover that pose only; otherwise every sampled
// pose is evaluated as the true one plus helper-weighted mean rows. When
// `out_dir` is given, writes voa-report.json, voa-values.csv,
// eval-report.csv, one simmat-<config>.csv per config, obs-cache.json and
// belief.json. Deterministic for a given scenario seed.
RunResult run_scenario(const Scenario& scenario, const std::optional<std::string>& truth_pose,
                       const std::optional<std::filesystem::path>& out_dir);

std::string voa_report_json(const Scenario& scenario, const RunResult& result);
std::string voa_values_csv(const RunResult& result);
std::string eval_report_csv(const Scenario& scenario, const RunResult& result);

} // namespace voa
