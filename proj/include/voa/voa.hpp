#pragma once

#include "voa/belief.hpp"
#include "voa/grasp.hpp"
#include "voa/sensors.hpp"
#include "voa/similarity.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace voa {

// Candidate sensor configurations under evaluation. Nonempty and of one
// sensor kind; ids are unique.
struct SensorConfigSet {
    std::vector<std::string> ids;
    std::vector<SensorConfigVariant> configs;

    std::size_t size() const { return configs.size(); }
    std::size_t index_of(const std::string& id) const; // throws InputError
};

void validate_config_set(const SensorConfigSet& set);

// All predicted observations, computed once per (pose, config) pair, plus
// optional per-config pairwise similarity matrices. Built single-writer and
// then shared read-only.
struct PrecomputedObservations {
    std::vector<std::string> pose_ids;
    std::vector<std::string> config_ids;
    std::vector<std::vector<Observation>> observations; // [config][pose]
    std::vector<SimilarityMatrix> matrices;             // empty unless a metric was given

    bool has_matrices() const { return !matrices.empty(); }
    const Observation& at(std::size_t config, std::size_t pose) const
    {
        return observations[config][pose];
    }
};

PrecomputedObservations precompute(const Belief& poses, const SensorConfigSet& configs,
                                   const ObservationPredictor& predictor,
                                   const SimilarityMetric* metric = nullptr);

// Read-only slice of the cache for one configuration.
struct ConfigCache {
    const std::vector<Observation>* observations = nullptr;
    const SimilarityMatrix* matrix = nullptr;
};

// Monte-Carlo options for the general stochastic-observation form. The
// default (one noiseless sample per pose) reproduces the deterministic
// simplified computation exactly.
struct VoaOptions {
    int observation_samples = 1;
    double noise_stddev = 0.0;
    std::uint64_t noise_seed = 0;
};

struct PosePostHelp {
    std::string pose_id;
    std::string grasp_id; // grasp the actor would pick after this pose's observation
    double score = 0.0;   // its score at that pose
};

struct VoaComputation {
    double voa = 0.0;
    double baseline = 0.0;            // expected score of the no-help grasp under the helper belief
    std::string baseline_grasp;
    std::vector<PosePostHelp> per_pose;
};

// Expected improvement in grasp success from sharing this configuration's
// observation: for each pose p (helper-weighted), predict the observation,
// update the actor's belief, rescore the actor's new best grasp at p, and
// subtract the no-help baseline. Beliefs must share one pose set;
// score_ids[i] maps pose i to its grasp-table row. Deterministic; with a
// cache the result is bit-identical to the cold path.
VoaComputation compute_voa_detailed(const SensorConfigVariant& config, const Belief& actor,
                                    const Belief& helper, const GraspScoreTable& table,
                                    std::span<const std::string> score_ids,
                                    const SimilarityMetric& metric,
                                    const ObservationPredictor& predictor,
                                    const ConfigCache* cache = nullptr,
                                    const VoaOptions& options = {});

double compute_voa(const SensorConfigVariant& config, const Belief& actor, const Belief& helper,
                   const GraspScoreTable& table, std::span<const std::string> score_ids,
                   const SimilarityMetric& metric, const ObservationPredictor& predictor,
                   const ConfigCache* cache = nullptr, const VoaOptions& options = {});

struct VoaConfigResult {
    std::string id;
    double voa = 0.0;
    std::vector<PosePostHelp> per_pose;
};

struct VoaResult {
    std::string selected; // attains the maximal VOA; ties go to the smallest id
    double baseline = 0.0;
    std::string baseline_grasp;
    std::vector<VoaConfigResult> configs; // in input order
};

// Evaluates every configuration and picks the argmax. Per-config evaluations
// are independent; max_threads > 1 runs them concurrently with identical
// results (0 = one thread per hardware core).
VoaResult select_config(const SensorConfigSet& configs, const Belief& actor, const Belief& helper,
                        const GraspScoreTable& table, std::span<const std::string> score_ids,
                        const SimilarityMetric& metric, const ObservationPredictor& predictor,
                        const PrecomputedObservations* cache = nullptr,
                        const VoaOptions& options = {}, int max_threads = 1);

// Camera-placement heuristic H = (1 - D/D_max) + V with D the distance from
// the camera center to the point of interest and V = 1 - min(dev/R_ref, 1),
// dev being the pixel distance of the PoI projection from the image center.
// A PoI behind the camera scores V = 0; a PoI at the camera center scores
// V = 1.
struct CameraRankingParams {
    Eigen::Vector3d point_of_interest = Eigen::Vector3d::Zero();
    double d_max = 1.0;  // > 0
    double r_ref = 1.0;  // pixels, > 0
};

struct CameraRank {
    std::string id;
    double h = 0.0;
    double distance = 0.0;
    double visibility = 0.0;
};

// Requires a camera config set; sorted by descending H, ties by ascending id.
std::vector<CameraRank> rank_camera_configs(const SensorConfigSet& candidates,
                                            const CameraRankingParams& params);

} // namespace voa
