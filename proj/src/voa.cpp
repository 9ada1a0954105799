#include "voa/voa.hpp"

#include "voa/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace voa {

std::size_t SensorConfigSet::index_of(const std::string& id) const
{
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id)
            return i;
    throw InputError("unknown sensor config id '" + id + "'");
}

void validate_config_set(const SensorConfigSet& set)
{
    if (set.configs.empty())
        throw InputError("sensor config set is empty");
    if (set.ids.size() != set.configs.size())
        throw InputError("sensor config set needs one id per config");
    for (std::size_t i = 0; i < set.ids.size(); ++i)
        for (std::size_t j = i + 1; j < set.ids.size(); ++j)
            if (set.ids[i] == set.ids[j])
                throw InputError("duplicate sensor config id '" + set.ids[i] + "'");
    for (std::size_t i = 1; i < set.configs.size(); ++i)
        if (set.configs[i].index() != set.configs[0].index())
            throw InputError("sensor config set mixes lidar and camera configs");
    for (const auto& c : set.configs)
        validate_sensor_config(c);
}

PrecomputedObservations precompute(const Belief& poses, const SensorConfigSet& configs,
                                   const ObservationPredictor& predictor,
                                   const SimilarityMetric* metric)
{
    PrecomputedObservations out;
    out.pose_ids = poses.ids;
    out.config_ids = configs.ids;
    out.observations.resize(configs.size());
    for (std::size_t c = 0; c < configs.size(); ++c) {
        out.observations[c].reserve(poses.size());
        for (std::size_t p = 0; p < poses.size(); ++p)
            out.observations[c].push_back(predictor.predict(poses.poses[p], configs.configs[c]));
    }
    if (metric) {
        out.matrices.reserve(configs.size());
        for (std::size_t c = 0; c < configs.size(); ++c)
            out.matrices.push_back(similarity_matrix(*metric, out.observations[c], poses.ids));
    }
    return out;
}

namespace {

void check_shared_pose_set(const Belief& actor, const Belief& helper)
{
    if (actor.size() != helper.size())
        throw InputError("actor and helper beliefs must share one sampled pose set");
    for (std::size_t i = 0; i < actor.size(); ++i)
        if (actor.ids[i] != helper.ids[i])
            throw InputError("actor and helper beliefs must share one sampled pose set");
}

std::vector<std::size_t> resolve_rows(const GraspScoreTable& table,
                                      std::span<const std::string> score_ids)
{
    std::vector<std::size_t> rows;
    rows.reserve(score_ids.size());
    for (const auto& id : score_ids)
        rows.push_back(table.pose_index(id));
    return rows;
}

// Posterior over the shared pose set for one predicted observation, then the
// actor's new best grasp. factors[j] = similarity(prediction_j, observed).
std::size_t posterior_best_grasp(const GraspScoreTable& table,
                                 std::span<const std::size_t> rows, const Belief& actor,
                                 std::span<const double> factors, const std::string& pose_id)
{
    std::vector<double> posterior(actor.size());
    double total = 0.0;
    for (std::size_t j = 0; j < actor.size(); ++j) {
        posterior[j] = factors[j] * actor.weights[j];
        total += posterior[j];
    }
    if (total <= 0.0)
        throw ComputeError("observation inconsistent with belief support (all similarities zero)"
                           " for pose '" + pose_id + "'");
    for (double& w : posterior)
        w /= total;
    return best_grasp_rows(table, rows, posterior);
}

} // namespace

VoaComputation compute_voa_detailed(const SensorConfigVariant& config, const Belief& actor,
                                    const Belief& helper, const GraspScoreTable& table,
                                    std::span<const std::string> score_ids,
                                    const SimilarityMetric& metric,
                                    const ObservationPredictor& predictor,
                                    const ConfigCache* cache, const VoaOptions& options)
{
    check_shared_pose_set(actor, helper);
    if (score_ids.size() != actor.size())
        throw InputError("need one grasp-table pose id per belief pose");
    if (options.observation_samples < 1)
        throw InputError("observation_samples must be at least 1");

    const std::size_t n = actor.size();
    const std::vector<std::size_t> rows = resolve_rows(table, score_ids);

    VoaComputation out;
    const std::size_t base_grasp = best_grasp_rows(table, rows, actor.weights);
    out.baseline_grasp = table.grasp_ids()[base_grasp];
    out.baseline = expected_score_rows(table, base_grasp, rows, helper.weights);

    // Predicted observations for every pose, from the cache when available.
    const std::vector<Observation>* observations = cache ? cache->observations : nullptr;
    std::vector<Observation> computed;
    if (!observations) {
        computed.reserve(n);
        for (std::size_t p = 0; p < n; ++p)
            computed.push_back(predictor.predict(actor.poses[p], config));
        observations = &computed;
    }

    const bool deterministic = options.observation_samples == 1 && options.noise_stddev == 0.0;
    const SimilarityMatrix* matrix = (cache && deterministic) ? cache->matrix : nullptr;

    out.per_pose.reserve(n);
    double post_sum = 0.0;
    std::vector<double> factors(n);
    for (std::size_t i = 0; i < n; ++i) {
        double pose_score = 0.0;
        std::size_t last_grasp = 0;
        for (int s = 0; s < options.observation_samples; ++s) {
            std::size_t grasp;
            if (deterministic && matrix) {
                for (std::size_t j = 0; j < n; ++j)
                    factors[j] = matrix->at(j, i);
                grasp = posterior_best_grasp(table, rows, actor, factors, actor.ids[i]);
            } else {
                Observation observed = (*observations)[i];
                if (!deterministic) {
                    const std::uint64_t seed =
                        derive_seed(options.noise_seed + 0x9e3779b97f4a7c15ULL * (i + 1),
                                    "voa-obs-sample-" + std::to_string(s));
                    observed = add_gaussian_noise(observed, options.noise_stddev, seed);
                }
                for (std::size_t j = 0; j < n; ++j)
                    factors[j] = similarity(metric, (*observations)[j], observed);
                grasp = posterior_best_grasp(table, rows, actor, factors, actor.ids[i]);
            }
            pose_score += table.score_at(rows[i], grasp);
            last_grasp = grasp;
        }
        if (options.observation_samples > 1)
            pose_score /= static_cast<double>(options.observation_samples);
        post_sum += helper.weights[i] * pose_score;
        out.per_pose.push_back({actor.ids[i], table.grasp_ids()[last_grasp], pose_score});
    }
    out.voa = post_sum - out.baseline;
    return out;
}

double compute_voa(const SensorConfigVariant& config, const Belief& actor, const Belief& helper,
                   const GraspScoreTable& table, std::span<const std::string> score_ids,
                   const SimilarityMetric& metric, const ObservationPredictor& predictor,
                   const ConfigCache* cache, const VoaOptions& options)
{
    return compute_voa_detailed(config, actor, helper, table, score_ids, metric, predictor, cache,
                                options)
        .voa;
}

VoaResult select_config(const SensorConfigSet& configs, const Belief& actor, const Belief& helper,
                        const GraspScoreTable& table, std::span<const std::string> score_ids,
                        const SimilarityMetric& metric, const ObservationPredictor& predictor,
                        const PrecomputedObservations* cache, const VoaOptions& options,
                        int max_threads)
{
    validate_config_set(configs);
    const std::size_t n_configs = configs.size();

    std::vector<VoaComputation> results(n_configs);
    std::vector<std::exception_ptr> errors(n_configs);
    const auto run_one = [&](std::size_t c) {
        try {
            ConfigCache slice;
            const ConfigCache* slice_ptr = nullptr;
            if (cache) {
                slice.observations = &cache->observations[c];
                slice.matrix = cache->has_matrices() ? &cache->matrices[c] : nullptr;
                slice_ptr = &slice;
            }
            results[c] = compute_voa_detailed(configs.configs[c], actor, helper, table, score_ids,
                                              metric, predictor, slice_ptr, options);
        } catch (...) {
            errors[c] = std::current_exception();
        }
    };

    int threads = max_threads;
    if (threads == 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(n_configs)));
    if (threads == 1) {
        for (std::size_t c = 0; c < n_configs; ++c)
            run_one(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t c = next.fetch_add(1);
                    if (c >= n_configs)
                        return;
                    run_one(c);
                }
            });
        for (auto& th : pool)
            th.join();
    }
    for (std::size_t c = 0; c < n_configs; ++c)
        if (errors[c])
            std::rethrow_exception(errors[c]);

    VoaResult out;
    out.baseline = results[0].baseline;
    out.baseline_grasp = results[0].baseline_grasp;
    std::size_t best = 0;
    for (std::size_t c = 0; c < n_configs; ++c) {
        out.configs.push_back({configs.ids[c], results[c].voa, std::move(results[c].per_pose)});
        if (c > 0 && (results[c].voa > results[best].voa ||
                      (results[c].voa == results[best].voa && configs.ids[c] < configs.ids[best])))
            best = c;
    }
    out.selected = configs.ids[best];
    return out;
}

std::vector<CameraRank> rank_camera_configs(const SensorConfigSet& candidates,
                                            const CameraRankingParams& params)
{
    validate_config_set(candidates);
    if (!std::holds_alternative<CameraConfig>(candidates.configs[0]))
        throw InputError("camera ranking needs camera configs");
    if (params.d_max <= 0.0)
        throw InputError("camera ranking d_max must be positive");
    if (params.r_ref <= 0.0)
        throw InputError("camera ranking r_ref must be positive");

    std::vector<CameraRank> ranks;
    ranks.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const CameraModel& cam = std::get<CameraConfig>(candidates.configs[i]).model;
        CameraRank r;
        r.id = candidates.ids[i];
        r.distance = (cam.pose.translation - params.point_of_interest).norm();
        if (r.distance == 0.0) {
            r.visibility = 1.0; // PoI at the camera center: as centered as it gets
        } else if (const auto proj = project_point_unbounded(params.point_of_interest, cam)) {
            const double du = proj->col - cam.width / 2.0;
            const double dv = proj->row - cam.height / 2.0;
            const double dev = std::sqrt(du * du + dv * dv);
            r.visibility = 1.0 - std::min(dev / params.r_ref, 1.0);
        } else {
            r.visibility = 0.0; // behind the camera
        }
        r.h = (1.0 - r.distance / params.d_max) + r.visibility;
        ranks.push_back(r);
    }
    std::sort(ranks.begin(), ranks.end(), [](const CameraRank& a, const CameraRank& b) {
        if (a.h != b.h)
            return a.h > b.h;
        return a.id < b.id;
    });
    return ranks;
}

} // namespace voa
