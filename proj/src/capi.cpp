#include "voa/voa_c.h"

#include "voa/errors.hpp"
#include "voa/pipeline.hpp"
#include "voa/scenario.hpp"
#include "voa/serialize.hpp"

#include <cstring>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>

struct voa_scenario {
    voa::Scenario scenario;
};

struct voa_run {
    voa::RunResult result;
};

struct voa_camera_ranking {
    std::vector<voa::CameraRank> ranks;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn> voa_status guarded(Fn&& fn)
{
    try {
        fn();
        return VOA_OK;
    } catch (const voa::InputError& e) {
        g_last_error = e.what();
        return VOA_ERROR_INPUT;
    } catch (const voa::ComputeError& e) {
        g_last_error = e.what();
        return VOA_ERROR_COMPUTE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return VOA_ERROR_COMPUTE;
    }
}

voa_status require_arg(bool ok, const char* what)
{
    if (ok)
        return VOA_OK;
    g_last_error = what;
    return VOA_ERROR_INPUT;
}

} // namespace

extern "C" {

const char* voa_version(void)
{
    return "1.0.0";
}

const char* voa_last_error(void)
{
    return g_last_error.c_str();
}

voa_status voa_scenario_load(const char* path, voa_scenario** out)
{
    if (require_arg(path && out, "voa_scenario_load: null argument") != VOA_OK)
        return VOA_ERROR_INPUT;
    *out = nullptr;
    return guarded([&] { *out = new voa_scenario{voa::load_scenario(path)}; });
}

void voa_scenario_free(voa_scenario* scenario)
{
    delete scenario;
}

voa_status voa_run_pipeline(const voa_scenario* scenario, const char* truth_pose,
                            const char* out_dir, voa_run** out)
{
    if (require_arg(scenario && out, "voa_run_pipeline: null argument") != VOA_OK)
        return VOA_ERROR_INPUT;
    *out = nullptr;
    return guarded([&] {
        std::optional<std::string> truth;
        if (truth_pose)
            truth = std::string(truth_pose);
        std::optional<std::filesystem::path> dir;
        if (out_dir)
            dir = std::filesystem::path(out_dir);
        *out = new voa_run{voa::run_scenario(scenario->scenario, truth, dir)};
    });
}

void voa_run_free(voa_run* run)
{
    delete run;
}

size_t voa_run_config_count(const voa_run* run)
{
    return run ? run->result.voa.configs.size() : 0;
}

const char* voa_run_config_id(const voa_run* run, size_t index)
{
    if (!run || index >= run->result.voa.configs.size())
        return nullptr;
    return run->result.voa.configs[index].id.c_str();
}

voa_status voa_run_config_voa(const voa_run* run, size_t index, double* out)
{
    if (require_arg(run && out, "voa_run_config_voa: null argument") != VOA_OK)
        return VOA_ERROR_INPUT;
    if (require_arg(index < run->result.voa.configs.size(),
                    "voa_run_config_voa: index out of range") != VOA_OK)
        return VOA_ERROR_INPUT;
    *out = run->result.voa.configs[index].voa;
    return VOA_OK;
}

const char* voa_run_selected_config(const voa_run* run)
{
    return run ? run->result.voa.selected.c_str() : nullptr;
}

voa_status voa_run_baseline(const voa_run* run, double* expected_score, const char** grasp_id)
{
    if (require_arg(run != nullptr, "voa_run_baseline: null run") != VOA_OK)
        return VOA_ERROR_INPUT;
    if (expected_score)
        *expected_score = run->result.voa.baseline;
    if (grasp_id)
        *grasp_id = run->result.voa.baseline_grasp.c_str();
    return VOA_OK;
}

size_t voa_run_eval_row_count(const voa_run* run)
{
    return run ? run->result.eval_rows.size() : 0;
}

voa_status voa_run_eval_row(const voa_run* run, size_t index, const char** config_id,
                            const char** truth_pose, const char** grasp_initial,
                            const char** grasp_final, const char** grasp_best, double* delta,
                            double* delta_star, int* delta_star_defined, double* advantage,
                            int* advantage_defined, int* selected)
{
    if (require_arg(run != nullptr, "voa_run_eval_row: null run") != VOA_OK)
        return VOA_ERROR_INPUT;
    if (require_arg(index < run->result.eval_rows.size(),
                    "voa_run_eval_row: index out of range") != VOA_OK)
        return VOA_ERROR_INPUT;
    const voa::EvalRow& row = run->result.eval_rows[index];
    if (config_id)
        *config_id = row.config_id.c_str();
    if (truth_pose)
        *truth_pose = row.truth_pose.c_str();
    if (grasp_initial)
        *grasp_initial = row.grasp_initial.c_str();
    if (grasp_final)
        *grasp_final = row.grasp_final.c_str();
    if (grasp_best)
        *grasp_best = row.grasp_best.c_str();
    if (delta)
        *delta = row.metrics.delta;
    if (delta_star)
        *delta_star = row.metrics.delta_star.value;
    if (delta_star_defined)
        *delta_star_defined = row.metrics.delta_star.defined ? 1 : 0;
    if (advantage)
        *advantage = row.advantage.value;
    if (advantage_defined)
        *advantage_defined = row.advantage.defined ? 1 : 0;
    if (selected)
        *selected = row.selected ? 1 : 0;
    return VOA_OK;
}

voa_status voa_predict_observation_csv(const voa_scenario* scenario, const char* pose_id,
                                       const char* config_id, const char* out_path)
{
    if (require_arg(scenario && pose_id && config_id && out_path,
                    "voa_predict_observation_csv: null argument") != VOA_OK)
        return VOA_ERROR_INPUT;
    return guarded([&] {
        const voa::Scenario& scn = scenario->scenario;
        voa::RandomStream rng(scn.seed, "pose-sampling");
        const voa::Belief belief = voa::sample_pose_set(scn.belief_model, scn.sample_count, rng);
        const std::size_t pose = belief.index_of(pose_id);
        const std::size_t config = scn.sensors.index_of(config_id);
        const voa::MeshObservationPredictor predictor(scn.mesh, scn.catalog);
        const voa::Observation obs =
            predictor.predict(belief.poses[pose], scn.sensors.configs[config]);
        voa::write_text_file(out_path, voa::observation_to_csv(obs));
    });
}

voa_status voa_similarity_matrix_csv(const voa_scenario* scenario, const char* config_id,
                                     const char* out_path)
{
    if (require_arg(scenario && config_id && out_path,
                    "voa_similarity_matrix_csv: null argument") != VOA_OK)
        return VOA_ERROR_INPUT;
    return guarded([&] {
        const voa::Scenario& scn = scenario->scenario;
        voa::RandomStream rng(scn.seed, "pose-sampling");
        const voa::Belief belief = voa::sample_pose_set(scn.belief_model, scn.sample_count, rng);
        const std::size_t config = scn.sensors.index_of(config_id);
        const voa::MeshObservationPredictor predictor(scn.mesh, scn.catalog);
        std::vector<voa::Observation> observations;
        observations.reserve(belief.size());
        for (const auto& pose : belief.poses)
            observations.push_back(predictor.predict(pose, scn.sensors.configs[config]));
        const voa::SimilarityMatrix matrix =
            voa::similarity_matrix(scn.metric, observations, belief.ids);
        voa::write_text_file(out_path, voa::to_csv(matrix));
    });
}

voa_status voa_rank_cameras(const voa_scenario* scenario, voa_camera_ranking** out)
{
    if (require_arg(scenario && out, "voa_rank_cameras: null argument") != VOA_OK)
        return VOA_ERROR_INPUT;
    *out = nullptr;
    return guarded([&] {
        const voa::Scenario& scn = scenario->scenario;
        if (!scn.camera_ranking)
            throw voa::InputError("scenario has no camera_ranking section");
        *out = new voa_camera_ranking{voa::rank_camera_configs(scn.sensors, *scn.camera_ranking)};
    });
}

void voa_camera_ranking_free(voa_camera_ranking* ranking)
{
    delete ranking;
}

size_t voa_camera_ranking_count(const voa_camera_ranking* ranking)
{
    return ranking ? ranking->ranks.size() : 0;
}

voa_status voa_camera_ranking_entry(const voa_camera_ranking* ranking, size_t index,
                                    const char** config_id, double* h, double* distance,
                                    double* visibility)
{
    if (require_arg(ranking != nullptr, "voa_camera_ranking_entry: null ranking") != VOA_OK)
        return VOA_ERROR_INPUT;
    if (require_arg(index < ranking->ranks.size(),
                    "voa_camera_ranking_entry: index out of range") != VOA_OK)
        return VOA_ERROR_INPUT;
    const voa::CameraRank& rank = ranking->ranks[index];
    if (config_id)
        *config_id = rank.id.c_str();
    if (h)
        *h = rank.h;
    if (distance)
        *distance = rank.distance;
    if (visibility)
        *visibility = rank.visibility;
    return VOA_OK;
}

voa_status voa_camera_ranking_write_csv(const voa_camera_ranking* ranking, const char* out_path)
{
    if (require_arg(ranking && out_path, "voa_camera_ranking_write_csv: null argument") != VOA_OK)
        return VOA_ERROR_INPUT;
    return guarded([&] {
        std::ostringstream out;
        out << "config,h,distance_m,visibility\n";
        for (const auto& rank : ranking->ranks)
            out << rank.id << ',' << voa::format_double(rank.h) << ','
                << voa::format_double(rank.distance) << ',' << voa::format_double(rank.visibility)
                << '\n';
        voa::write_text_file(out_path, out.str());
    });
}

} // extern "C"
