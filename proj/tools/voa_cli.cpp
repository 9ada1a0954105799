// Command-line front end for the VOA grasp-assistance library. Talks to the
// shared library exclusively through the C API in voa/voa_c.h.

#include "voa/voa_c.h"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <string>

namespace {

int fail(voa_status status)
{
    std::fprintf(stderr, "error: %s\n", voa_last_error());
    return static_cast<int>(status);
}

struct ScenarioHandle {
    voa_scenario* ptr = nullptr;
    ~ScenarioHandle() { voa_scenario_free(ptr); }
};

struct RunHandle {
    voa_run* ptr = nullptr;
    ~RunHandle() { voa_run_free(ptr); }
};

struct RankingHandle {
    voa_camera_ranking* ptr = nullptr;
    ~RankingHandle() { voa_camera_ranking_free(ptr); }
};

int run_pipeline_command(const std::string& scenario_path, const std::string& out_dir,
                         const char* truth_pose, bool print_table, bool print_eval)
{
    ScenarioHandle scenario;
    if (const voa_status s = voa_scenario_load(scenario_path.c_str(), &scenario.ptr))
        return fail(s);
    RunHandle run;
    if (const voa_status s =
            voa_run_pipeline(scenario.ptr, truth_pose, out_dir.c_str(), &run.ptr))
        return fail(s);

    if (print_table) {
        double baseline = 0.0;
        const char* baseline_grasp = nullptr;
        voa_run_baseline(run.ptr, &baseline, &baseline_grasp);
        std::printf("baseline grasp %s, expected score %.12g\n", baseline_grasp, baseline);
        std::printf("%-12s %s\n", "config", "voa");
        for (size_t i = 0; i < voa_run_config_count(run.ptr); ++i) {
            double value = 0.0;
            voa_run_config_voa(run.ptr, i, &value);
            std::printf("%-12s %.12g\n", voa_run_config_id(run.ptr, i), value);
        }
    }
    if (print_eval) {
        std::printf("%-12s %-10s %-12s %-12s %-12s %s\n", "config", "truth", "delta",
                    "delta_star", "advantage", "selected");
        for (size_t i = 0; i < voa_run_eval_row_count(run.ptr); ++i) {
            const char *config = nullptr, *truth = nullptr;
            double delta = 0.0, delta_star = 0.0, advantage = 0.0;
            int ds_defined = 0, adv_defined = 0, selected = 0;
            voa_run_eval_row(run.ptr, i, &config, &truth, nullptr, nullptr, nullptr, &delta,
                             &delta_star, &ds_defined, &advantage, &adv_defined, &selected);
            char star[32] = "undefined";
            if (ds_defined)
                std::snprintf(star, sizeof star, "%.6g", delta_star);
            char adv[32] = "undefined";
            if (adv_defined)
                std::snprintf(adv, sizeof adv, "%.6g", advantage);
            std::printf("%-12s %-10s %-12.6g %-12s %-12s %s\n", config, truth, delta, star, adv,
                        selected ? "*" : "");
        }
    }
    std::printf("selected: %s\n", voa_run_selected_config(run.ptr));
    std::printf("reports written to %s\n", out_dir.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Value-of-assistance scoring for sensor placement in grasping tasks"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "voa-out", pose_id, config_id, truth_pose;

    CLI::App* cmd_voa = app.add_subcommand("voa", "Compute VOA for every sensor config");
    cmd_voa->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    cmd_voa->add_option("--out", out_dir, "Output directory for reports");

    CLI::App* cmd_select = app.add_subcommand("select", "Pick the sensor config with maximal VOA");
    cmd_select->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    cmd_select->add_option("--out", out_dir, "Output directory for reports");

    CLI::App* cmd_eval =
        app.add_subcommand("eval", "Intervention metrics for a designated true pose");
    cmd_eval->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    cmd_eval->add_option("--truth", truth_pose, "True pose id (e.g. p2)")->required();
    cmd_eval->add_option("--out", out_dir, "Output directory for reports");

    CLI::App* cmd_predict =
        app.add_subcommand("predict-obs", "Dump the predicted observation for one pose/config");
    cmd_predict->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    cmd_predict->add_option("--pose", pose_id, "Sampled pose id")->required();
    cmd_predict->add_option("--config", config_id, "Sensor config id")->required();
    cmd_predict->add_option("--out", out_dir, "Output directory");

    CLI::App* cmd_simmat =
        app.add_subcommand("simmat", "Pairwise similarity matrix of predicted observations");
    cmd_simmat->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    cmd_simmat->add_option("--config", config_id, "Sensor config id")->required();
    cmd_simmat->add_option("--out", out_dir, "Output directory");

    CLI::App* cmd_rank = app.add_subcommand("rank-cams", "Rank camera configs by the placement heuristic");
    cmd_rank->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    cmd_rank->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: %s\n\n%s", e.what(), app.help().c_str());
        return 2;
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::fprintf(stderr, "error: cannot create output directory '%s'\n", out_dir.c_str());
        return 2;
    }

    if (cmd_voa->parsed())
        return run_pipeline_command(scenario_path, out_dir, nullptr, true, false);
    if (cmd_select->parsed())
        return run_pipeline_command(scenario_path, out_dir, nullptr, false, false);
    if (cmd_eval->parsed())
        return run_pipeline_command(scenario_path, out_dir, truth_pose.c_str(), false, true);

    ScenarioHandle scenario;
    if (const voa_status s = voa_scenario_load(scenario_path.c_str(), &scenario.ptr))
        return fail(s);

    if (cmd_predict->parsed()) {
        const std::string path = out_dir + "/obs-" + pose_id + "-" + config_id + ".csv";
        if (const voa_status s = voa_predict_observation_csv(scenario.ptr, pose_id.c_str(),
                                                             config_id.c_str(), path.c_str()))
            return fail(s);
        std::printf("wrote %s\n", path.c_str());
        return 0;
    }
    if (cmd_simmat->parsed()) {
        const std::string path = out_dir + "/simmat-" + config_id + ".csv";
        if (const voa_status s =
                voa_similarity_matrix_csv(scenario.ptr, config_id.c_str(), path.c_str()))
            return fail(s);
        std::printf("wrote %s\n", path.c_str());
        return 0;
    }
    if (cmd_rank->parsed()) {
        RankingHandle ranking;
        if (const voa_status s = voa_rank_cameras(scenario.ptr, &ranking.ptr))
            return fail(s);
        std::printf("%-12s %-12s %-12s %s\n", "config", "H", "distance_m", "visibility");
        for (size_t i = 0; i < voa_camera_ranking_count(ranking.ptr); ++i) {
            const char* id = nullptr;
            double h = 0.0, d = 0.0, v = 0.0;
            voa_camera_ranking_entry(ranking.ptr, i, &id, &h, &d, &v);
            std::printf("%-12s %-12.6g %-12.6g %.6g\n", id, h, d, v);
        }
        const std::string path = out_dir + "/rank-cams.csv";
        if (const voa_status s = voa_camera_ranking_write_csv(ranking.ptr, path.c_str()))
            return fail(s);
        std::printf("wrote %s\n", path.c_str());
        return 0;
    }
    return 2;
}
