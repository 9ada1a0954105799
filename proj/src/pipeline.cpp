#include "voa/pipeline.hpp"

#include "voa/errors.hpp"
#include "voa/serialize.hpp"

#include "json.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

namespace voa {

using nlohmann::json;

int max_threads_from_env()
{
    const char* raw = std::getenv("VOA_THREADS");
    if (!raw || *raw == '\0')
        return 0;
    int value = 0;
    const auto res = std::from_chars(raw, raw + std::string_view(raw).size(), value);
    if (res.ec != std::errc() || *res.ptr != '\0' || value < 0)
        throw InputError("VOA_THREADS must be a nonnegative integer");
    return value;
}

namespace {

std::vector<WeightedPose> scored_belief(const Belief& belief,
                                        std::span<const std::string> score_ids)
{
    std::vector<WeightedPose> out;
    out.reserve(belief.size());
    for (std::size_t i = 0; i < belief.size(); ++i)
        out.push_back({score_ids[i], belief.weights[i]});
    return out;
}

// Best grasp when the pose is known: delta belief on its grasp-table row.
std::string best_grasp_at(const GraspScoreTable& table, const std::string& score_id)
{
    const std::size_t rows[1] = {table.pose_index(score_id)};
    const double weights[1] = {1.0};
    return table.grasp_ids()[best_grasp_rows(table, rows, weights)];
}

std::vector<EvalRow> evaluate_interventions(const Scenario& scenario, const Belief& belief,
                                            const std::vector<std::string>& score_ids,
                                            const VoaResult& voa,
                                            const PrecomputedObservations& cache,
                                            const std::optional<std::string>& truth_pose)
{
    const GraspScoreTable& table = *scenario.grasp_table;
    const auto weighted = scored_belief(belief, score_ids);
    const std::size_t n_configs = scenario.sensors.size();
    const std::size_t selected_index = scenario.sensors.index_of(voa.selected);

    std::vector<std::size_t> truth_indices;
    if (truth_pose)
        truth_indices.push_back(belief.index_of(*truth_pose));
    else
        for (std::size_t i = 0; i < belief.size(); ++i)
            truth_indices.push_back(i);

    std::vector<EvalRow> rows;
    // delta*[config][truth group] for the mean rows.
    std::vector<std::vector<Ratio>> stars(n_configs);
    std::vector<std::vector<double>> deltas(n_configs);

    for (const std::size_t t : truth_indices) {
        std::vector<EvalRow> group;
        std::vector<Ratio> group_stars;
        const std::string g_best = best_grasp_at(table, score_ids[t]);
        for (std::size_t c = 0; c < n_configs; ++c) {
            // The realized observation at the true pose is the predicted one;
            // the actor reacts to it with a Bayes update.
            std::vector<double> factors(belief.size());
            for (std::size_t j = 0; j < belief.size(); ++j)
                factors[j] = cache.matrices[c].at(j, t);
            const Belief posterior = reweighted(belief, factors);
            const std::string g_final =
                maximal_grasp(table, scored_belief(posterior, score_ids)).grasp_id;

            EvalRow row;
            row.config_id = scenario.sensors.ids[c];
            row.truth_pose = belief.ids[t];
            row.grasp_initial = voa.baseline_grasp;
            row.grasp_final = g_final;
            row.grasp_best = g_best;
            row.metrics =
                intervention_metrics(table, weighted, voa.baseline_grasp, g_final, g_best);
            row.selected = c == selected_index;
            group.push_back(std::move(row));
            group_stars.push_back(group.back().metrics.delta_star);
            deltas[c].push_back(group.back().metrics.delta);
            stars[c].push_back(group.back().metrics.delta_star);
        }
        const Ratio adv = advantage(group_stars[selected_index], group_stars);
        for (auto& row : group) {
            row.advantage = adv;
            rows.push_back(std::move(row));
        }
    }

    if (!truth_pose) {
        // Helper-weighted averages over the per-pose rows; undefined delta*
        // entries are skipped and the weights renormalized over defined ones.
        std::vector<Ratio> mean_stars(n_configs);
        std::vector<double> mean_deltas(n_configs, 0.0);
        for (std::size_t c = 0; c < n_configs; ++c) {
            double star_sum = 0.0, star_weight = 0.0;
            for (std::size_t k = 0; k < truth_indices.size(); ++k) {
                const double w = belief.weights[truth_indices[k]];
                mean_deltas[c] += w * deltas[c][k];
                if (stars[c][k].defined) {
                    star_sum += w * stars[c][k].value;
                    star_weight += w;
                }
            }
            if (star_weight > 0.0)
                mean_stars[c] = {star_sum / star_weight, true};
        }
        const Ratio adv = advantage(mean_stars[selected_index], mean_stars);
        for (std::size_t c = 0; c < n_configs; ++c) {
            EvalRow row;
            row.config_id = scenario.sensors.ids[c];
            row.truth_pose = "__mean__";
            row.grasp_initial = voa.baseline_grasp;
            row.metrics.delta = mean_deltas[c];
            row.metrics.delta_star = mean_stars[c];
            row.advantage = adv;
            row.selected = c == selected_index;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace

RunResult run_scenario(const Scenario& scenario, const std::optional<std::string>& truth_pose,
                       const std::optional<std::filesystem::path>& out_dir)
{
    RunResult result;
    RandomStream pose_rng(scenario.seed, "pose-sampling");
    result.belief = sample_pose_set(scenario.belief_model, scenario.sample_count, pose_rng);

    result.score_ids.reserve(result.belief.size());
    for (const auto& pose : result.belief.poses)
        result.score_ids.push_back(pose.category);

    const MeshObservationPredictor predictor(scenario.mesh, scenario.catalog);
    const PrecomputedObservations cache =
        precompute(result.belief, scenario.sensors, predictor, &scenario.metric);

    result.voa = select_config(scenario.sensors, result.belief, result.belief,
                               *scenario.grasp_table, result.score_ids, scenario.metric, predictor,
                               &cache, {}, max_threads_from_env());

    result.eval_rows = evaluate_interventions(scenario, result.belief, result.score_ids,
                                              result.voa, cache, truth_pose);

    if (out_dir) {
        std::error_code ec;
        std::filesystem::create_directories(*out_dir, ec);
        if (ec)
            throw InputError("cannot create output directory '" + out_dir->string() + "'");
        const auto emit = [&](const std::string& name, const std::string& text) {
            const auto path = *out_dir / name;
            write_text_file(path, text);
            result.artifacts.push_back(path);
        };
        emit("voa-report.json", voa_report_json(scenario, result));
        emit("voa-values.csv", voa_values_csv(result));
        emit("eval-report.csv", eval_report_csv(scenario, result));
        for (std::size_t c = 0; c < scenario.sensors.size(); ++c)
            emit("simmat-" + scenario.sensors.ids[c] + ".csv", to_csv(cache.matrices[c]));
        emit("obs-cache.json", observation_cache_to_json(cache));
        emit("belief.json", belief_to_json(result.belief));
    }
    return result;
}

std::string voa_report_json(const Scenario& scenario, const RunResult& result)
{
    json root;
    root["schema"] = "voa-report/1";
    root["object"] = scenario.object_name;
    root["metric"] = metric_name(scenario.metric.kind);
    root["seed"] = scenario.seed;
    root["baseline"] = {{"grasp", result.voa.baseline_grasp},
                        {"expected_score", result.voa.baseline}};
    root["selected"] = result.voa.selected;
    json configs = json::array();
    for (const auto& cfg : result.voa.configs) {
        json entry;
        entry["id"] = cfg.id;
        entry["voa"] = cfg.voa;
        json per_pose = json::array();
        for (const auto& pp : cfg.per_pose)
            per_pose.push_back({{"pose", pp.pose_id}, {"grasp", pp.grasp_id}, {"score", pp.score}});
        entry["per_pose"] = std::move(per_pose);
        configs.push_back(std::move(entry));
    }
    root["configs"] = std::move(configs);
    return root.dump(2) + "\n";
}

std::string voa_values_csv(const RunResult& result)
{
    std::ostringstream out;
    out << "config,voa\n";
    for (const auto& cfg : result.voa.configs)
        out << cfg.id << ',' << format_double(cfg.voa) << '\n';
    return out.str();
}

std::string eval_report_csv(const Scenario& scenario, const RunResult& result)
{
    std::ostringstream out;
    out << "object,metric,config,truth_pose,grasp_initial,grasp_final,grasp_best,delta,"
           "delta_star,delta_star_defined,advantage,advantage_defined,selected\n";
    for (const auto& row : result.eval_rows) {
        out << scenario.object_name << ',' << metric_name(scenario.metric.kind) << ','
            << row.config_id << ',' << row.truth_pose << ',' << row.grasp_initial << ','
            << row.grasp_final << ',' << row.grasp_best << ',' << format_double(row.metrics.delta)
            << ',';
        if (row.metrics.delta_star.defined)
            out << format_double(row.metrics.delta_star.value) << ",1,";
        else
            out << ",0,";
        if (row.advantage.defined)
            out << format_double(row.advantage.value) << ",1,";
        else
            out << ",0,";
        out << (row.selected ? '1' : '0') << '\n';
    }
    return out.str();
}

} // namespace voa
