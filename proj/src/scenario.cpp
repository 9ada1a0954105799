#include "voa/scenario.hpp"

#include "voa/errors.hpp"
#include "voa/mesh_io.hpp"
#include "voa/serialize.hpp"

#include "json.hpp"

#include <numbers>
#include <set>

namespace voa {

using nlohmann::json;

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

[[noreturn]] void fail(const std::string& context, const std::string& what)
{
    throw InputError("scenario: " + context + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context)
{
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key))
            fail(context, "unknown key '" + key + "'");
}

const json& require(const json& obj, const std::string& key, const std::string& context)
{
    if (!obj.contains(key))
        fail(context, "missing key '" + key + "'");
    return obj.at(key);
}

double require_number(const json& obj, const std::string& key, const std::string& context)
{
    const json& v = require(obj, key, context);
    if (!v.is_number())
        fail(context, "key '" + key + "' must be a number");
    return v.get<double>();
}

std::string require_string(const json& obj, const std::string& key, const std::string& context)
{
    const json& v = require(obj, key, context);
    if (!v.is_string())
        fail(context, "key '" + key + "' must be a string");
    return v.get<std::string>();
}

Eigen::Vector3d parse_vec3(const json& v, const std::string& context)
{
    if (!v.is_array() || v.size() != 3 || !v[0].is_number())
        fail(context, "expected [x, y, z]");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

Eigen::Vector2d parse_vec2(const json& v, const std::string& context)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number())
        fail(context, "expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

RigidPlacement parse_placement(const json& obj, const std::string& context)
{
    reject_unknown_keys(obj, {"rotation_rpy_deg", "translation"}, context);
    RigidPlacement placement;
    if (obj.contains("rotation_rpy_deg")) {
        const Eigen::Vector3d rpy = parse_vec3(obj.at("rotation_rpy_deg"), context);
        placement.rotation =
            rotation_rpy(rpy.x() * kDegToRad, rpy.y() * kDegToRad, rpy.z() * kDegToRad);
    }
    if (obj.contains("translation"))
        placement.translation = parse_vec3(obj.at("translation"), context);
    return placement;
}

CameraModel parse_camera(const json& obj, const std::string& context)
{
    reject_unknown_keys(obj,
                        {"id", "width", "height", "fx", "fy", "cx", "cy", "position", "look_at",
                         "up"},
                        context);
    CameraModel cam;
    cam.width = static_cast<int>(require_number(obj, "width", context));
    cam.height = static_cast<int>(require_number(obj, "height", context));
    cam.fx = require_number(obj, "fx", context);
    cam.fy = require_number(obj, "fy", context);
    cam.cx = require_number(obj, "cx", context);
    cam.cy = require_number(obj, "cy", context);
    cam.pose.translation = parse_vec3(require(obj, "position", context), context + ".position");
    const Eigen::Vector3d target =
        parse_vec3(require(obj, "look_at", context), context + ".look_at");
    Eigen::Vector3d up(0.0, 0.0, 1.0);
    if (obj.contains("up"))
        up = parse_vec3(obj.at("up"), context + ".up");

    // Camera basis: +z forward, +x image-right, +y image-down.
    const Eigen::Vector3d forward = target - cam.pose.translation;
    if (forward.norm() == 0.0)
        fail(context, "look_at coincides with position");
    const Eigen::Vector3d z = forward.normalized();
    Eigen::Vector3d x = z.cross(up);
    if (x.norm() < 1e-12)
        fail(context, "camera forward direction is parallel to its up hint");
    x.normalize();
    const Eigen::Vector3d y = z.cross(x);
    cam.pose.rotation.col(0) = x;
    cam.pose.rotation.col(1) = y;
    cam.pose.rotation.col(2) = z;
    validate_camera(cam);
    return cam;
}

SimilarityMetric parse_metric(const json& obj, const std::string& context)
{
    reject_unknown_keys(
        obj, {"metric", "margin", "sigma", "window", "stride", "c2", "value_scale"}, context);
    SimilarityMetric metric;
    metric.kind = metric_from_name(require_string(obj, "metric", context));
    if (obj.contains("margin"))
        metric.margin = obj.at("margin").get<double>();
    if (obj.contains("sigma"))
        metric.sigma = obj.at("sigma").get<double>();
    if (obj.contains("window"))
        metric.window = obj.at("window").get<int>();
    if (obj.contains("stride"))
        metric.stride = obj.at("stride").get<int>();
    if (obj.contains("c2"))
        metric.c2 = obj.at("c2").get<double>();
    if (obj.contains("value_scale"))
        metric.value_scale = obj.at("value_scale").get<double>();
    validate_metric(metric);
    return metric;
}

} // namespace

bool sensors_are_lidar(const Scenario& scenario)
{
    return std::holds_alternative<LidarConfig>(scenario.sensors.configs[0]);
}

Scenario load_scenario(const std::filesystem::path& path)
{
    json root;
    try {
        root = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw InputError("scenario '" + path.string() + "' is not valid JSON: " + e.what());
    }
    const std::filesystem::path base = path.parent_path();

    reject_unknown_keys(root,
                        {"schema", "object", "mesh", "stable_poses", "initial_belief",
                         "grasp_scores", "sensor", "similarity", "sample_count", "seed",
                         "camera_ranking"},
                        "top level");
    if (root.value("schema", "") != "voa-scenario/1")
        throw InputError("scenario: schema must be \"voa-scenario/1\"");

    Scenario scenario;
    scenario.object_name = require_string(root, "object", "top level");
    scenario.mesh_path = base / require_string(root, "mesh", "top level");
    scenario.mesh = load_obj_file(scenario.mesh_path);

    const json& poses = require(root, "stable_poses", "top level");
    if (!poses.is_object() || poses.empty())
        throw InputError("scenario: stable_poses must name at least one category");
    for (const auto& [category, placement] : poses.items()) {
        scenario.catalog.entries.emplace_back(
            category, parse_placement(placement, "stable_poses." + category));
        validate_placement(scenario.catalog.entries.back().second);
    }

    {
        const json& belief = require(root, "initial_belief", "top level");
        const std::string ctx = "initial_belief";
        reject_unknown_keys(belief,
                            {"category_prior", "theta_mean_rad", "theta_kappa", "position_mean",
                             "position_cov"},
                            ctx);
        const json& prior = require(belief, "category_prior", ctx);
        for (const auto& [category, mass] : prior.items()) {
            if (!scenario.catalog.has(category))
                fail(ctx, "category '" + category + "' has no stable_poses entry");
            scenario.belief_model.category_prior.emplace_back(category, mass.get<double>());
        }
        for (const auto& [category, placement] : scenario.catalog.entries)
            if (!prior.contains(category))
                fail(ctx, "missing prior mass for category '" + category + "'");
        scenario.belief_model.theta_mean = require_number(belief, "theta_mean_rad", ctx);
        scenario.belief_model.kappa = require_number(belief, "theta_kappa", ctx);
        scenario.belief_model.position_mean =
            parse_vec2(require(belief, "position_mean", ctx), ctx + ".position_mean");
        const json& cov = require(belief, "position_cov", ctx);
        if (!cov.is_array() || cov.size() != 2)
            fail(ctx, "position_cov must be a 2x2 matrix");
        scenario.belief_model.position_cov.row(0) =
            parse_vec2(cov[0], ctx + ".position_cov").transpose();
        scenario.belief_model.position_cov.row(1) =
            parse_vec2(cov[1], ctx + ".position_cov").transpose();
        validate_belief_model(scenario.belief_model);
    }

    scenario.grasp_table_path = base / require_string(root, "grasp_scores", "top level");
    scenario.grasp_table =
        std::make_shared<GraspScoreTable>(GraspScoreTable::from_csv_file(scenario.grasp_table_path));
    // Sampled poses are scored through their category, so every category
    // needs a grasp-table row.
    for (const auto& [category, placement] : scenario.catalog.entries)
        scenario.grasp_table->pose_index(category);

    {
        const json& sensor = require(root, "sensor", "top level");
        reject_unknown_keys(sensor, {"kind", "configs"}, "sensor");
        const std::string kind = require_string(sensor, "kind", "sensor");
        const json& configs = require(sensor, "configs", "sensor");
        if (!configs.is_array() || configs.empty())
            fail("sensor", "configs must be a nonempty list");
        for (const auto& cfg : configs) {
            const std::string id = require_string(cfg, "id", "sensor.configs");
            const std::string ctx = "sensor.configs." + id;
            if (kind == "lidar") {
                reject_unknown_keys(
                    cfg, {"id", "position", "plane_z", "yaw_deg", "fov_deg", "max_range"}, ctx);
                LidarConfig lidar;
                lidar.position = parse_vec2(require(cfg, "position", ctx), ctx + ".position");
                lidar.plane_z = require_number(cfg, "plane_z", ctx);
                lidar.yaw_rad = require_number(cfg, "yaw_deg", ctx) * kDegToRad;
                lidar.fov_deg = require_number(cfg, "fov_deg", ctx);
                lidar.max_range = require_number(cfg, "max_range", ctx);
                scenario.sensors.ids.push_back(id);
                scenario.sensors.configs.emplace_back(lidar);
            } else if (kind == "camera") {
                scenario.sensors.ids.push_back(id);
                scenario.sensors.configs.emplace_back(CameraConfig{parse_camera(cfg, ctx)});
            } else {
                fail("sensor", "kind must be \"lidar\" or \"camera\"");
            }
        }
        validate_config_set(scenario.sensors);
    }

    scenario.metric = parse_metric(require(root, "similarity", "top level"), "similarity");
    if (metric_needs_depth(scenario.metric.kind) && sensors_are_lidar(scenario))
        throw InputError(std::string("scenario: metric '") + metric_name(scenario.metric.kind) +
                         "' requires the camera sensor kind");

    scenario.sample_count = static_cast<int>(require_number(root, "sample_count", "top level"));
    if (scenario.sample_count < 1)
        throw InputError("scenario: sample_count must be at least 1");
    scenario.seed = static_cast<std::uint64_t>(require_number(root, "seed", "top level"));

    if (root.contains("camera_ranking")) {
        const json& rank = root.at("camera_ranking");
        reject_unknown_keys(rank, {"poi", "d_max", "r_ref"}, "camera_ranking");
        CameraRankingParams params;
        params.point_of_interest = parse_vec3(require(rank, "poi", "camera_ranking"),
                                              "camera_ranking.poi");
        params.d_max = require_number(rank, "d_max", "camera_ranking");
        params.r_ref = require_number(rank, "r_ref", "camera_ranking");
        if (params.d_max <= 0.0 || params.r_ref <= 0.0)
            fail("camera_ranking", "d_max and r_ref must be positive");
        scenario.camera_ranking = params;
    }

    return scenario;
}

} // namespace voa
