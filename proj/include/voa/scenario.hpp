#pragma once

#include "voa/belief.hpp"
#include "voa/grasp.hpp"
#include "voa/similarity.hpp"
#include "voa/voa.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace voa {

// Everything one run needs, loaded from a strict, versioned JSON file
// (schema "voa-scenario/1"; unknown keys are rejected so typos fail fast).
struct Scenario {
    std::string object_name;
    std::filesystem::path mesh_path;
    TriangleMesh mesh;
    StablePoseCatalog catalog;
    InitialBeliefModel belief_model;
    std::filesystem::path grasp_table_path;
    std::shared_ptr<GraspScoreTable> grasp_table;
    SensorConfigSet sensors;
    SimilarityMetric metric;
    int sample_count = 1;
    std::uint64_t seed = 0;
    std::optional<CameraRankingParams> camera_ranking;
};

Scenario load_scenario(const std::filesystem::path& path);

bool sensors_are_lidar(const Scenario& scenario);

} // namespace voa
