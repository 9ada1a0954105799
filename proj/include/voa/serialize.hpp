#pragma once

#include "voa/belief.hpp"
#include "voa/sensors.hpp"
#include "voa/similarity.hpp"
#include "voa/voa.hpp"

#include <filesystem>
#include <string>

namespace voa {

// Shortest decimal form that parses back to the same double, so every file
// we emit round-trips bit-exactly.
std::string format_double(double value);

std::string to_csv(const SimilarityMatrix& matrix);

// One value per line after an index header; lidar rows are bearing,range,
// depth rows are row,col,depth (zeros included).
std::string observation_to_csv(const Observation& obs);

// JSON container mapping (pose id, config id) to the predicted observation.
std::string observation_cache_to_json(const PrecomputedObservations& cache);
PrecomputedObservations observation_cache_from_json(const std::string& text);

// JSON list of {id, category, theta, x, y, weight}.
std::string belief_to_json(const Belief& belief);
Belief belief_from_json(const std::string& text);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

} // namespace voa
