#pragma once

#include "voa/sensors.hpp"

#include <span>
#include <string>
#include <vector>

namespace voa {

enum class MetricKind {
    margin_deterministic,   // 1 iff every cell differs by at most `margin`
    exp_neg_norm,           // exp(-||a - b||_2)
    gaussian_likelihood,    // exp(-||a - b||^2 / (2 sigma^2))
    windowed_ssim_structure, // mean windowed SSIM structure term, mapped to [0,1]
    mask_iou,               // IoU of the object masks; 1 when both empty
    moment_shape_match,     // exp(-L1 distance of normalized mask moments)
};

const char* metric_name(MetricKind kind);
MetricKind metric_from_name(const std::string& name);

// True for the metrics that operate on object masks and therefore require
// depth-image observations.
bool metric_needs_depth(MetricKind kind);

struct SimilarityMetric {
    MetricKind kind = MetricKind::exp_neg_norm;

    double margin = 0.008; // margin_deterministic, same units as the observation
    double sigma = 1.0;    // gaussian_likelihood

    // windowed_ssim_structure: square windows of `window` pixels with the
    // given stride (clipped at image borders); values are divided by
    // value_scale before the window statistics.
    int window = 8;
    int stride = 8;
    double c2 = 1e-4;
    double value_scale = 1.0;
};

void validate_metric(const SimilarityMetric& metric);

// Similarity score in [0, 1], symmetric in (a, b). Throws InputError on
// kind/dimension mismatch or when a mask metric is given lidar scans.
double similarity(const SimilarityMetric& metric, const Observation& a, const Observation& b);

struct SimilarityMatrix {
    std::vector<std::string> ids;
    std::vector<double> values; // row-major, ids.size() x ids.size()

    std::size_t size() const { return ids.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * ids.size() + j]; }
};

// values[i][j] = similarity(observations[i], observations[j]).
SimilarityMatrix similarity_matrix(const SimilarityMetric& metric,
                                   std::span<const Observation> observations,
                                   std::vector<std::string> ids);

} // namespace voa
