#pragma once

#include "voa/geometry.hpp"
#include "voa/pose.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace voa {

// Planar lidar with fixed 1-degree angular resolution (360 cells). Cells
// outside the field of view, or with no return within max_range, hold the
// max_range sentinel so vector metrics stay finite.
struct LidarConfig {
    Eigen::Vector2d position = Eigen::Vector2d::Zero(); // on the sensing plane, m
    double plane_z = 0.0;                               // sensing plane height, m
    double yaw_rad = 0.0;                               // FoV center bearing, world frame
    double fov_deg = 360.0;                             // 0 < fov <= 360
    double max_range = 2.0;                             // m, > 0
};

void validate_lidar(const LidarConfig& config);

struct CameraConfig {
    CameraModel model;
};

void validate_camera_config(const CameraConfig& config);

struct LidarScan {
    std::array<double, 360> ranges{}; // ranges[i] is the return at world bearing i degrees
    double max_range = 0.0;           // sentinel value used for no-return cells
};

struct DepthImage {
    int width = 0;
    int height = 0;
    std::vector<double> values; // row-major, meters; background pixels hold 0

    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
};

struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> values; // row-major, 1 = object

    int area() const;
};

using Observation = std::variant<LidarScan, DepthImage>;

// Throws InputError when the two observations differ in kind or dimensions.
void check_compatible(const Observation& a, const Observation& b);

// Flat read-only view of the observation values (360 ranges or width*height
// depths); used by the elementwise similarity metrics.
std::span<const double> observation_values(const Observation& obs);

// Nearest mesh intersection per integer-degree bearing on the sensing plane.
// Deterministic: identical inputs give bit-identical scans.
LidarScan lidar_scan(const TriangleMesh& placed_mesh, const LidarConfig& config);
LidarScan predict_lidar(const TriangleMesh& mesh, const Pose& pose,
                        const StablePoseCatalog& catalog, const LidarConfig& config);

// Software depth buffer: every placed triangle is rasterized and each covered
// pixel keeps the minimum depth. A pixel is covered iff its center lies
// inside the projected triangle (boundary included via kBarycentricEps).
DepthImage depth_render(const TriangleMesh& placed_mesh, const CameraModel& camera);
DepthImage predict_depth(const TriangleMesh& mesh, const Pose& pose,
                         const StablePoseCatalog& catalog, const CameraConfig& config);

// Pixel is object iff depth > 0.
Mask mask_from_depth(const DepthImage& image);

// Optional stochastic-sensor wrapper: adds zero-mean Gaussian noise to cells
// that carry a return. Lidar cells are clamped to [0, max_range]; depth
// foreground pixels stay strictly positive so the mask is unchanged.
// Deterministic for a given seed.
Observation add_gaussian_noise(const Observation& obs, double stddev, std::uint64_t seed);

using SensorConfigVariant = std::variant<LidarConfig, CameraConfig>;

void validate_sensor_config(const SensorConfigVariant& config);

// The deterministic predicted sensor function f(pose, config). Implemented by
// the mesh-backed simulators below; tests substitute instrumented or
// synthetic predictors through the same interface.
class ObservationPredictor {
public:
    virtual ~ObservationPredictor() = default;
    virtual Observation predict(const Pose& pose, const SensorConfigVariant& config) const = 0;
};

class MeshObservationPredictor final : public ObservationPredictor {
public:
    MeshObservationPredictor(TriangleMesh mesh, StablePoseCatalog catalog);

    Observation predict(const Pose& pose, const SensorConfigVariant& config) const override;

private:
    TriangleMesh mesh_;
    StablePoseCatalog catalog_;
};

} // namespace voa
