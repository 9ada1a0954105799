#include "voa/sensors.hpp"

#include "voa/errors.hpp"
#include "voa/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace voa {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Circular distance between two bearings in degrees, result in [0, 180].
double bearing_distance_deg(double a, double b)
{
    double d = std::fmod(a - b, 360.0);
    if (d < -180.0)
        d += 360.0;
    if (d > 180.0)
        d -= 360.0;
    return std::abs(d);
}

} // namespace

void validate_lidar(const LidarConfig& config)
{
    if (config.max_range <= 0.0)
        throw InputError("lidar max_range must be positive");
    if (!(config.fov_deg > 0.0) || config.fov_deg > 360.0)
        throw InputError("lidar fov_deg must be in (0, 360]");
}

void validate_camera_config(const CameraConfig& config)
{
    validate_camera(config.model);
}

void validate_sensor_config(const SensorConfigVariant& config)
{
    if (std::holds_alternative<LidarConfig>(config))
        validate_lidar(std::get<LidarConfig>(config));
    else
        validate_camera_config(std::get<CameraConfig>(config));
}

int Mask::area() const
{
    int n = 0;
    for (auto v : values)
        n += v ? 1 : 0;
    return n;
}

void check_compatible(const Observation& a, const Observation& b)
{
    if (a.index() != b.index())
        throw InputError("observations differ in kind (lidar scan vs depth image)");
    if (std::holds_alternative<DepthImage>(a)) {
        const auto& ia = std::get<DepthImage>(a);
        const auto& ib = std::get<DepthImage>(b);
        if (ia.width != ib.width || ia.height != ib.height)
            throw InputError("depth images differ in dimensions (" + std::to_string(ia.width) +
                             "x" + std::to_string(ia.height) + " vs " + std::to_string(ib.width) +
                             "x" + std::to_string(ib.height) + ")");
    }
}

std::span<const double> observation_values(const Observation& obs)
{
    if (std::holds_alternative<LidarScan>(obs)) {
        const auto& scan = std::get<LidarScan>(obs);
        return {scan.ranges.data(), scan.ranges.size()};
    }
    const auto& image = std::get<DepthImage>(obs);
    return {image.values.data(), image.values.size()};
}

LidarScan lidar_scan(const TriangleMesh& placed_mesh, const LidarConfig& config)
{
    LidarScan scan;
    scan.max_range = config.max_range;
    scan.ranges.fill(config.max_range);
    const double yaw_deg = config.yaw_rad / kDegToRad;
    const double half_fov = config.fov_deg / 2.0;
    for (int deg = 0; deg < 360; ++deg) {
        if (bearing_distance_deg(static_cast<double>(deg), yaw_deg) > half_fov)
            continue;
        Ray ray;
        ray.origin = Eigen::Vector3d(config.position.x(), config.position.y(), config.plane_z);
        const double bearing = deg * kDegToRad;
        ray.direction = Eigen::Vector3d(std::cos(bearing), std::sin(bearing), 0.0);
        const auto hit = ray_mesh_nearest_hit(ray, placed_mesh);
        if (hit && *hit <= config.max_range)
            scan.ranges[deg] = *hit;
    }
    return scan;
}

LidarScan predict_lidar(const TriangleMesh& mesh, const Pose& pose,
                        const StablePoseCatalog& catalog, const LidarConfig& config)
{
    return lidar_scan(place_mesh(mesh, resolve_placement(catalog, pose)), config);
}

DepthImage depth_render(const TriangleMesh& placed_mesh, const CameraModel& camera)
{
    DepthImage image;
    image.width = camera.width;
    image.height = camera.height;
    image.values.assign(static_cast<std::size_t>(camera.width) * camera.height, 0.0);

    const Eigen::Matrix3d world_to_cam = camera.pose.rotation.transpose();
    for (const auto& face : placed_mesh.faces) {
        Eigen::Vector3d local[3];
        bool in_front = true;
        for (int i = 0; i < 3; ++i) {
            local[i] = world_to_cam * (placed_mesh.vertices[face[i]] - camera.pose.translation);
            if (local[i].z() <= 1e-9)
                in_front = false;
        }
        if (!in_front)
            continue; // no near-plane clipping; triangles must lie in front of the camera

        double u[3], v[3], inv_z[3];
        for (int i = 0; i < 3; ++i) {
            inv_z[i] = 1.0 / local[i].z();
            u[i] = camera.fx * (local[i].x() * inv_z[i]) + camera.cx;
            v[i] = camera.fy * (local[i].y() * inv_z[i]) + camera.cy;
        }

        const double den = (u[1] - u[0]) * (v[2] - v[0]) - (u[2] - u[0]) * (v[1] - v[0]);
        if (den == 0.0)
            continue; // degenerate in screen space

        const double min_u = std::min({u[0], u[1], u[2]});
        const double max_u = std::max({u[0], u[1], u[2]});
        const double min_v = std::min({v[0], v[1], v[2]});
        const double max_v = std::max({v[0], v[1], v[2]});
        const int col_lo = std::max(0, static_cast<int>(std::floor(min_u - 0.5)));
        const int col_hi = std::min(camera.width - 1, static_cast<int>(std::ceil(max_u - 0.5)));
        const int row_lo = std::max(0, static_cast<int>(std::floor(min_v - 0.5)));
        const int row_hi = std::min(camera.height - 1, static_cast<int>(std::ceil(max_v - 0.5)));

        for (int row = row_lo; row <= row_hi; ++row) {
            const double py = row + 0.5;
            for (int col = col_lo; col <= col_hi; ++col) {
                const double px = col + 0.5;
                const double l1 =
                    ((px - u[0]) * (v[2] - v[0]) - (u[2] - u[0]) * (py - v[0])) / den;
                const double l2 =
                    ((u[1] - u[0]) * (py - v[0]) - (px - u[0]) * (v[1] - v[0])) / den;
                const double l0 = 1.0 - l1 - l2;
                if (l0 < -kBarycentricEps || l1 < -kBarycentricEps || l2 < -kBarycentricEps)
                    continue;
                // Perspective-correct depth: 1/z is affine in screen space.
                const double z = 1.0 / (l0 * inv_z[0] + l1 * inv_z[1] + l2 * inv_z[2]);
                double& cell = image.at(row, col);
                if (cell == 0.0 || z < cell)
                    cell = z;
            }
        }
    }
    return image;
}

DepthImage predict_depth(const TriangleMesh& mesh, const Pose& pose,
                         const StablePoseCatalog& catalog, const CameraConfig& config)
{
    return depth_render(place_mesh(mesh, resolve_placement(catalog, pose)), config.model);
}

Mask mask_from_depth(const DepthImage& image)
{
    Mask mask;
    mask.width = image.width;
    mask.height = image.height;
    mask.values.resize(image.values.size());
    for (std::size_t i = 0; i < image.values.size(); ++i)
        mask.values[i] = image.values[i] > 0.0 ? 1 : 0;
    return mask;
}

Observation add_gaussian_noise(const Observation& obs, double stddev, std::uint64_t seed)
{
    if (stddev < 0.0)
        throw InputError("noise stddev must be nonnegative");
    RandomStream rng(seed, "sensor-noise");
    Observation out = obs;
    if (std::holds_alternative<LidarScan>(out)) {
        auto& scan = std::get<LidarScan>(out);
        for (auto& r : scan.ranges) {
            if (r >= scan.max_range)
                continue; // no-return cells stay at the sentinel
            r = std::clamp(r + stddev * rng.normal(), 0.0, scan.max_range);
        }
    } else {
        auto& image = std::get<DepthImage>(out);
        for (auto& d : image.values) {
            if (d <= 0.0)
                continue; // background stays background
            d = std::max(d + stddev * rng.normal(), 1e-9);
        }
    }
    return out;
}

MeshObservationPredictor::MeshObservationPredictor(TriangleMesh mesh, StablePoseCatalog catalog)
    : mesh_(std::move(mesh)), catalog_(std::move(catalog))
{
    validate_mesh(mesh_);
}

Observation MeshObservationPredictor::predict(const Pose& pose,
                                              const SensorConfigVariant& config) const
{
    if (std::holds_alternative<LidarConfig>(config))
        return predict_lidar(mesh_, pose, catalog_, std::get<LidarConfig>(config));
    return predict_depth(mesh_, pose, catalog_, std::get<CameraConfig>(config));
}

} // namespace voa
