#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <vector>

namespace voa {

// Boundary tolerance for barycentric inclusion tests. Hits exactly on an
// edge or vertex count as hits, so grazing rays behave deterministically.
inline constexpr double kBarycentricEps = 1e-12;

struct TriangleMesh {
    std::vector<Eigen::Vector3d> vertices; // meters
    std::vector<std::array<int, 3>> faces; // indices into vertices
};

// Throws InputError when the mesh has no faces or a face index is out of range.
void validate_mesh(const TriangleMesh& mesh);

// Proper rigid transform: rotation orthonormal with determinant +1 (1e-9).
struct RigidPlacement {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();
};

bool is_rigid(const RigidPlacement& placement, double tol = 1e-9);
void validate_placement(const RigidPlacement& placement);

Eigen::Vector3d apply(const RigidPlacement& placement, const Eigen::Vector3d& point);

// outer ∘ inner: apply(inner) first, then apply(outer).
RigidPlacement compose(const RigidPlacement& outer, const RigidPlacement& inner);

Eigen::Matrix3d rotation_z(double yaw_rad);
// Rz(yaw) * Ry(pitch) * Rx(roll), angles in radians.
Eigen::Matrix3d rotation_rpy(double roll, double pitch, double yaw);

struct Ray {
    Eigen::Vector3d origin;
    Eigen::Vector3d direction; // unit length within 1e-12
};

void validate_ray(const Ray& ray);

TriangleMesh place_mesh(const TriangleMesh& mesh, const RigidPlacement& placement);

// Smallest nonnegative ray parameter at which the ray meets the triangle,
// boundary included. Degenerate (zero-area) triangles never hit.
std::optional<double> ray_triangle_hit(const Ray& ray, const Eigen::Vector3d& v0,
                                       const Eigen::Vector3d& v1, const Eigen::Vector3d& v2);

// Minimum hit distance over all faces; empty when no face is hit.
std::optional<double> ray_mesh_nearest_hit(const Ray& ray, const TriangleMesh& mesh);

// Pinhole camera. `pose` maps camera coordinates to world coordinates; the
// camera looks along its +z axis, +x is image-right (columns), +y is
// image-down (rows).
struct CameraModel {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    int width = 0;
    int height = 0;
    RigidPlacement pose;
};

void validate_camera(const CameraModel& camera);

// Continuous image coordinates. Pixel (r, c) covers [c, c+1) x [r, r+1)
// with its center at (c + 0.5, r + 0.5).
struct ImagePoint {
    double row = 0.0;
    double col = 0.0;
    double depth = 0.0; // z-distance in camera frame, meters
};

// Projection without the image-bounds test; empty only when the point is on
// or behind the image plane.
std::optional<ImagePoint> project_point_unbounded(const Eigen::Vector3d& point,
                                                  const CameraModel& camera);

// Empty when the point is behind the image plane or lands outside
// [0, width) x [0, height).
std::optional<ImagePoint> project_point(const Eigen::Vector3d& point, const CameraModel& camera);

} // namespace voa
