#include "voa/geometry.hpp"

#include "voa/errors.hpp"

#include <cmath>
#include <string>

namespace voa {

void validate_mesh(const TriangleMesh& mesh)
{
    if (mesh.faces.empty())
        throw InputError("mesh has no faces");
    const int n = static_cast<int>(mesh.vertices.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        for (int idx : mesh.faces[f]) {
            if (idx < 0 || idx >= n)
                throw InputError("mesh face " + std::to_string(f) + " references vertex " +
                                 std::to_string(idx) + " but mesh has " + std::to_string(n) +
                                 " vertices");
        }
    }
}

bool is_rigid(const RigidPlacement& placement, double tol)
{
    const Eigen::Matrix3d& r = placement.rotation;
    const Eigen::Matrix3d gram = r.transpose() * r;
    if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tol)
        return false;
    return std::abs(r.determinant() - 1.0) <= tol;
}

void validate_placement(const RigidPlacement& placement)
{
    if (!is_rigid(placement))
        throw InputError("placement rotation is not orthonormal with determinant +1");
}

Eigen::Vector3d apply(const RigidPlacement& placement, const Eigen::Vector3d& point)
{
    return placement.rotation * point + placement.translation;
}

RigidPlacement compose(const RigidPlacement& outer, const RigidPlacement& inner)
{
    RigidPlacement out;
    out.rotation = outer.rotation * inner.rotation;
    out.translation = outer.rotation * inner.translation + outer.translation;
    return out;
}

Eigen::Matrix3d rotation_z(double yaw_rad)
{
    const double c = std::cos(yaw_rad);
    const double s = std::sin(yaw_rad);
    Eigen::Matrix3d r;
    r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
    return r;
}

Eigen::Matrix3d rotation_rpy(double roll, double pitch, double yaw)
{
    const Eigen::Matrix3d rx = Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX()).toRotationMatrix();
    const Eigen::Matrix3d ry = Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()).toRotationMatrix();
    const Eigen::Matrix3d rz = Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    return rz * ry * rx;
}

TriangleMesh place_mesh(const TriangleMesh& mesh, const RigidPlacement& placement)
{
    TriangleMesh out;
    out.vertices.reserve(mesh.vertices.size());
    for (const auto& v : mesh.vertices)
        out.vertices.push_back(placement.rotation * v + placement.translation);
    out.faces = mesh.faces;
    return out;
}

std::optional<double> ray_triangle_hit(const Ray& ray, const Eigen::Vector3d& v0,
                                       const Eigen::Vector3d& v1, const Eigen::Vector3d& v2)
{
    // Moller-Trumbore. det == 0 covers both degenerate triangles and rays
    // parallel to the triangle plane; neither produces a hit.
    const Eigen::Vector3d e1 = v1 - v0;
    const Eigen::Vector3d e2 = v2 - v0;
    const Eigen::Vector3d p = ray.direction.cross(e2);
    const double det = e1.dot(p);
    if (det == 0.0)
        return std::nullopt;
    const double inv_det = 1.0 / det;
    const Eigen::Vector3d s = ray.origin - v0;
    const double u = s.dot(p) * inv_det;
    if (u < -kBarycentricEps)
        return std::nullopt;
    const Eigen::Vector3d q = s.cross(e1);
    const double v = ray.direction.dot(q) * inv_det;
    if (v < -kBarycentricEps || u + v > 1.0 + kBarycentricEps)
        return std::nullopt;
    const double t = e2.dot(q) * inv_det;
    if (t < 0.0)
        return std::nullopt;
    return t;
}

void validate_ray(const Ray& ray)
{
    if (std::abs(ray.direction.norm() - 1.0) > 1e-12)
        throw InputError("ray direction must be a unit vector");
}

std::optional<double> ray_mesh_nearest_hit(const Ray& ray, const TriangleMesh& mesh)
{
    validate_ray(ray);
    std::optional<double> best;
    for (const auto& f : mesh.faces) {
        const auto t = ray_triangle_hit(ray, mesh.vertices[f[0]], mesh.vertices[f[1]],
                                        mesh.vertices[f[2]]);
        if (t && (!best || *t < *best))
            best = t;
    }
    return best;
}

void validate_camera(const CameraModel& camera)
{
    if (camera.fx <= 0.0 || camera.fy <= 0.0)
        throw InputError("camera focal lengths must be positive");
    if (camera.width <= 0 || camera.height <= 0)
        throw InputError("camera image dimensions must be positive");
    validate_placement(camera.pose);
}

std::optional<ImagePoint> project_point_unbounded(const Eigen::Vector3d& point,
                                                  const CameraModel& camera)
{
    const Eigen::Vector3d local =
        camera.pose.rotation.transpose() * (point - camera.pose.translation);
    if (local.z() <= 0.0)
        return std::nullopt;
    ImagePoint out;
    out.col = camera.fx * (local.x() / local.z()) + camera.cx;
    out.row = camera.fy * (local.y() / local.z()) + camera.cy;
    out.depth = local.z();
    return out;
}

std::optional<ImagePoint> project_point(const Eigen::Vector3d& point, const CameraModel& camera)
{
    auto p = project_point_unbounded(point, camera);
    if (!p)
        return std::nullopt;
    if (p->col < 0.0 || p->col >= camera.width || p->row < 0.0 || p->row >= camera.height)
        return std::nullopt;
    return p;
}

} // namespace voa
