#include "support/shapes.hpp"

#include <cmath>
#include <numbers>

namespace voa::testing {

TriangleMesh make_box(const Eigen::Vector3d& center, const Eigen::Vector3d& size)
{
    TriangleMesh mesh;
    const Eigen::Vector3d h = size / 2.0;
    for (int i = 0; i < 8; ++i) {
        mesh.vertices.emplace_back(center.x() + ((i & 1) ? h.x() : -h.x()),
                                   center.y() + ((i & 2) ? h.y() : -h.y()),
                                   center.z() + ((i & 4) ? h.z() : -h.z()));
    }
    const int quads[6][4] = {
        {0, 2, 3, 1}, // z-
        {4, 5, 7, 6}, // z+
        {0, 1, 5, 4}, // y-
        {2, 6, 7, 3}, // y+
        {0, 4, 6, 2}, // x-
        {1, 3, 7, 5}, // x+
    };
    for (const auto& q : quads) {
        mesh.faces.push_back({q[0], q[1], q[2]});
        mesh.faces.push_back({q[0], q[2], q[3]});
    }
    return mesh;
}

TriangleMesh make_tetrahedron(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                              const Eigen::Vector3d& c, const Eigen::Vector3d& d)
{
    TriangleMesh mesh;
    mesh.vertices = {a, b, c, d};
    mesh.faces = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    return mesh;
}

TriangleMesh make_uv_sphere(const Eigen::Vector3d& center, double radius, int stacks, int slices)
{
    TriangleMesh mesh;
    const double pi = std::numbers::pi;
    // Rings from the south pole (s = 0) to the north pole (s = stacks).
    mesh.vertices.push_back(center + Eigen::Vector3d(0, 0, -radius));
    for (int s = 1; s < stacks; ++s) {
        const double phi = -pi / 2.0 + pi * s / stacks;
        for (int k = 0; k < slices; ++k) {
            const double lambda = 2.0 * pi * k / slices;
            mesh.vertices.push_back(center + Eigen::Vector3d(radius * std::cos(phi) *
                                                                 std::cos(lambda),
                                                             radius * std::cos(phi) *
                                                                 std::sin(lambda),
                                                             radius * std::sin(phi)));
        }
    }
    mesh.vertices.push_back(center + Eigen::Vector3d(0, 0, radius));
    const int south = 0;
    const int north = static_cast<int>(mesh.vertices.size()) - 1;
    const auto ring = [&](int s, int k) { return 1 + (s - 1) * slices + (k % slices); };

    for (int k = 0; k < slices; ++k)
        mesh.faces.push_back({south, ring(1, k + 1), ring(1, k)});
    for (int s = 1; s + 1 < stacks; ++s) {
        for (int k = 0; k < slices; ++k) {
            mesh.faces.push_back({ring(s, k), ring(s, k + 1), ring(s + 1, k)});
            mesh.faces.push_back({ring(s, k + 1), ring(s + 1, k + 1), ring(s + 1, k)});
        }
    }
    for (int k = 0; k < slices; ++k)
        mesh.faces.push_back({ring(stacks - 1, k), ring(stacks - 1, k + 1), north});
    return mesh;
}

} // namespace voa::testing
