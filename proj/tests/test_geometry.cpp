#include "voa/geometry.hpp"

#include "voa/errors.hpp"
#include "voa/mesh_io.hpp"
#include "support/shapes.hpp"

#include "doctest.h"

#include <numbers>
#include <random>
#include <sstream>

using namespace voa;
using voa::testing::make_box;
using voa::testing::make_tetrahedron;

namespace {

RigidPlacement random_rigid(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const Eigen::Vector3d axis =
        Eigen::Vector3d(dist(gen), dist(gen), dist(gen)).normalized();
    RigidPlacement placement;
    placement.rotation = Eigen::AngleAxisd(dist(gen) * std::numbers::pi, axis).toRotationMatrix();
    placement.translation = Eigen::Vector3d(dist(gen), dist(gen), dist(gen));
    return placement;
}

} // namespace

TEST_CASE("place_mesh with the identity returns the mesh unchanged")
{
    const TriangleMesh mesh = make_box({0.1, -0.2, 0.3}, {1, 2, 3});
    const TriangleMesh placed = place_mesh(mesh, RigidPlacement{});
    REQUIRE(placed.vertices.size() == mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        CHECK(placed.vertices[i] == mesh.vertices[i]);
    CHECK(placed.faces == mesh.faces);
}

TEST_CASE("place_mesh pure translation shifts every x coordinate")
{
    const TriangleMesh cube = make_box({0, 0, 0}, {1, 1, 1});
    RigidPlacement placement;
    placement.translation = {1.0, 0.0, 0.0};
    const TriangleMesh placed = place_mesh(cube, placement);
    for (std::size_t i = 0; i < cube.vertices.size(); ++i) {
        CHECK(placed.vertices[i].x() == cube.vertices[i].x() + 1.0);
        CHECK(placed.vertices[i].y() == cube.vertices[i].y());
        CHECK(placed.vertices[i].z() == cube.vertices[i].z());
    }
}

TEST_CASE("place_mesh 90-degree z rotation maps (1,0,0) to (0,1,0)")
{
    const TriangleMesh tet =
        make_tetrahedron({1, 0, 0}, {0, 0, 0}, {0, 1, 0}, {0, 0, 1});
    RigidPlacement placement;
    placement.rotation = rotation_z(std::numbers::pi / 2.0);
    const TriangleMesh placed = place_mesh(tet, placement);
    CHECK((placed.vertices[0] - Eigen::Vector3d(0, 1, 0)).norm() < 1e-12);
}

TEST_CASE("place_mesh preserves pairwise vertex distances")
{
    std::mt19937_64 gen(7);
    const TriangleMesh mesh = make_box({0.3, 0.1, -0.4}, {0.5, 1.5, 0.25});
    for (int trial = 0; trial < 20; ++trial) {
        const RigidPlacement placement = random_rigid(gen);
        const TriangleMesh placed = place_mesh(mesh, placement);
        for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
            for (std::size_t j = i + 1; j < mesh.vertices.size(); ++j) {
                const double before = (mesh.vertices[i] - mesh.vertices[j]).norm();
                const double after = (placed.vertices[i] - placed.vertices[j]).norm();
                CHECK(std::abs(before - after) < 1e-9);
            }
    }
}

TEST_CASE("ray hits the near face of a unit cube at 1.5")
{
    const TriangleMesh cube = make_box({0, 0, 0}, {1, 1, 1});
    const Ray ray{{-2, 0, 0}, {1, 0, 0}};
    const auto hit = ray_mesh_nearest_hit(ray, cube);
    REQUIRE(hit.has_value());
    CHECK(std::abs(*hit - 1.5) < 1e-12);
}

TEST_CASE("ray pointing away from all geometry misses")
{
    const TriangleMesh cube = make_box({0, 0, 0}, {1, 1, 1});
    const Ray ray{{-2, 0, 0}, {-1, 0, 0}};
    CHECK(!ray_mesh_nearest_hit(ray, cube).has_value());
}

TEST_CASE("ray grazing a shared edge returns the minimum over both face tests")
{
    // Two triangles sharing the edge x=0.5, z in [0,1], leaning oppositely.
    TriangleMesh mesh;
    mesh.vertices = {
        {0.5, 0.0, 0.0}, {0.5, 0.0, 1.0}, // shared edge
        {1.0, 1.0, 0.0},                  // triangle A
        {1.0, -1.0, 0.0},                 // triangle B
    };
    mesh.faces = {{0, 1, 2}, {0, 1, 3}};
    const Ray ray{{-1.0, 0.0, 0.5}, {1.0, 0.0, 0.0}}; // passes through the edge
    const auto hit = ray_mesh_nearest_hit(ray, mesh);
    REQUIRE(hit.has_value());

    // Oracle: exhaustive per-face intersection; the result is the minimum.
    double expect = std::numeric_limits<double>::infinity();
    for (const auto& f : mesh.faces) {
        const auto t =
            ray_triangle_hit(ray, mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]);
        if (t)
            expect = std::min(expect, *t);
    }
    REQUIRE(std::isfinite(expect));
    CHECK(*hit == expect);
    CHECK(std::abs(*hit - 1.5) < 1e-12);
}

TEST_CASE("degenerate triangles are skipped, never hit")
{
    TriangleMesh mesh;
    mesh.vertices = {{1, -1, -1}, {1, 1, -1}, {1, 0, -1}}; // zero area
    mesh.faces = {{0, 1, 2}};
    const Ray ray{{0, 0, -1}, {1, 0, 0}};
    CHECK(!ray_mesh_nearest_hit(ray, mesh).has_value());
}

TEST_CASE("nearest hit is invariant under a common rigid transform")
{
    std::mt19937_64 gen(11);
    const TriangleMesh mesh = make_box({0.5, 0.0, 0.2}, {0.4, 0.7, 0.3});
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        Ray ray{{-1.5, dist(gen) * 0.2, 0.2 + dist(gen) * 0.1}, {1, 0, 0}};
        const auto base = ray_mesh_nearest_hit(ray, mesh);

        const RigidPlacement placement = random_rigid(gen);
        const TriangleMesh moved = place_mesh(mesh, placement);
        Ray moved_ray;
        moved_ray.origin = apply(placement, ray.origin);
        moved_ray.direction = placement.rotation * ray.direction;
        moved_ray.direction.normalize();
        const auto transformed = ray_mesh_nearest_hit(moved_ray, moved);

        REQUIRE(base.has_value() == transformed.has_value());
        if (base)
            CHECK(std::abs(*base - *transformed) < 1e-9);
    }
}

TEST_CASE("hit distance decreases monotonically approaching a convex mesh")
{
    const TriangleMesh cube = make_box({1.0, 0.0, 0.0}, {0.6, 0.6, 0.6});
    double prev = std::numeric_limits<double>::infinity();
    for (double x = -2.0; x < 0.5; x += 0.17) {
        const Ray ray{{x, 0.05, 0.1}, {1, 0, 0}};
        const auto hit = ray_mesh_nearest_hit(ray, cube);
        REQUIRE(hit.has_value());
        CHECK(*hit <= prev + 1e-12);
        prev = *hit;
    }
}

TEST_CASE("mesh validation rejects bad face indices and empty meshes")
{
    TriangleMesh mesh;
    CHECK_THROWS_AS(validate_mesh(mesh), InputError);
    mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    mesh.faces = {{0, 1, 3}};
    CHECK_THROWS_AS(validate_mesh(mesh), InputError);
}

TEST_CASE("placement validation enforces orthonormality and determinant")
{
    RigidPlacement placement;
    placement.rotation(0, 0) = 2.0;
    CHECK_THROWS_AS(validate_placement(placement), InputError);
    placement.rotation = Eigen::Matrix3d::Identity();
    placement.rotation(0, 0) = -1.0; // reflection, determinant -1
    CHECK_THROWS_AS(validate_placement(placement), InputError);
    CHECK(is_rigid(RigidPlacement{}));
}

TEST_CASE("projection of an on-axis point lands on the principal point")
{
    CameraModel cam;
    cam.fx = cam.fy = 100.0;
    cam.cx = cam.cy = 50.0;
    cam.width = cam.height = 100;
    const auto p = project_point({0.0, 0.0, 2.5}, cam);
    REQUIRE(p.has_value());
    CHECK(p->col == 50.0);
    CHECK(p->row == 50.0);
    CHECK(p->depth == 2.5);
}

TEST_CASE("points behind the camera do not project")
{
    CameraModel cam;
    cam.fx = cam.fy = 100.0;
    cam.cx = cam.cy = 50.0;
    cam.width = cam.height = 100;
    CHECK(!project_point({0.0, 0.0, -1.0}, cam).has_value());
    CHECK(!project_point({0.2, 0.1, 0.0}, cam).has_value());
}

TEST_CASE("off-axis projection round-trips through back-projection")
{
    CameraModel cam;
    cam.fx = cam.fy = 100.0;
    cam.cx = cam.cy = 50.0;
    cam.width = cam.height = 100;
    std::mt19937_64 gen(3);
    cam.pose = random_rigid(gen);

    std::uniform_real_distribution<double> dist(-0.4, 0.4);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Vector3d local(dist(gen), dist(gen), 1.0 + std::abs(dist(gen)) * 3.0);
        const Eigen::Vector3d world = apply(cam.pose, local);
        const auto p = project_point(world, cam);
        if (!p)
            continue; // outside bounds is fine here
        const Eigen::Vector3d back_local(p->depth * (p->col - cam.cx) / cam.fx,
                                         p->depth * (p->row - cam.cy) / cam.fy, p->depth);
        const Eigen::Vector3d back = apply(cam.pose, back_local);
        CHECK((back - world).norm() < 1e-9);
    }
}

TEST_CASE("projection outside image bounds is absent")
{
    CameraModel cam;
    cam.fx = cam.fy = 100.0;
    cam.cx = cam.cy = 50.0;
    cam.width = cam.height = 100;
    CHECK(!project_point({10.0, 0.0, 1.0}, cam).has_value());
    CHECK(project_point_unbounded({10.0, 0.0, 1.0}, cam).has_value());
}

TEST_CASE("OBJ loader accepts the v/f subset and ignores other lines")
{
    std::istringstream in("# comment\n"
                          "v 0 0 0\n"
                          "v 1 0 0\n"
                          "v 0 1 0\n"
                          "vn 0 0 1\n"
                          "s off\n"
                          "f 1 2 3\n");
    const TriangleMesh mesh = load_obj(in, "inline");
    CHECK(mesh.vertices.size() == 3);
    REQUIRE(mesh.faces.size() == 1);
    CHECK(mesh.faces[0] == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("OBJ loader rejects non-triangle faces, slashes, and bad indices")
{
    {
        std::istringstream in("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\nf 1 2 3 4\n");
        CHECK_THROWS_AS(load_obj(in, "quad"), InputError);
    }
    {
        std::istringstream in("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1 2/2 3/3\n");
        CHECK_THROWS_AS(load_obj(in, "slashes"), InputError);
    }
    {
        std::istringstream in("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n");
        CHECK_THROWS_AS(load_obj(in, "range"), InputError);
    }
    {
        std::istringstream in("v 0 0 0\nv 1 0 0\nv 0 1 0\n");
        CHECK_THROWS_AS(load_obj(in, "nofaces"), InputError);
    }
}

TEST_CASE("rays must have unit direction")
{
    const TriangleMesh cube = make_box({0, 0, 0}, {1, 1, 1});
    const Ray ray{{-2, 0, 0}, {2, 0, 0}};
    CHECK_THROWS_AS(ray_mesh_nearest_hit(ray, cube), InputError);
}
