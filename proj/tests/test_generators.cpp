#include "doctest.h"

#include "sweepout/distance.hpp"
#include "sweepout/error.hpp"
#include "sweepout/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace sweepout;

TEST_CASE("flat torus 2d")
{
    const auto K = flat_torus_2d(16);
    CHECK(K.num_simplices() == 512);
    CHECK(K.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(K.boundary_faces().empty());
    CHECK(max_angle_defect(K) < 1e-12);
    CHECK_THROWS_AS(flat_torus_2d(2), Error);
}

TEST_CASE("flat torus 3d")
{
    const auto K = flat_torus_3d(4);
    CHECK(K.num_simplices() == 384);
    CHECK(K.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(K.boundary_faces().empty());
}

TEST_CASE("icosphere")
{
    const auto K = icosphere(3, 1.0);
    CHECK(K.num_simplices() == 1280);
    CHECK(K.boundary_faces().empty());
    CHECK(std::abs(K.total_volume() - 4 * std::numbers::pi) / (4 * std::numbers::pi) < 0.02);
    CHECK(max_angle_defect(K) > 0.0);
}

TEST_CASE("convex polygon disk has unit area")
{
    for (int rings : {1, 3}) {
        const auto K = convex_polygon_disk(7, rings);
        CHECK(K.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(K.boundary_faces().size() == 7u);
    }
}

TEST_CASE("generator description strings")
{
    CHECK(generate("flat-torus-2d(8)").num_simplices() == 128);
    CHECK(generate("flat-torus-3d:3").num_simplices() == 162);
    CHECK(generate("icosphere:1,2").num_simplices() == 80);
    CHECK_THROWS_AS(generate("klein-bottle:3"), Error);
    CHECK_THROWS_AS(generate("flat-torus-2d:2.5"), Error);
}

TEST_CASE("graph distance on the torus")
{
    const auto K = flat_torus_2d(8);
    const int src = 0;
    const auto d = geodesic_distance(K, std::span<const int>(&src, 1));
    CHECK_FALSE(d.disconnected);
    CHECK(d.dist[0] == 0.0);
    for (const auto& nb : K.neighbors(0))
        if (std::abs(nb.length - 0.125) < 1e-12) CHECK(d.dist[nb.vertex] == doctest::Approx(0.125));
    std::vector<int> all(K.num_vertices());
    for (int v = 0; v < K.num_vertices(); ++v) all[v] = v;
    const auto z = geodesic_distance(K, all);
    for (double x : z.dist) CHECK(x == 0.0);
}

TEST_CASE("path of three unit edges")
{
    const auto K = planar_grid(3, 1, 1.0, [](int, int) { return true; });
    // vertices are numbered by first touch, so (0,0) is vertex 0
    const int a = 0;
    const auto d = geodesic_distance(K, std::span<const int>(&a, 1));
    double far = 0.0;
    for (int v = 0; v < K.num_vertices(); ++v) far = std::max(far, d.dist[v]);
    // the far corner (3,1) is reached via two unit edges and one diagonal
    CHECK(far == doctest::Approx(2.0 + std::sqrt(2.0)));
    CHECK(d.dist[K.num_vertices() - 1] == doctest::Approx(2.0 + std::sqrt(2.0)));
    CHECK(d.dist[6] == doctest::Approx(3.0)); // (3,0) along the bottom edges
}

TEST_CASE("midpoint refinement never lengthens paths")
{
    const auto K = icosphere(2, 1.0);
    const int src = 5;
    const auto plain = geodesic_distance(K, std::span<const int>(&src, 1));
    DistanceOptions opt;
    opt.midpoint_refinement = true;
    const auto fine = geodesic_distance(K, std::span<const int>(&src, 1), opt);
    for (int v = 0; v < K.num_vertices(); ++v) CHECK(fine.dist[v] <= plain.dist[v] + 1e-15);
}

TEST_CASE("disconnected complex is flagged")
{
    const auto K = planar_grid(5, 1, 1.0, [](int i, int) { return i != 2; });
    const int src = 0;
    CHECK(geodesic_distance(K, std::span<const int>(&src, 1)).disconnected);
    DistanceOptions opt;
    opt.throw_if_disconnected = true;
    CHECK_THROWS_AS(geodesic_distance(K, std::span<const int>(&src, 1), opt), Error);
}
