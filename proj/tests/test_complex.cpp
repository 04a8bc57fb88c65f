#include "doctest.h"

#include "sweepout/complex.hpp"
#include "sweepout/error.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace sweepout;

namespace {

FlatComplex parse(const std::string& text)
{
    std::istringstream in(text);
    return read_complex(in);
}

const char* kSquare = R"(flatcomplex 2 4 2
# two right triangles glued along the hypotenuse
0 1 2
0 2 3
edge 0 1 1
edge 1 2 1
edge 2 3 1
edge 0 3 1
edge 0 2 1.4142135623730951
)";

ErrorCode code_of(const std::string& text)
{
    try {
        parse(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::IoError;
}

} // namespace

TEST_CASE("unit square from two right triangles")
{
    const auto K = parse(kSquare);
    CHECK(K.num_vertices() == 4);
    CHECK(K.num_simplices() == 2);
    CHECK(K.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(K.num_edges() == 5);
    CHECK(K.boundary_faces().size() == 4);
    const int diag = K.shared_face(0, 1);
    REQUIRE(diag >= 0);
    CHECK(K.face_volume(diag) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("right triangle area is ab/2")
{
    const auto K = parse("flatcomplex 2 3 1\n0 1 2\nedge 0 1 3\nedge 0 2 4\nedge 1 2 5\n");
    CHECK(K.total_volume() == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("load errors")
{
    CHECK(code_of("flatcomplex 2 3 1\n0 1 2\nedge 0 1 1\nedge 1 2 1\nedge 0 2 3\n") == ErrorCode::DegenerateSimplex);
    CHECK(code_of("flatcomplex 2 3 1\n0 1 2\nedge 0 1 1\nedge 1 2 1\n") == ErrorCode::ParseError);
    CHECK(code_of("flatcomplex 4 3 1\n0 1 2\n") == ErrorCode::UnsupportedDimension);
    CHECK(code_of("garbage\n") == ErrorCode::ParseError);
    // three triangles on one edge
    CHECK(code_of("embedded 2 5 3\n0 0 0\n1 0 0\n0 1 0\n0 -1 0\n0 0 1\n0 1 2\n0 1 3\n0 1 4\n")
          == ErrorCode::NonManifold);
}

TEST_CASE("degenerate error names the simplex")
{
    try {
        parse("flatcomplex 2 3 1\n0 1 2\nedge 0 1 1\nedge 1 2 1\nedge 0 2 3\n");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("(0 1 2)") != std::string::npos);
    }
}

TEST_CASE("realization reproduces edge lengths")
{
    const auto K = parse("embedded 3 4 1\n0 0 0\n1 0 0\n0.3 0.8 0\n0.2 0.1 0.9\n0 1 2 3\n");
    const auto p = K.realization(0);
    const auto s = K.simplex(0);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double want = K.edge_length(K.edge(s[i], s[j]));
            CHECK(distance(p[i], p[j]) == doctest::Approx(want).epsilon(1e-12));
        }
}

TEST_CASE("slice of the right triangle at t = 0.5")
{
    const std::array<Point, 3> p{Point{0, 0, 0}, Point{1, 0, 0}, Point{0, 1, 0}};
    const std::array<double, 3> v{0.0, 1.0, 2.0};
    const auto s = slice_simplex(2, p, v, 0.5);
    CHECK(s.count == 2);
    CHECK(s.volume == doctest::Approx(std::sqrt(0.3125)).epsilon(1e-14));
    CHECK(slice_simplex(2, p, v, -1.0).volume == 0.0);
    CHECK(slice_simplex(2, p, v, 3.0).count == 0);
}

TEST_CASE("regular tetrahedron slice against Monte Carlo shell estimate")
{
    const double h = std::sqrt(2.0 / 3.0);
    const std::array<Point, 4> p{Point{0, 0, 0}, Point{1, 0, 0}, Point{0.5, std::sqrt(3.0) / 2, 0},
                                 Point{0.5, std::sqrt(3.0) / 6, h}};
    const std::array<double, 4> v{0, 1, 2, 3};
    const double t = 1.5;
    const auto s = slice_simplex(3, p, v, t);
    CHECK(s.count == 4);

    const double g = gradient_norm(3, p, v);
    const double vol = simplex_volume(3, p);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double band = 0.02;
    long hits = 0;
    const long samples = 2'000'000;
    for (long i = 0; i < samples; ++i) {
        // uniform barycentric sample via sorted spacings
        std::array<double, 3> r{u(rng), u(rng), u(rng)};
        std::sort(r.begin(), r.end());
        const std::array<double, 4> b{r[0], r[1] - r[0], r[2] - r[1], 1.0 - r[2]};
        double f = 0.0;
        for (int k = 0; k < 4; ++k) f += b[k] * v[k];
        if (std::abs(f - t) < band) ++hits;
    }
    const double shell = vol * static_cast<double>(hits) / samples;
    const double estimate = shell / (2.0 * band / g);
    CHECK(std::abs(estimate - s.volume) / s.volume < 0.02);
}

TEST_CASE("sublevel volume is monotone and reaches the full volume")
{
    const std::array<Point, 4> p{Point{0, 0, 0}, Point{1, 0, 0}, Point{0, 1, 0}, Point{0, 0, 1}};
    const std::array<double, 4> v{0.1, 0.7, 0.3, 0.9};
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double t = i / 100.0;
        const double s = sublevel_volume(3, p, v, t);
        CHECK(s >= prev - 1e-15);
        prev = s;
    }
    CHECK(prev == doctest::Approx(1.0 / 6.0));
    // derivative of the sublevel volume is slice area / |grad f|
    const double t = 0.5, dt = 1e-6;
    const double deriv = (sublevel_volume(3, p, v, t + dt) - sublevel_volume(3, p, v, t - dt)) / (2 * dt);
    CHECK(deriv == doctest::Approx(slice_simplex(3, p, v, t).volume / gradient_norm(3, p, v)).epsilon(1e-5));
}

TEST_CASE("chain boundary")
{
    const auto K = parse(kSquare);
    // all faces of one simplex
    Chain c;
    for (int i = 0; i < 3; ++i) c.push_back(K.simplex_face(0, i));
    CHECK(boundary(K, make_chain(c)).empty());
    const int diag = K.shared_face(0, 1);
    const auto b = boundary(K, {diag});
    CHECK(b == std::vector<int>{0, 2});
    CHECK(make_chain({3, 1, 3, 2, 3}) == Chain{1, 2, 3});
}

TEST_CASE("boundary of boundary vanishes on random 3D chains")
{
    const auto K = parse("embedded 3 5 2\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n0 1 2 3\n1 2 3 4\n");
    std::mt19937 rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
        Chain c;
        for (int f = 0; f < K.num_faces(); ++f)
            if (rng() & 1) c.push_back(f);
        const auto b = boundary(K, c);
        CHECK(ridge_boundary(K, b).empty());
    }
}

TEST_CASE("writer round-trips with 17 digits")
{
    const auto K = parse(kSquare);
    std::ostringstream out;
    write_complex(out, K);
    const auto K2 = parse(out.str());
    CHECK(K2.total_volume() == K.total_volume());
    for (int e = 0; e < K.num_edges(); ++e) CHECK(K2.edge_length(e) == K.edge_length(e));
}
