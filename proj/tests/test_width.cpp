#include "doctest.h"

#include "sweepout/generators.hpp"
#include "sweepout/width.hpp"

#include <cmath>
#include <random>

using namespace sweepout;

namespace {

std::vector<double> x_values(const FlatComplex& K, const std::vector<Point>& coords, double jitter)
{
    std::vector<double> f(K.num_vertices());
    for (int v = 0; v < K.num_vertices(); ++v) f[v] = coords[v][0] + jitter * v;
    return f;
}

} // namespace

TEST_CASE("unit square swept by x has width 1")
{
    const std::vector<Point> c{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    const auto K = from_embedding(2, c, {{0, 1, 2, -1}, {0, 2, 3, -1}});
    const auto f = x_values(K, c, 1e-10);
    const auto W = width_profile(view_of(K), f);
    CHECK(W.width == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(W.argmax > W.breakpoints.front());
    CHECK(W.argmax < W.breakpoints.back());
}

TEST_CASE("level sets vanish outside the value range")
{
    const auto K = convex_polygon_disk(9, 2);
    std::vector<double> f(K.num_vertices());
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (auto& x : f) x = u(rng);
    const auto W = width_profile(view_of(K), f);
    CHECK(W(W.breakpoints.front() - 1.0) == 0.0);
    CHECK(level_set_volume(view_of(K), f, W.breakpoints.back() + 1.0) == 0.0);
    CHECK(W.local(0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(W.local(W.intervals() - 1, 1.0)) < 1e-12);
}

TEST_CASE("profile polynomials match direct slicing")
{
    for (auto K : {icosphere(2, 1.0), flat_torus_3d(3)}) {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0, 1);
        std::vector<double> f(K.num_vertices());
        for (auto& x : f) x = u(rng);
        const auto view = view_of(K);
        const auto W = width_profile(view, f);
        int checked = 0;
        for (int trial = 0; trial < 500; ++trial) {
            const double t = W.breakpoints.front() + u(rng) * (W.breakpoints.back() - W.breakpoints.front());
            const double direct = level_set_volume(view, f, t);
            const double poly = W(t);
            CHECK(std::abs(direct - poly) <= 1e-9 * std::max(1.0, direct));
            CHECK(W.width >= direct - 1e-9);
            ++checked;
        }
        CHECK(checked == 500);
    }
}

TEST_CASE("random single-simplex slices agree with the interval polynomial")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    int checked = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const int dim = trial % 2 ? 3 : 2;
        std::vector<Point> c;
        for (int i = 0; i <= dim; ++i) c.push_back({u(rng), u(rng), dim == 3 ? u(rng) : 0.0});
        Simplex s{0, 1, 2, dim == 3 ? 3 : -1};
        FlatComplex K;
        try {
            K = from_embedding(dim, c, {s});
        } catch (...) {
            continue;
        }
        std::vector<double> f(dim + 1);
        for (auto& x : f) x = u(rng);
        const auto W = width_profile(view_of(K), f);
        const double t = W.breakpoints.front() + u(rng) * (W.breakpoints.back() - W.breakpoints.front());
        const double direct = level_set_volume(view_of(K), f, t);
        CHECK(std::abs(direct - W(t)) <= 1e-9 * std::max(direct, 1e-3));
        ++checked;
    }
    CHECK(checked > 9000);
}

TEST_CASE("width is invariant under affine reparametrization")
{
    const auto K = icosphere(2, 1.0);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> f(K.num_vertices());
    for (auto& x : f) x = u(rng);
    const double w0 = width_profile(view_of(K), f).width;
    for (int k = 0; k < 10; ++k) {
        double a = u(rng) * 5;
        if (std::abs(a) < 0.1) a = 0.5;
        const double b = u(rng) * 10;
        std::vector<double> g(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) g[i] = a * f[i] + b;
        CHECK(width_profile(view_of(K), g).width == doctest::Approx(w0).epsilon(1e-9));
    }
}

TEST_CASE("regular level nudging")
{
    const std::vector<double> v{0.0, 0.5, 0.5 + 1e-13, 1.0};
    const auto r = regular_level(v, 0.5);
    CHECK(r.nudged);
    CHECK(std::abs(r.t - 0.5) > 1e-12);
    CHECK(std::abs(r.t - 0.5) < 1e-10);
    CHECK_FALSE(regular_level(v, 0.25).nudged);
}

TEST_CASE("snapped level chains on closed complexes are cycles")
{
    const auto K = flat_torus_3d(3);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> f(K.num_vertices());
    for (auto& x : f) x = u(rng);
    for (double t : {0.2, 0.5, 0.8}) {
        const auto c = level_chain(K, f, t);
        CHECK(boundary(K, c).empty());
        CHECK(level_set_closed(K, f, t));
    }
}

TEST_CASE("pl morse check")
{
    const auto K = flat_torus_2d(3);
    std::vector<double> f(K.num_vertices());
    for (int v = 0; v < K.num_vertices(); ++v) f[v] = v;
    CHECK(is_pl_morse(view_of(K), f));
    f[3] = f[4];
    CHECK_FALSE(is_pl_morse(view_of(K), f));
}
