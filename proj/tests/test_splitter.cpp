#include "doctest.h"

#include "sweepout/cells.hpp"
#include "sweepout/constants.hpp"
#include "sweepout/distance.hpp"
#include "sweepout/error.hpp"
#include "sweepout/generators.hpp"
#include "sweepout/splitter.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace sweepout;

namespace {

ErrorCode code_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::IoError;
}

std::vector<int> all_simplices(const FlatComplex& K)
{
    std::vector<int> out(K.num_simplices());
    for (int s = 0; s < K.num_simplices(); ++s) out[s] = s;
    return out;
}

bool subset(const std::vector<int>& a, const std::vector<int>& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Random face-connected blob of about `size` simplices.
std::vector<int> blob(const FlatComplex& K, std::mt19937& rng, int size)
{
    std::set<int> in{static_cast<int>(rng() % K.num_simplices())};
    std::vector<int> order(in.begin(), in.end());
    while (static_cast<int>(in.size()) < size) {
        const int s = order[rng() % order.size()];
        const auto cf = K.face_cofaces(K.simplex_face(s, rng() % (K.dim() + 1)));
        const int y = cf[0] == s ? cf[1] : cf[0];
        if (y >= 0 && in.insert(y).second) order.push_back(y);
    }
    return {in.begin(), in.end()};
}

} // namespace

TEST_CASE("capacitor on the flat torus")
{
    const auto K = flat_torus_2d(16);
    const auto cap = build_capacitor(K, all_simplices(K));
    const double r = std::sqrt(1.0 / (163.0 * std::numbers::pi));
    CHECK(cap.r == doctest::Approx(r).epsilon(1e-12));
    CHECK(omega(2) * cap.r * cap.r == doctest::Approx(cap.lambda_n * cap.region_volume).epsilon(1e-12));
    CHECK(cap.fraction1 >= 1.0 / 163);
    CHECK(cap.fraction2 >= 1.0 / 163);
    CHECK(cap.volume1 <= 2 * cap.lambda_n * cap.region_volume * (1 + 1e-6));
    CHECK(cap.separation >= cap.r - cap.h);
    for (std::size_t i = 1; i < cap.greedy_coverage.size(); ++i)
        CHECK(cap.greedy_coverage[i] > cap.greedy_coverage[i - 1]);
    std::vector<int> both;
    std::set_intersection(cap.A1.begin(), cap.A1.end(), cap.A2.begin(), cap.A2.end(), std::back_inserter(both));
    CHECK(both.empty());
}

TEST_CASE("capacitor shortfall and empty region")
{
    const auto K = flat_torus_2d(16);
    const std::vector<int> one{0};
    const auto cap = try_build_capacitor(K, one);
    CHECK(cap.shortfall);
    CHECK(cap.A1 == one);
    CHECK(cap.A2.empty());
    CHECK(code_of([&] { build_capacitor(K, one); }) == ErrorCode::CapacitorShortfall);
    CHECK(code_of([&] { build_capacitor(K, {}); }) == ErrorCode::EmptyRegion);
}

TEST_CASE("two squares joined by a corridor")
{
    // unit squares at both ends of a one-row corridor of length 3
    const auto K = planar_grid(80, 16, 1.0 / 16, [](int i, int j) { return i < 16 || i >= 64 || j == 8; });
    const auto cap = build_capacitor(K, all_simplices(K));
    CHECK_FALSE(cap.shortfall);
    CHECK(cap.fraction1 > cap.lambda_n);
    CHECK(cap.fraction2 > cap.lambda_n);
    MESSAGE("corridor fractions " << cap.fraction1 << " " << cap.fraction2);
}

TEST_CASE("ramp split on the torus")
{
    const auto K = flat_torus_2d(16);
    const auto cap = build_capacitor(K, all_simplices(K));
    const auto rs = ramp_split(K, cap);
    CHECK(rs.levels == 64);
    CHECK(rs.chain_volume <= rs.budget);
    CHECK(rs.budget == doctest::Approx(build_table(2).A_n * (1 + 1e-6)));
    CHECK(rs.coarea_average <= rs.coarea_bound);
    CHECK(subset(cap.A1, rs.side1));
    CHECK(subset(cap.A2, rs.side2));
    CHECK(rs.t > 0.0);
    CHECK(rs.t < 1.0);
    CHECK(chain_volume(K, rs.chain) == doctest::Approx(rs.chain_volume));
    MESSAGE("torus ramp chain volume " << rs.chain_volume);
}

TEST_CASE("ramp split on a sphere keeps A1 and A2 apart")
{
    const auto K = icosphere(3, 1.0);
    const auto cap = build_capacitor(K, all_simplices(K));
    const auto rs = ramp_split(K, cap);
    CHECK(subset(cap.A1, rs.side1));
    CHECK(subset(cap.A2, rs.side2));
    CHECK(rs.side1.size() + rs.side2.size() == static_cast<std::size_t>(K.num_simplices()));
}

TEST_CASE("discrete coarea on random torus regions")
{
    const auto K = flat_torus_2d(16);
    std::mt19937 rng(5);
    int ran = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto region = blob(K, rng, 80 + static_cast<int>(rng() % 400));
        const auto cap = try_build_capacitor(K, region);
        if (cap.shortfall) continue;
        const auto rs = ramp_split(K, cap);
        CHECK(rs.coarea_average <= rs.coarea_bound);
        CHECK(rs.chain_volume <= rs.budget);
        ++ran;
    }
    CHECK(ran >= 10);
}

TEST_CASE("skeletonize is idempotent on skeleton chains")
{
    const auto K = flat_torus_2d(16);
    const auto cs = build_cells(K, 1.0 / 8, {4.0, {100000, true}});
    REQUIRE(cs.size() >= 2);
    std::vector<int> cells(cs.size());
    for (int i = 0; i < cs.size(); ++i) cells[i] = i;
    std::vector<char> labels(K.num_simplices(), 0);
    for (int i = 0; i < cs.size(); i += 2)
        for (int s : cs.cells[i].simplices) labels[s] = 1;
    std::vector<int> side1;
    for (int s = 0; s < K.num_simplices(); ++s)
        if (labels[s]) side1.push_back(s);
    const auto raw = separating_faces(K, labels);
    SkeletonizeOptions opt;
    opt.n0_override = 0;
    const auto res = skeletonize(K, cs, cells, raw, labels, {}, {}, opt);
    CHECK_FALSE(res.fallback);
    CHECK(res.S == raw);
    CHECK(res.D1 == side1);
    for (const auto& c : res.cases) CHECK(c.transferred_volume == 0.0);
}

TEST_CASE("skeletonize matches exhaustive search over cell assignments")
{
    const auto K = flat_torus_2d(16);
    const auto cs = build_cells(K, 1.0 / std::sqrt(128.0), {4.0, {100000, true}});
    const int N = cs.size();
    REQUIRE(N >= 3);
    REQUIRE(N <= 10);
    std::vector<int> cells(N);
    for (int i = 0; i < N; ++i) cells[i] = i;
    // interface volume between each pair of cells
    std::vector<std::vector<double>> w(N, std::vector<double>(N, 0.0));
    for (const auto& a : cs.adjacency) {
        w[a.a][a.b] += a.weight;
        w[a.b][a.a] += a.weight;
    }
    const std::vector<int> A1 = cs.cells[0].simplices, A2 = cs.cells[N - 1].simplices;
    double best = kInfinity;
    for (unsigned m = 0; m < (1u << N); ++m) {
        if (!(m & 1u) || (m >> (N - 1) & 1u)) continue;
        double cut = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j)
                if ((m >> i & 1u) != (m >> j & 1u)) cut += w[i][j];
        best = std::min(best, cut);
    }
    std::mt19937 rng(11);
    SkeletonizeOptions opt;
    opt.n0_override = 0;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<char> labels(K.num_simplices());
        for (auto& l : labels) l = rng() & 1;
        const auto res = skeletonize(K, cs, cells, {}, labels, A1, A2, opt);
        CHECK(res.chain_volume == doctest::Approx(best).epsilon(1e-12));
        CHECK(std::find(res.cells1.begin(), res.cells1.end(), 0) != res.cells1.end());
        CHECK(std::find(res.cells2.begin(), res.cells2.end(), N - 1) != res.cells2.end());
    }
}

TEST_CASE("below N_0 one cell is split off")
{
    const auto K = flat_torus_2d(16);
    const auto cs = build_cells(K, 1.0 / 8, {4.0, {100000, true}});
    std::vector<int> cells(cs.size());
    for (int i = 0; i < cs.size(); ++i) cells[i] = i;
    const auto res = split_off_cell(K, cs, cells);
    CHECK(res.fallback);
    CHECK(res.cells1.size() == 1u);
    CHECK(res.volume1 + res.volume2 == doctest::Approx(1.0).epsilon(1e-12));
    const double bound = 2 * std::sqrt(std::numbers::pi) * 3 * std::sqrt(res.volume);
    CHECK(res.chain_volume <= bound);
    for (const auto& c : res.certificates) CHECK(c.pass);
    bool named = false;
    for (const auto& c : res.certificates) named |= c.name == "single_cell_interface";
    CHECK(named);
    const std::vector<int> one{0};
    CHECK(code_of([&] { split_off_cell(K, cs, one); }) == ErrorCode::BadParams);
}

TEST_CASE("split of a disk keeps the chain boundary on the disk boundary")
{
    const auto K = convex_polygon_disk(12, 8);
    const auto cs = build_cells(K, 0.06, {4.0, {100000, true}});
    std::vector<int> cells(cs.size());
    for (int i = 0; i < cs.size(); ++i) cells[i] = i;
    for (const bool forced : {false, true}) {
        SkeletonizeOptions opt;
        if (forced) opt.n0_override = 0;
        const auto rs = split_region(K, cs, cells, opt);
        const auto& res = rs.result;
        CHECK_FALSE(res.D1.empty());
        CHECK_FALSE(res.D2.empty());
        const auto bm = K.boundary_vertex_mask();
        for (int v : boundary(K, res.S)) CHECK(bm[v]);
        std::vector<char> in1(K.num_simplices(), 0);
        for (int s : res.D1) in1[s] = 1;
        CHECK(res.S == separating_faces(K, in1));
        if (rs.ramp) {
            for (const auto& c : res.cases) {
                CHECK((c.kind == "project" || c.kind == "boundary-minimal"));
                if (c.kind == "project" && c.replaced_volume >= 0) CHECK(c.replaced_volume <= c.budget * (1 + 1e-6));
            }
        }
    }
}
