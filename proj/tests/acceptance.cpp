// One line per acceptance criterion; exit status 1 if any fails.
#include "sweepout/cells.hpp"
#include "sweepout/constants.hpp"
#include "sweepout/distance.hpp"
#include "sweepout/error.hpp"
#include "sweepout/generators.hpp"
#include "sweepout/report.hpp"
#include "sweepout/splitter.hpp"
#include "sweepout/sweepout.hpp"
#include "sweepout/width.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

using namespace sweepout;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("threw ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limit_s) {
        out.pass = false;
        out.detail += "; over the " + std::to_string(static_cast<int>(limit_s)) + " s limit";
    }
    failures += !out.pass;
    std::printf("criterion %2d %s  %s: %s (%.2f s)\n", id, out.pass ? "PASS" : "FAIL", title, out.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string g(double x)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

std::vector<int> all_simplices(const FlatComplex& K)
{
    std::vector<int> out(K.num_simplices());
    for (int s = 0; s < K.num_simplices(); ++s) out[s] = s;
    return out;
}

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

// jittered grids so face volumes are generic
FlatComplex jittered_grid_2d(std::mt19937& rng)
{
    std::uniform_real_distribution<double> J(-0.2, 0.2);
    const int m = 5;
    std::vector<Point> pts;
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) pts.push_back({i + J(rng), j + J(rng), 0.0});
    std::vector<Simplex> tris;
    for (int j = 0; j + 1 < m; ++j)
        for (int i = 0; i + 1 < m; ++i) {
            const int a = j * m + i, b = a + 1, c = a + m, d = c + 1;
            tris.push_back({a, b, d, -1});
            tris.push_back({a, c, d, -1});
        }
    return from_embedding(2, pts, tris);
}

FlatComplex jittered_grid_3d(std::mt19937& rng)
{
    std::uniform_real_distribution<double> J(-0.15, 0.15);
    const int m = 4;
    auto id = [&](int i, int j, int k) { return (k * m + j) * m + i; };
    std::vector<Point> pts(m * m * m);
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) pts[id(i, j, k)] = {i + J(rng), j + J(rng), k + J(rng)};
    std::vector<Simplex> tets;
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int k = 0; k + 1 < m; ++k)
        for (int j = 0; j + 1 < m; ++j)
            for (int i = 0; i + 1 < m; ++i)
                for (const auto& p : perms) {
                    int c[3] = {i, j, k};
                    Simplex t{id(c[0], c[1], c[2]), 0, 0, 0};
                    for (int q = 0; q < 3; ++q) {
                        ++c[p[q]];
                        t[q + 1] = id(c[0], c[1], c[2]);
                    }
                    tets.push_back(t);
                }
    return from_embedding(3, pts, tets);
}

double brute_min_chain(const FlatComplex& K, const std::vector<int>& cell, const std::vector<int>& ridges)
{
    std::set<int> fs;
    for (int s : cell)
        for (int i = 0; i <= K.dim(); ++i) fs.insert(K.simplex_face(s, i));
    const std::vector<int> faces(fs.begin(), fs.end());
    const auto want = make_chain(ridges);
    double best = kInfinity;
    for (std::uint32_t m = 0; m < (1u << faces.size()); ++m) {
        Chain c;
        for (std::size_t i = 0; i < faces.size(); ++i)
            if (m >> i & 1u) c.push_back(faces[i]);
        if (boundary(K, c) == want) best = std::min(best, chain_volume(K, c));
    }
    return best;
}

int face_count(const FlatComplex& K, const std::vector<int>& cell)
{
    std::set<int> fs;
    for (int s : cell)
        for (int i = 0; i <= K.dim(); ++i) fs.insert(K.simplex_face(s, i));
    return static_cast<int>(fs.size());
}

std::string artifacts(const SweepResult& r)
{
    return certificate_json(r.cert).dump() + function_json(r.refined, r.values).dump() + profile_csv(r.profile);
}

struct Closed {
    const char* name;
    FlatComplex K;
};

} // namespace

int main()
{
    criterion(1, "constants table", 1.0, [] {
        Outcome o;
        for (int n = 2; n <= 8; ++n) build_table(n);
        const auto T = build_table(2);
        const double single = 12.0 / std::sqrt(std::numbers::pi);
        o.pass = T.c_n == 81.0 && T.C_prev == 36.0 && projection_lipschitz_bound(1.0) == 36.0 &&
                 rel_close(T.single_cell, single, 1e-12);
        o.detail = "n = 2..8 built, c_2 = " + g(T.c_n) + ", C_1 = " + g(T.C_prev) + ", lambda=1 projection bound = " +
                   g(projection_lipschitz_bound(1.0)) + ", single-cell coefficient " + g(T.single_cell) +
                   " vs 12/sqrt(pi) = " + g(single);
        return o;
    });

    criterion(2, "projection-ratio curve", 1.0, [] {
        const double theta = projection_theta();
        const double end = std::numbers::pi / 2 - theta;
        // grid clustered at 0, where the supremum sits
        double best = 0.0, at = 0.0;
        int best_i = 0;
        for (int i = 1; i < 10000; ++i) {
            const double t = end * std::pow(static_cast<double>(i) / 10000, 4.0);
            if (const double v = projection_ratio(t); v > best) {
                best = v;
                at = t;
                best_i = i;
            }
        }
        const double near0 = projection_ratio(1e-9);
        Outcome o;
        o.pass = std::abs(std::sin(theta) - 1.0 / 6) < 1e-15 && best <= 36.0 * (1 + 1e-12) &&
                 std::abs(near0 - 36.0) <= 36e-6 && best_i == 1;
        o.detail = "grid max " + g(best) + " at the smallest t = " + g(at) + ", ratio(1e-9) = " + g(near0);
        return o;
    });

    criterion(3, "cell certificates on flat tori", 30.0, [] {
        Outcome o;
        std::ostringstream d;
        double lambda8 = 0.0, lambda32 = 0.0;
        for (int k : {8, 16, 32}) {
            const auto K = flat_torus_2d(k);
            const double rho = 1.0 / std::sqrt(8.0 * k);
            const auto cs = build_cells(K, rho);
            const double lower = cs.size() * std::pow(cs.lambda, -2) * omega(2) * std::pow(2 * rho, 2);
            const double upper = cs.size() * std::pow(cs.lambda, 2) * omega(2) * std::pow(6 * rho, 2);
            o.pass = o.pass && cs.lambda <= 4.0 && lower <= cs.volume && cs.volume <= upper;
            if (k == 8) lambda8 = cs.lambda;
            if (k == 32) lambda32 = cs.lambda;
            d << "k=" << k << ": N=" << cs.size() << " lambda=" << g(cs.lambda) << " lower=" << g(lower) << "; ";
        }
        o.pass = o.pass && lambda32 <= lambda8 + 1e-6;
        d << "lambda(32) <= lambda(8) + 1e-6: " << (lambda32 <= lambda8 + 1e-6 ? "yes" : "no");
        o.detail = d.str();
        return o;
    });

    criterion(4, "capacitor on flat-torus-2d(16)", 10.0, [] {
        const auto K = flat_torus_2d(16);
        const auto cap = build_capacitor(K, all_simplices(K));
        const double r = std::sqrt(1.0 / (163.0 * std::numbers::pi));
        Outcome o;
        o.pass = rel_close(cap.r, r, 1e-12) && cap.fraction1 >= 1.0 / 163 && cap.fraction2 >= 1.0 / 163 &&
                 cap.separation >= cap.r - cap.h;
        o.detail = "r = " + g(cap.r) + ", fractions " + g(cap.fraction1) + " / " + g(cap.fraction2) + " >= " +
                   g(1.0 / 163) + ", separation " + g(cap.separation) + " >= r - h = " + g(cap.r - cap.h);
        return o;
    });

    criterion(5, "discrete coarea on random regions", 60.0, [] {
        const auto K = flat_torus_2d(16);
        std::mt19937 rng(5);
        int ran = 0, draws = 0, shortfalls = 0;
        double worst = 0.0;
        Outcome o;
        while (ran < 20 && draws < 400) {
            ++draws;
            const auto region = blob(K, rng, 80 + static_cast<int>(rng() % 400));
            const auto cap = try_build_capacitor(K, region);
            if (cap.shortfall) {
                ++shortfalls;
                continue;
            }
            const auto rs = ramp_split(K, cap);
            double avg = 0.0;
            for (double v : rs.level_volumes) avg += v;
            avg /= rs.level_volumes.size();
            const double bound = cap.region_volume / rs.r * (1 + 1e-6);
            worst = std::max(worst, avg / bound);
            o.pass = o.pass && avg <= bound;
            ++ran;
        }
        o.pass = o.pass && ran == 20;
        o.detail = std::to_string(ran) + " ramp splits (" + std::to_string(shortfalls) +
                   " capacitor shortfalls skipped), largest average / bound = " + g(worst);
        return o;
    });

    criterion(6, "minimal chains against exhaustive search", 60.0, [] {
        std::mt19937 rng(6);
        int checked = 0, mismatches = 0, max_faces = 0;
        const auto K2 = jittered_grid_2d(rng);
        const auto K3 = jittered_grid_3d(rng);
        while (checked < 1000) {
            const bool three = checked % 2 == 1;
            const auto& K = three ? K3 : K2;
            const int size = 1 + static_cast<int>(rng() % (three ? 3 : 4));
            const auto cell = blob(K, rng, size);
            if (face_count(K, cell) > 12) continue;
            max_faces = std::max(max_faces, face_count(K, cell));
            Chain pick;
            for (int f : cell_boundary_faces(K, cell))
                if (rng() & 1) pick.push_back(f);
            const auto b = boundary(K, make_chain(pick));
            const auto c = min_chain_with_boundary(K, cell, b);
            const double want = brute_min_chain(K, cell, b);
            if (boundary(K, c) != b || !rel_close(chain_volume(K, c), want, 1e-12)) ++mismatches;
            ++checked;
        }
        Outcome o;
        o.pass = mismatches == 0;
        o.detail = std::to_string(checked) + " cells (2D and 3D, up to " + std::to_string(max_faces) + " faces), " +
                   std::to_string(mismatches) + " mismatches";
        return o;
    });

    criterion(7, "merge bound on random splits", 300.0, [] {
        const int k = 16;
        const auto K = flat_torus_2d(k);
        std::mt19937 rng(7);
        std::normal_distribution<double> N(0.0, 1.0);
        int merges = 0, bad_bound = 0, bad_eta = 0, bad_trend = 0;
        double max_eta = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const auto D1 = blob(K, rng, 64 + static_cast<int>(rng() % 384));
            std::vector<char> side(K.num_simplices(), 2);
            for (int s : D1) side[s] = 1;
            // generic linear heights in grid coordinates
            std::vector<double> f1(K.num_vertices()), f2(K.num_vertices());
            const double a1 = N(rng), b1 = N(rng), a2 = N(rng), b2 = N(rng);
            for (int v = 0; v < K.num_vertices(); ++v) {
                const double x = (v / k) / double(k), y = (v % k) / double(k);
                f1[v] = a1 * x + b1 * y + 1e-9 * v;
                f2[v] = a2 * x + b2 * y + 1e-9 * v;
            }
            double eta[3];
            const double eps[3] = {0.1, 0.05, 0.025};
            for (int e = 0; e < 3; ++e) {
                const auto r = merge(K, f1, f2, side, eps[e]);
                eta[e] = r.stats.eta;
                if (!(r.stats.width <= r.stats.bound * (1 + 1e-9))) ++bad_bound;
                if (eps[e] == 0.05) {
                    max_eta = std::max(max_eta, r.stats.eta);
                    if (r.stats.eta > 1.5) ++bad_eta;
                }
                ++merges;
            }
            if (!(eta[0] >= eta[1] - 1e-6 && eta[1] >= eta[2] - 1e-6)) ++bad_trend;
        }
        Outcome o;
        o.pass = bad_bound == 0 && bad_eta == 0 && bad_trend == 0;
        o.detail = std::to_string(merges) + " merges over 50 splits at eps 0.1/0.05/0.025: bound violations " +
                   std::to_string(bad_bound) + ", max eta(0.05) = " + g(max_eta) + ", trend violations " +
                   std::to_string(bad_trend);
        return o;
    });

    std::vector<Closed> closed{{"flat-torus-2d(16)", flat_torus_2d(16)},
                               {"icosphere(3,1)", icosphere(3, 1.0)},
                               {"flat-torus-3d(4)", flat_torus_3d(4)}};
    std::vector<SweepResult> results;

    criterion(8, "end-to-end sweeps", 600.0, [&] {
        Outcome o;
        std::ostringstream d;
        for (const auto& c : closed) {
            results.push_back(sweep(c.K));
            const auto& r = results.back();
            const int n = c.K.dim();
            const double scale = std::pow(c.K.total_volume(), (n - 1.0) / n);
            const double width = width_profile(view_of(r.refined), r.values).width;
            const bool ok = r.cert.pass && is_pl_morse(view_of(r.refined), r.values) &&
                            rel_close(width, r.cert.width, 1e-9) && width <= r.cert.C_n * scale &&
                            width <= 20.0 * scale;
            o.pass = o.pass && ok;
            d << c.name << ": width " << g(width) << " = " << g(width / scale) << " vol^((n-1)/n), " << r.cert.cells
              << " cells" << (ok ? "" : " FAILED") << "; ";
        }
        o.detail = d.str();
        return o;
    });

    criterion(9, "equal-volume bisection", 60.0, [&] {
        Outcome o;
        std::ostringstream d;
        if (results.size() != closed.size()) return Outcome{false, "needs the sweeps of criterion 8"};
        for (std::size_t i = 0; i < closed.size(); ++i) {
            const auto& r = results[i];
            const auto b = bisect_equal_volume(r.refined, r.values);
            const int n = r.refined.dim();
            const double bound = r.cert.C_n * std::pow(b.volume, (n - 1.0) / n);
            const bool ok = std::abs(b.volume_below - b.volume / 2) <= 1e-6 * b.volume &&
                            b.level_volume <= r.cert.width * (1 + 1e-9) && r.cert.width <= bound;
            o.pass = o.pass && ok;
            d << closed[i].name << ": |below - vol/2| = " << g(std::abs(b.volume_below - b.volume / 2)) << ", area "
              << g(b.level_volume) << " <= width " << g(r.cert.width) << (ok ? "" : " FAILED") << "; ";
        }
        o.detail = d.str();
        return o;
    });

    criterion(10, "determinism and scale covariance", 120.0, [&] {
        Outcome o;
        std::ostringstream d;
        if (results.size() != closed.size()) return Outcome{false, "needs the sweeps of criterion 8"};
        for (std::size_t i = 0; i < closed.size(); ++i) {
            const auto& K = closed[i].K;
            const auto& a = results[i];
            const auto again = sweep(K);
            const bool same = artifacts(a) == artifacts(again);
            const auto scaled_run = sweep(scaled(K, 2.0));
            const double expect = std::pow(2.0, K.dim() - 1) * a.cert.width;
            const bool cov = rel_close(scaled_run.cert.width, expect, 1e-9) && scaled_run.cert.pass == a.cert.pass;
            o.pass = o.pass && same && cov;
            d << closed[i].name << ": rerun " << (same ? "identical" : "DIFFERENT") << ", s=2 width ratio "
              << g(scaled_run.cert.width / a.cert.width) << (cov ? "" : " FAILED") << "; ";
        }
        o.detail = d.str();
        return o;
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
