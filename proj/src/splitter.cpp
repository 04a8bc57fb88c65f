#include "sweepout/splitter.hpp"

#include "sweepout/constants.hpp"
#include "sweepout/distance.hpp"
#include "sweepout/error.hpp"
#include "sweepout/maxflow.hpp"
#include "sweepout/width.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace sweepout {

namespace {

constexpr double kTau = 1e-6;

std::string fmt(double x)
{
    std::ostringstream out;
    out.precision(6);
    out << x;
    return out.str();
}

std::vector<char> mask_of(int n, std::span<const int> ids)
{
    std::vector<char> m(n, 0);
    for (int i : ids) m[i] = 1;
    return m;
}

std::vector<int> vertices_of(const FlatComplex& K, std::span<const int> simplices)
{
    std::vector<int> vs;
    for (int s : simplices)
        for (int v : K.simplex(s)) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

} // namespace

// ---------------------------------------------------------------------------
// capacitor

Capacitor try_build_capacitor(const FlatComplex& K, std::span<const int> region_in)
{
    Capacitor cap;
    cap.region.assign(region_in.begin(), region_in.end());
    std::sort(cap.region.begin(), cap.region.end());
    cap.region.erase(std::unique(cap.region.begin(), cap.region.end()), cap.region.end());
    if (cap.region.empty()) throw Error(ErrorCode::EmptyRegion, "capacitor on an empty region");

    const int dim = K.dim();
    const auto T = build_table(dim);
    const auto in_region = mask_of(K.num_simplices(), cap.region);
    cap.region_volume = K.volume_of(cap.region);
    cap.lambda_n = T.lambda_n;
    cap.r = T.r_coefficient * std::pow(cap.region_volume, 1.0 / dim);
    const double r = cap.r;
    const auto G = region_graph(K, cap.region);
    for (int v = 0; v < G.size(); ++v)
        for (int k = G.offsets[v]; k < G.offsets[v + 1]; ++k) cap.h = std::max(cap.h, G.weights[k]);

    const auto verts = vertices_of(K, cap.region);
    // region simplices whose barycenter lies in the open r-ball around x; when
    // the ball is smaller than the mesh, the nearest incident simplex
    std::vector<double> dist(K.num_vertices(), kInfinity);
    std::vector<int> touched;
    auto bary_distance = [&](int s) {
        const auto sv = K.simplex(s);
        const auto p = K.realization(s);
        const Point b = K.barycenter(s);
        double best = kInfinity;
        for (std::size_t i = 0; i < sv.size(); ++i)
            if (dist[sv[i]] < kInfinity) best = std::min(best, dist[sv[i]] + distance(p[i], b));
        return best;
    };
    auto ball = [&](int x) {
        for (int v : touched) dist[v] = kInfinity;
        touched.clear();
        using Entry = std::pair<double, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        dist[x] = 0.0;
        touched.push_back(x);
        heap.push({0.0, x});
        while (!heap.empty()) {
            const auto [d, v] = heap.top();
            heap.pop();
            if (d != dist[v]) continue;
            for (int k = G.offsets[v]; k < G.offsets[v + 1]; ++k) {
                const int w = G.targets[k];
                const double nd = d + G.weights[k];
                if (nd >= r || nd >= dist[w]) continue;
                if (dist[w] == kInfinity) touched.push_back(w);
                dist[w] = nd;
                heap.push({nd, w});
            }
        }
        std::vector<int> out;
        for (int v : touched)
            for (int s : K.vertex_simplices(v))
                if (in_region[s] && bary_distance(s) < r) out.push_back(s);
        if (out.empty()) {
            int nearest = -1;
            double nd = kInfinity;
            for (int s : K.vertex_simplices(x)) {
                if (!in_region[s]) continue;
                const double d = bary_distance(s);
                if (d < nd || (d == nd && s < nearest)) {
                    nd = d;
                    nearest = s;
                }
            }
            out.push_back(nearest);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };

    std::vector<char> covered(K.num_simplices(), 0);
    double covered_volume = 0.0;
    auto gain_of = [&](const std::vector<int>& b) {
        double g = 0.0;
        for (int s : b)
            if (!covered[s]) g += K.simplex_volume(s);
        return g;
    };
    // lazy greedy: stale gains only overestimate, so re-check the top
    using Entry = std::pair<double, int>; // gain, -vertex
    std::priority_queue<Entry> heap;
    for (int v : verts) heap.push({gain_of(ball(v)), -v});
    const double target = cap.lambda_n * cap.region_volume;
    while (covered_volume < target && !heap.empty()) {
        const auto [stale, negv] = heap.top();
        heap.pop();
        const auto b = ball(-negv);
        const double g = gain_of(b);
        if (g <= 0.0) continue;
        if (!heap.empty() && g < heap.top().first) {
            heap.push({g, negv});
            continue;
        }
        cap.ball_centers.push_back(-negv);
        for (int s : b)
            if (!covered[s]) {
                covered[s] = 1;
                covered_volume += K.simplex_volume(s);
            }
        cap.greedy_coverage.push_back(covered_volume);
    }
    for (int s : cap.region)
        if (covered[s]) cap.A1.push_back(s);
    cap.volume1 = K.volume_of(cap.A1);

    const auto d1 = dijkstra(G, cap.ball_centers, 2.0 * r);
    for (int s : cap.region) {
        bool near = false;
        for (int v : K.simplex(s)) near |= d1.dist[v] < 2.0 * r;
        if (!near) cap.A2.push_back(s);
    }
    cap.volume2 = K.volume_of(cap.A2);
    cap.fraction1 = cap.volume1 / cap.region_volume;
    cap.fraction2 = cap.volume2 / cap.region_volume;

    // barycenter separation, seeded from A1 barycenters
    std::vector<Seed> seeds;
    for (int s : cap.A1) {
        const auto sv = K.simplex(s);
        const auto p = K.realization(s);
        const Point b = K.barycenter(s);
        for (std::size_t i = 0; i < sv.size(); ++i) seeds.push_back({sv[i], distance(p[i], b)});
    }
    const auto db = dijkstra(G, std::span<const Seed>(seeds));
    cap.separation = cap.A2.empty() ? 0.0 : kInfinity;
    for (int s : cap.A2) {
        const auto sv = K.simplex(s);
        const auto p = K.realization(s);
        const Point b = K.barycenter(s);
        for (std::size_t i = 0; i < sv.size(); ++i) cap.separation = std::min(cap.separation, db.dist[sv[i]] + distance(p[i], b));
    }

    const double lam = cap.lambda_n;
    if (cap.fraction1 < lam) {
        cap.shortfall = true;
        cap.shortfall_reason = "A1 fraction " + fmt(cap.fraction1) + " < lambda_n = " + fmt(lam);
    } else if (cap.volume1 > 2.0 * lam * cap.region_volume * (1.0 + kTau)) {
        cap.shortfall = true;
        cap.shortfall_reason = "A1 fraction " + fmt(cap.fraction1) + " > 2 lambda_n = " + fmt(2 * lam) +
                               " (one r-ball already covers too much)";
    } else if (cap.fraction2 < lam) {
        cap.shortfall = true;
        cap.shortfall_reason = "A2 fraction " + fmt(cap.fraction2) + " < lambda_n = " + fmt(lam);
    }
    return cap;
}

Capacitor build_capacitor(const FlatComplex& K, std::span<const int> region)
{
    auto cap = try_build_capacitor(K, region);
    if (cap.shortfall)
        throw Error(ErrorCode::CapacitorShortfall, cap.shortfall_reason + " (fractions " + fmt(cap.fraction1) + ", " +
                                                       fmt(cap.fraction2) + ")");
    return cap;
}

// ---------------------------------------------------------------------------
// ramp split

RampSplit ramp_split(const FlatComplex& K, const Capacitor& cap)
{
    if (cap.A1.empty() || cap.A2.empty()) throw Error(ErrorCode::BadParams, "ramp split needs nonempty A1 and A2");
    const int dim = K.dim();
    const auto T = build_table(dim);
    RampSplit out;
    out.r = cap.r;
    const double vol = cap.region_volume;
    const auto in_region = mask_of(K.num_simplices(), cap.region);

    const auto G = region_graph(K, cap.region);
    const auto d = dijkstra(G, vertices_of(K, cap.A1), cap.r);
    out.ramp.assign(K.num_vertices(), std::numeric_limits<double>::quiet_NaN());
    for (int v : vertices_of(K, cap.region)) out.ramp[v] = std::clamp(1.0 - d.dist[v] / cap.r, 0.0, 1.0);

    const auto view = view_of(K, cap.region);
    const auto sorted = used_values(view, out.ramp);
    std::vector<double> bary(K.num_simplices(), 0.0);
    for (int s : cap.region) {
        for (int v : K.simplex(s)) bary[s] += out.ramp[v];
        bary[s] /= dim + 1;
    }
    // interior region faces with the barycentric value interval they separate
    struct Cut {
        double lo, hi, vol;
        int face;
    };
    std::vector<Cut> cuts;
    for (int f = 0; f < K.num_faces(); ++f) {
        const auto cf = K.face_cofaces(f);
        if (cf[1] < 0 || !in_region[cf[0]] || !in_region[cf[1]]) continue;
        const double a = bary[cf[0]], b = bary[cf[1]];
        if (a != b) cuts.push_back({std::min(a, b), std::max(a, b), K.face_volume(f), f});
    }

    // the chosen level must leave A1 above and A2 below
    double hi1 = 1.0, lo2 = 0.0;
    for (int s : cap.A1) hi1 = std::min(hi1, bary[s]);
    for (int s : cap.A2) lo2 = std::max(lo2, bary[s]);

    out.budget = T.A_n * std::pow(vol, (dim - 1.0) / dim) * (1.0 + kTau);
    out.coarea_bound = vol / cap.r * (1.0 + kTau);
    for (int M : {64, 256}) {
        out.levels = M;
        out.densified = M > 64;
        out.grid.assign(M, 0.0);
        out.level_volumes.assign(M, 0.0);
        out.snapped_volumes.assign(M, 0.0);
        int best = -1;
        for (int j = 0; j < M; ++j) {
            const double t = regular_level(sorted, (j + 0.5) / M).t;
            out.grid[j] = t;
            out.level_volumes[j] = level_set_volume(view, out.ramp, t);
            double sv = 0.0;
            for (const auto& c : cuts)
                if (c.lo <= t && t < c.hi) sv += c.vol;
            out.snapped_volumes[j] = sv;
            const bool separates = lo2 <= t && t < hi1;
            if (separates && (best < 0 || sv < out.snapped_volumes[best])) best = j;
        }
        double avg = 0.0;
        for (double x : out.level_volumes) avg += x;
        out.coarea_average = avg / M;
        if (out.coarea_average > out.coarea_bound)
            throw Error(ErrorCode::CoareaBudgetExceeded, "grid average level volume " + fmt(out.coarea_average) +
                                                             " exceeds vol/r = " + fmt(out.coarea_bound));
        if (best < 0)
            throw Error(ErrorCode::CapacitorShortfall, "no grid level separates A1 (ramp >= " + fmt(hi1) +
                                                           ") from A2 (ramp <= " + fmt(lo2) + ")");
        out.t = out.grid[best];
        out.chain_volume = out.snapped_volumes[best];
        if (out.chain_volume <= out.budget) break;
        if (M == 256)
            throw Error(ErrorCode::CoareaBudgetExceeded, "best snapped level volume " + fmt(out.chain_volume) +
                                                             " exceeds A_n vol^((n-1)/n) = " + fmt(out.budget));
    }
    for (const auto& c : cuts)
        if (c.lo <= out.t && out.t < c.hi) out.chain.push_back(c.face);
    std::sort(out.chain.begin(), out.chain.end());
    for (int s : cap.region) (bary[s] > out.t ? out.side1 : out.side2).push_back(s);
    return out;
}

// ---------------------------------------------------------------------------
// skeletonize

namespace {

struct RegionInfo {
    std::vector<int> cells; // sorted cell ids
    std::unordered_map<int, int> local; // cell id -> position
    std::vector<int> simplices;
    std::vector<char> in_region;
    double volume = 0.0;
};

RegionInfo region_info(const FlatComplex& K, const CellStructure& cs, std::span<const int> region_cells)
{
    RegionInfo R;
    R.cells.assign(region_cells.begin(), region_cells.end());
    std::sort(R.cells.begin(), R.cells.end());
    R.cells.erase(std::unique(R.cells.begin(), R.cells.end()), R.cells.end());
    for (int i = 0; i < static_cast<int>(R.cells.size()); ++i) {
        const int c = R.cells[i];
        if (c < 0 || c >= cs.size()) throw Error(ErrorCode::BadParams, "cell id out of range");
        R.local[c] = i;
        R.simplices.insert(R.simplices.end(), cs.cells[c].simplices.begin(), cs.cells[c].simplices.end());
    }
    std::sort(R.simplices.begin(), R.simplices.end());
    R.in_region = mask_of(K.num_simplices(), R.simplices);
    R.volume = K.volume_of(R.simplices);
    return R;
}

/// Interface volume between cells of the region, keyed by local cell pair.
std::map<std::pair<int, int>, double> region_adjacency(const FlatComplex& K, const CellStructure& cs, const RegionInfo& R)
{
    std::map<std::pair<int, int>, double> adj;
    for (int f = 0; f < K.num_faces(); ++f) {
        const auto cf = K.face_cofaces(f);
        if (cf[1] < 0 || !R.in_region[cf[0]] || !R.in_region[cf[1]]) continue;
        const int a = cs.cell_of[cf[0]], b = cs.cell_of[cf[1]];
        if (a == b) continue;
        adj[std::minmax(R.local.at(a), R.local.at(b))] += K.face_volume(f);
    }
    return adj;
}

/// Fills D1/D2/S/volumes from a side per local cell (1 = D1).
void finish_assignment(const FlatComplex& K, const CellStructure& cs, const RegionInfo& R, const std::vector<char>& side,
                       SplitResult& out)
{
    out.cells1.clear();
    out.cells2.clear();
    out.D1.clear();
    out.D2.clear();
    for (int i = 0; i < static_cast<int>(R.cells.size()); ++i) {
        const int c = R.cells[i];
        (side[i] ? out.cells1 : out.cells2).push_back(c);
        auto& D = side[i] ? out.D1 : out.D2;
        D.insert(D.end(), cs.cells[c].simplices.begin(), cs.cells[c].simplices.end());
    }
    std::sort(out.D1.begin(), out.D1.end());
    std::sort(out.D2.begin(), out.D2.end());
    std::vector<char> in1 = mask_of(K.num_simplices(), out.D1);
    out.S.clear();
    for (int f = 0; f < K.num_faces(); ++f) {
        const auto cf = K.face_cofaces(f);
        if (cf[1] < 0 || !R.in_region[cf[0]] || !R.in_region[cf[1]]) continue;
        if (in1[cf[0]] != in1[cf[1]]) out.S.push_back(f);
    }
    out.volume = R.volume;
    out.volume1 = K.volume_of(out.D1);
    out.volume2 = K.volume_of(out.D2);
    out.chain_volume = chain_volume(K, out.S);
}

void certify(const FlatComplex& K, SplitResult& out)
{
    const int n = K.dim();
    const auto T = build_table(n);
    const double scale = std::pow(out.volume, (n - 1.0) / n);
    out.certificates.push_back({"chain_budget", out.chain_volume, T.A_prime * scale * (1.0 + kTau), true, false});
    if (out.fallback)
        out.certificates.push_back({"single_cell_interface", out.chain_volume,
                                    n * std::pow(omega(n), 1.0 / n) * std::pow(3.0, n - 1) * scale * (1.0 + kTau), true,
                                    false});
    out.certificates.push_back({"balance_D1", out.volume1, T.alpha_prime * out.volume * (1.0 - kTau), false, false});
    out.certificates.push_back({"balance_D2", out.volume2, T.alpha_prime * out.volume * (1.0 - kTau), false, false});
    if (out.fallback) {
        const double a = omega(n) * std::pow(T.alpha_n / (6.0 * T.K_n * T.A_prime), n);
        out.certificates.push_back({"single_cell_balance_D1", out.volume1, a * out.volume * (1.0 - kTau), false, false});
        out.certificates.push_back({"single_cell_balance_D2", out.volume2, a * out.volume * (1.0 - kTau), false, false});
    }
    for (auto& c : out.certificates) c.pass = c.upper ? c.achieved <= c.required : c.achieved >= c.required;
    for (const auto& c : out.certificates) {
        if (c.pass) continue;
        std::ostringstream msg;
        msg << c.name << ": achieved " << c.achieved << (c.upper ? " > " : " < ") << "required " << c.required
            << " (vol " << out.volume << ", D1 " << out.volume1 << ", D2 " << out.volume2 << ", S " << out.chain_volume
            << ")";
        throw Error(c.upper ? ErrorCode::ChainBudgetFailure : ErrorCode::BalanceFailure, msg.str());
    }
}

void classify_cases(const FlatComplex& K, const CellStructure& cs, const RegionInfo& R, const Chain& raw,
                    std::span<const char> provisional, const std::vector<char>& side, SplitResult& out)
{
    const int n = K.dim();
    std::map<int, Chain> pieces;
    for (int f : raw) {
        const auto cf = K.face_cofaces(f);
        if (cf[1] < 0 || !R.in_region[cf[0]] || !R.in_region[cf[1]]) continue;
        if (cs.cell_of[cf[0]] == cs.cell_of[cf[1]]) pieces[cs.cell_of[cf[0]]].push_back(f);
    }
    for (auto& [c, piece] : pieces) {
        CellCase cc;
        cc.cell = c;
        cc.piece_volume = chain_volume(K, piece);
        cc.replaced_volume = -1.0;
        const char final_side = side[R.local.at(c)];
        for (int s : cs.cells[c].simplices)
            if (!provisional.empty() && (provisional[s] != 0) != (final_side != 0)) cc.transferred_volume += K.simplex_volume(s);

        const double ball = cs.lambda * cs.rho;
        const int ctr = cs.cells[c].center;
        const auto d = geodesic_distance(K, std::span<const int>(&ctr, 1), {false, ball + K.longest_edge(), false}).dist;
        bool central = false;
        for (int f : piece) {
            const auto fv = K.face_vertices(f);
            for (int v : fv) central |= d[v] < ball;
        }
        if (!central) {
            cc.kind = "project";
            cc.budget = std::pow(36.0, n - 1) * std::pow(cs.lambda, 2.0 * (n - 1)) * cc.piece_volume;
            try {
                cc.replaced_volume = chain_volume(K, radial_project(K, cs, c, piece));
            } catch (const Error& e) {
                if (e.code() == ErrorCode::TooCentral) {
                    central = true;
                } else {
                    cc.note = e.what();
                }
            }
        }
        if (central) {
            cc.kind = "boundary-minimal";
            try {
                cc.replaced_volume =
                    chain_volume(K, min_chain_with_boundary(K, cs.cells[c].simplices, boundary(K, piece)));
            } catch (const Error& e) {
                cc.note = std::string(e.what()) + "; raw piece kept";
            }
        }
        out.cases.push_back(std::move(cc));
    }
}

} // namespace

SplitResult split_off_cell(const FlatComplex& K, const CellStructure& cs, std::span<const int> region_cells)
{
    const auto R = region_info(K, cs, region_cells);
    const int N = static_cast<int>(R.cells.size());
    if (N < 2) throw Error(ErrorCode::BadParams, "a region of one cell cannot be split");
    std::vector<double> iface(N, 0.0);
    for (const auto& [key, w] : region_adjacency(K, cs, R)) {
        iface[key.first] += w;
        iface[key.second] += w;
    }
    const int pick = static_cast<int>(std::min_element(iface.begin(), iface.end()) - iface.begin());
    SplitResult out;
    out.fallback = true;
    std::vector<char> side(N, 0);
    side[pick] = 1;
    finish_assignment(K, cs, R, side, out);
    out.log.push_back("one-cell split: cell " + std::to_string(R.cells[pick]) + " against the rest");
    certify(K, out);
    return out;
}

SplitResult skeletonize(const FlatComplex& K, const CellStructure& cs, std::span<const int> region_cells,
                        const Chain& raw_chain, std::span<const char> provisional_in, std::span<const int> A1,
                        std::span<const int> A2, const SkeletonizeOptions& opt)
{
    const auto R = region_info(K, cs, region_cells);
    const int N = static_cast<int>(R.cells.size());
    if (N < 2) throw Error(ErrorCode::BadParams, "a region of one cell cannot be split");
    const int dim = K.dim();
    const double n0 = opt.n0_override.value_or(build_table(dim).N0);

    std::vector<char> labels(K.num_simplices(), 0);
    if (!provisional_in.empty())
        for (int s : R.simplices) labels[s] = provisional_in[s] != 0;

    if (N < n0) {
        auto out = split_off_cell(K, cs, region_cells);
        std::vector<char> side(N, 0);
        for (int c : out.cells1) side[R.local.at(c)] = 1;
        classify_cases(K, cs, R, raw_chain, labels, side, out);
        out.log.push_back("cell count " + std::to_string(N) + " below N_0");
        return out;
    }

    SplitResult out;
    const auto terminal1 = mask_of(K.num_simplices(), A1);
    const auto terminal2 = mask_of(K.num_simplices(), A2);

    // components of a label class inside one cell are moved across
    {
        std::vector<int> comp(K.num_simplices(), -1);
        double side_vol[2] = {0.0, 0.0};
        for (int s : R.simplices) side_vol[labels[s] ? 1 : 0] += K.simplex_volume(s);
        for (int s0 : R.simplices) {
            if (comp[s0] >= 0) continue;
            std::vector<int> members{s0}, stack{s0};
            comp[s0] = s0;
            while (!stack.empty()) {
                const int x = stack.back();
                stack.pop_back();
                for (int i = 0; i <= dim; ++i) {
                    const auto cf = K.face_cofaces(K.simplex_face(x, i));
                    const int y = cf[0] == x ? cf[1] : cf[0];
                    if (y < 0 || !R.in_region[y] || comp[y] >= 0 || labels[y] != labels[x]) continue;
                    comp[y] = s0;
                    members.push_back(y);
                    stack.push_back(y);
                }
            }
            const int c = cs.cell_of[s0];
            bool single_cell = true, terminal = false;
            double vol = 0.0;
            for (int s : members) {
                single_cell &= cs.cell_of[s] == c;
                terminal |= terminal1[s] || terminal2[s];
                vol += K.simplex_volume(s);
            }
            const int l = labels[s0];
            if (!single_cell || terminal || vol >= side_vol[l]) continue;
            for (int s : members) labels[s] = !l;
            side_vol[l] -= vol;
            side_vol[!l] += vol;
            out.log.push_back("moved a component of " + std::to_string(members.size()) + " simplices inside cell " +
                              std::to_string(c) + " to the other side");
        }
    }

    // majority volume per cell, ties to D1
    std::vector<char> side(N, 0);
    for (int i = 0; i < N; ++i) {
        double v1 = 0.0, v0 = 0.0;
        for (int s : cs.cells[R.cells[i]].simplices) (labels[s] ? v1 : v0) += K.simplex_volume(s);
        side[i] = v1 >= v0;
    }

    const auto adj = region_adjacency(K, cs, R);
    auto cut_of = [&](const std::vector<char>& sd) {
        double c = 0.0;
        for (const auto& [key, w] : adj)
            if (sd[key.first] != sd[key.second]) c += w;
        return c;
    };

    if (opt.mincut_refine && !A1.empty() && !A2.empty()) {
        std::vector<char> t1(N, 0), t2(N, 0);
        for (int s : A1)
            if (R.in_region[s]) t1[R.local.at(cs.cell_of[s])] = 1;
        for (int s : A2)
            if (R.in_region[s]) t2[R.local.at(cs.cell_of[s])] = 1;
        bool clash = false, has1 = false, has2 = false;
        for (int i = 0; i < N; ++i) {
            clash |= t1[i] && t2[i];
            has1 |= t1[i];
            has2 |= t2[i];
        }
        if (clash) {
            out.log.push_back("min-cut refinement skipped: a cell holds both A1 and A2");
        } else if (has1 && has2) {
            double total = 1.0;
            for (const auto& [key, w] : adj) total += w;
            MaxFlow flow(N + 2);
            const int src = N, snk = N + 1;
            for (const auto& [key, w] : adj) flow.add_edge(key.first, key.second, w);
            for (int i = 0; i < N; ++i) {
                if (t1[i]) flow.add_arc(src, i, total);
                if (t2[i]) flow.add_arc(i, snk, total);
            }
            flow.solve(src, snk);
            std::vector<char> refined(N);
            for (int i = 0; i < N; ++i) refined[i] = flow.source_side()[i];
            bool majority_respects = true;
            for (int i = 0; i < N; ++i) majority_respects &= !(t1[i] && !side[i]) && !(t2[i] && side[i]);
            const double before = cut_of(side), after = cut_of(refined);
            if (after < before || !majority_respects) {
                out.log.push_back("min-cut refinement accepted: interface " + fmt(before) + " -> " + fmt(after));
                side = refined;
                out.refined = true;
            }
        }
    }

    const bool any1 = std::find(side.begin(), side.end(), 1) != side.end();
    const bool any0 = std::find(side.begin(), side.end(), 0) != side.end();
    if (!any1 || !any0) {
        auto fb = split_off_cell(K, cs, region_cells);
        fb.log.insert(fb.log.begin(), out.log.begin(), out.log.end());
        fb.log.push_back("rounding left one side empty");
        std::vector<char> sd(N, 0);
        for (int c : fb.cells1) sd[R.local.at(c)] = 1;
        classify_cases(K, cs, R, raw_chain, labels, sd, fb);
        return fb;
    }

    finish_assignment(K, cs, R, side, out);
    classify_cases(K, cs, R, raw_chain, labels, side, out);
    certify(K, out);
    return out;
}

RegionSplit split_region(const FlatComplex& K, const CellStructure& cs, std::span<const int> region_cells,
                         const SkeletonizeOptions& opt)
{
    RegionSplit rs;
    const auto R = region_info(K, cs, region_cells);
    rs.capacitor = try_build_capacitor(K, R.simplices);
    if (!rs.capacitor->shortfall) {
        try {
            rs.ramp = ramp_split(K, *rs.capacitor);
        } catch (const Error& e) {
            rs.ramp_failure = e.what();
        }
    } else {
        rs.ramp_failure = "CapacitorShortfall: " + rs.capacitor->shortfall_reason;
    }
    if (rs.ramp) {
        std::vector<char> provisional(K.num_simplices(), 0);
        for (int s : rs.ramp->side1) provisional[s] = 1;
        rs.result = skeletonize(K, cs, region_cells, rs.ramp->chain, provisional, rs.capacitor->A1, rs.capacitor->A2, opt);
    } else {
        rs.result = split_off_cell(K, cs, region_cells);
        rs.result.log.push_back("no ramp split (" + rs.ramp_failure + ")");
    }
    return rs;
}

} // namespace sweepout
