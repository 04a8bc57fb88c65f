#include "sweepout/sweepout.hpp"

#include "sweepout/constants.hpp"
#include "sweepout/distance.hpp"
#include "sweepout/error.hpp"
#include "sweepout/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace sweepout {

namespace {

constexpr double kTau = 1e-6;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// interface values live in (-sigma, sigma), between the two shifted ranges
constexpr double kSigma = 1e-6;

std::string fmt(double x)
{
    std::ostringstream out;
    out.precision(8);
    out << x;
    return out.str();
}

template <class Simplices>
std::vector<int> vertex_set(const Simplices& simplex_of, std::span<const int> ids)
{
    std::vector<int> vs;
    for (int s : ids)
        for (int v : simplex_of(s)) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

/// Apex of a simplex glued onto a placed face, on the far side from `ref`.
Point place_apex(int dim, std::span<const Point> q, std::span<const double> d, const Point& ref)
{
    const double L = distance(q[0], q[1]);
    const Point e1 = (1.0 / L) * (q[1] - q[0]);
    const double x = (d[0] * d[0] - d[1] * d[1] + L * L) / (2.0 * L);
    if (dim == 2) {
        const Point e2{-e1[1], e1[0], 0.0};
        const double y = std::sqrt(std::max(0.0, d[0] * d[0] - x * x));
        const double side = dot(ref - q[0], e2);
        return q[0] + x * e1 + (side > 0 ? -y : y) * e2;
    }
    const Point v = q[2] - q[0];
    const double i = dot(v, e1);
    Point w = v - i * e1;
    const double j = norm(w);
    const Point e2 = (1.0 / j) * w;
    const Point e3 = cross(e1, e2);
    const double y = (d[0] * d[0] - d[2] * d[2] + i * i + j * j - 2.0 * i * x) / (2.0 * j);
    const double z = std::sqrt(std::max(0.0, d[0] * d[0] - x * x - y * y));
    const double side = dot(ref - q[0], e3);
    return q[0] + x * e1 + y * e2 + (side > 0 ? -z : z) * e3;
}

double width_of(const RefinementMesh& M, std::span<const int> subset, std::span<const double> values)
{
    if (subset.empty()) return 0.0;
    return width_profile(M.view(subset), values).width;
}

} // namespace

void make_distinct(std::vector<double>& values, std::span<const int> vertices)
{
    if (vertices.size() < 2) return;
    std::vector<int> order(vertices.begin(), vertices.end());
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return values[a] != values[b] ? values[a] < values[b] : a < b;
    });
    const double range = values[order.back()] - values[order.front()];
    const double gap = 1e-13 * (range > 0.0 ? range : 1.0);
    for (std::size_t k = 1; k < order.size(); ++k) {
        const double prev = values[order[k - 1]];
        double& v = values[order[k]];
        if (v <= prev) v = std::max(prev + gap, std::nextafter(prev, std::numeric_limits<double>::infinity()));
    }
}

// ---------------------------------------------------------------------------
// single cell

CellSweep sweep_single_cell(const FlatComplex& K, std::span<const int> cell_in, double lambda, double scale)
{
    if (cell_in.empty()) throw Error(ErrorCode::EmptyRegion, "empty cell");
    const int n = K.dim();
    std::vector<int> cell(cell_in.begin(), cell_in.end());
    std::sort(cell.begin(), cell.end());
    std::vector<char> in_cell(K.num_simplices(), 0);
    for (int s : cell) in_cell[s] = 1;

    CellSweep out;
    out.volume = K.volume_of(cell);
    const auto verts = vertex_set([&](int s) { return K.simplex(s); }, cell);

    // unroll by gluing simplices across faces in BFS order
    std::vector<Point> X(K.num_vertices());
    std::vector<char> placed(K.num_vertices(), 0);
    std::vector<std::array<Point, 4>> layout(K.num_simplices());
    std::vector<char> seen(K.num_simplices(), 0);
    double mismatch = 0.0;
    auto assign = [&](int v, const Point& p) {
        if (!placed[v]) {
            placed[v] = 1;
            X[v] = p;
        } else {
            mismatch = std::max(mismatch, distance(X[v], p));
        }
    };
    std::queue<int> bfs;
    const int first = cell.front();
    {
        const auto p = K.realization(first);
        for (int i = 0; i <= n; ++i) {
            layout[first][i] = p[i];
            assign(K.simplex(first)[i], p[i]);
        }
        seen[first] = 1;
        bfs.push(first);
    }
    while (!bfs.empty()) {
        const int s = bfs.front();
        bfs.pop();
        const auto sv = K.simplex(s);
        for (int i = 0; i <= n; ++i) {
            const auto cf = K.face_cofaces(K.simplex_face(s, i));
            const int t = cf[0] == s ? cf[1] : cf[0];
            if (t < 0 || !in_cell[t] || seen[t]) continue;
            seen[t] = 1;
            const auto tv = K.simplex(t);
            const auto tp = K.realization(t);
            int apex = -1;
            for (int k = 0; k <= n; ++k)
                if (std::find(sv.begin(), sv.end(), tv[k]) == sv.end()) apex = k;
            std::vector<Point> q;
            std::vector<double> d;
            for (int k = 0; k <= n; ++k) {
                if (k == apex) continue;
                const int local = static_cast<int>(std::find(sv.begin(), sv.end(), tv[k]) - sv.begin());
                q.push_back(layout[s][local]);
                d.push_back(distance(tp[apex], tp[k]));
                layout[t][k] = layout[s][local];
            }
            layout[t][apex] = place_apex(n, q, d, layout[s][i]);
            assign(tv[apex], layout[t][apex]);
            bfs.push(t);
        }
    }
    Point lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (int v : verts)
        for (int k = 0; k < 3; ++k) {
            lo[k] = std::min(lo[k], X[v][k]);
            hi[k] = std::max(hi[k], X[v][k]);
        }
    const double diameter = distance(lo, hi);
    out.discrepancy = diameter > 0.0 ? mismatch / diameter : 0.0;
    out.unrolled = out.discrepancy <= 0.05;

    std::vector<double> f(K.num_vertices(), kNaN);
    if (out.unrolled) {
        Point mean{0, 0, 0};
        for (int v : verts) mean = mean + X[v];
        mean = (1.0 / verts.size()) * mean;
        double C[3][3] = {};
        for (int v : verts) {
            const Point y = X[v] - mean;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) C[a][b] += y[a] * y[b];
        }
        // start near the first axis so isotropic cells sweep along it
        Point d{1.0, 1e-3, 1e-6};
        for (int it = 0; it < 500; ++it) {
            Point next{0, 0, 0};
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) next[a] += C[a][b] * d[b];
            const double len = norm(next);
            if (len == 0.0) break;
            next = (1.0 / len) * next;
            const bool done = distance(next, d) < 1e-15;
            d = next;
            if (done) break;
        }
        for (int k = 0; k < 3; ++k)
            if (d[k] != 0.0) {
                if (d[k] < 0) d = -1.0 * d;
                break;
            }
        out.direction = d;
        for (int v : verts) f[v] = dot(X[v] - mean, d);
    } else {
        const auto G = region_graph(K, cell);
        const int start = verts.front();
        const auto d0 = dijkstra(G, std::span<const int>(&start, 1));
        int far = start;
        for (int v : verts)
            if (d0.dist[v] > d0.dist[far]) far = v;
        const auto d1 = dijkstra(G, std::span<const int>(&far, 1));
        for (int v : verts) f[v] = d1.dist[v];
    }

    double fmin = kInfinity, fmax = -kInfinity;
    for (int v : verts) {
        f[v] /= scale;
        fmin = std::min(fmin, f[v]);
        fmax = std::max(fmax, f[v]);
    }
    const double range = fmax > fmin ? fmax - fmin : 1.0;
    for (std::size_t k = 0; k < verts.size(); ++k) f[verts[k]] += 1e-12 * range * k / verts.size();
    make_distinct(f, verts);
    out.values = std::move(f);

    out.width = width_profile(view_of(K, cell), out.values).width;
    out.budget = std::pow(6.0, n - 1) * omega(n - 1) * std::pow(omega(n), -(n - 1.0) / n) *
                 std::pow(lambda, 2.0 * (n - 1)) * std::pow(out.volume, (n - 1.0) / n) * (1.0 + kTau);
    if (out.width > out.budget)
        throw Error(ErrorCode::SingleCellBudgetExceeded,
                    "cell width " + fmt(out.width) + " exceeds single-cell budget " + fmt(out.budget));
    return out;
}

// ---------------------------------------------------------------------------
// merge

MergeStats merge_stores(RefinementMesh& M, const FlatComplex& base, int f1, int f2, int out, std::span<const char> side,
                        double eps)
{
    if (!(eps > 0.0 && eps < 0.25)) throw Error(ErrorCode::EpsilonTooLarge, "epsilon must lie in (0, 1/4), got " + fmt(eps));
    const int n = M.dim();
    MergeStats st;
    st.epsilon = eps;
    std::vector<char> m1(base.num_simplices()), m2(base.num_simplices()), mD(base.num_simplices());
    for (int s = 0; s < base.num_simplices(); ++s) {
        m1[s] = side[s] == 1;
        m2[s] = side[s] == 2;
        mD[s] = side[s] == 1 || side[s] == 2;
    }
    auto simplex_of = [&](int s) { return M.simplex(s); };
    auto D1 = M.live_simplices(m1), D2 = M.live_simplices(m2);
    st.width1 = width_of(M, D1, M.store(f1));
    st.width2 = width_of(M, D2, M.store(f2));

    std::set<int> S;
    for (int f = 0; f < base.num_faces(); ++f) {
        const auto cf = base.face_cofaces(f);
        if (cf[1] < 0) continue;
        if ((side[cf[0]] == 1 && side[cf[1]] == 2) || (side[cf[0]] == 2 && side[cf[1]] == 1)) {
            S.insert(f);
            st.s_volume += base.face_volume(f);
        }
    }

    // shifted copies: max f1 = -1, min f2 = 1
    const auto V1 = vertex_set(simplex_of, D1), V2 = vertex_set(simplex_of, D2);
    auto shifted = [&](int store, const std::vector<int>& vs, bool low) {
        std::vector<double> v = M.store(store);
        double ext = low ? -kInfinity : kInfinity;
        for (int x : vs) ext = low ? std::max(ext, v[x]) : std::min(ext, v[x]);
        const double shift = vs.empty() ? 0.0 : (low ? -1.0 - ext : 1.0 - ext);
        for (double& x : v) x += shift;
        return M.add_store(std::move(v));
    };
    const int g1 = shifted(f1, V1, true);
    const int g2 = shifted(f2, V2, false);

    std::vector<char> in1(M.num_vertices(), 0), in2(M.num_vertices(), 0);
    for (int v : V1) in1[v] = 1;
    for (int v : V2) in2[v] = 1;
    std::vector<int> iface;
    for (int v = 0; v < M.num_vertices(); ++v)
        if (in1[v] && in2[v]) iface.push_back(v);
    st.interface_vertices = static_cast<int>(iface.size());
    std::vector<char> is_iface(M.num_vertices(), 0);
    for (int v : iface) is_iface[v] = 1;

    std::vector<std::pair<int, int>> cuts;
    for (const auto* D : {&D1, &D2})
        for (int s : *D) {
            const auto sv = M.simplex(s);
            for (int a = 0; a <= n; ++a)
                for (int b = 0; b <= n; ++b)
                    if (a != b && is_iface[sv[a]] && !is_iface[sv[b]]) cuts.push_back({sv[a], sv[b]});
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const int before = M.splits();
    for (const auto& [p, q] : cuts) M.split_edge(p, q, eps);
    st.splits = M.splits() - before;

    D1 = M.live_simplices(m1);
    D2 = M.live_simplices(m2);
    std::vector<double> g(M.num_vertices(), kNaN);
    const auto& s1 = M.store(g1);
    const auto& s2 = M.store(g2);
    for (int v : vertex_set(simplex_of, D1)) g[v] = s1[v];
    for (int v : vertex_set(simplex_of, D2)) g[v] = s2[v];
    for (std::size_t k = 0; k < iface.size(); ++k) g[iface[k]] = -kSigma + 2.0 * kSigma * (k + 1.0) / (iface.size() + 1.0);
    M.drop_store(g1);
    M.drop_store(g2);

    std::vector<int> D;
    std::merge(D1.begin(), D1.end(), D2.begin(), D2.end(), std::back_inserter(D));
    make_distinct(g, vertex_set(simplex_of, D));
    M.store(out) = g;
    st.width = width_of(M, D, g);

    // collar accounting
    is_iface.resize(M.num_vertices(), 0);
    std::vector<int> big1, big2, small;
    for (int s : D) {
        bool collar = false;
        for (int v : M.simplex(s)) collar |= is_iface[v] != 0;
        if (!collar) continue;
        const int o = M.origin(s);
        bool big = false;
        for (int i = 0; i <= n; ++i) big |= S.count(base.simplex_face(o, i)) > 0;
        if (!big)
            small.push_back(s);
        else
            (side[o] == 1 ? big1 : big2).push_back(s);
    }
    if (st.s_volume > 0.0) st.eta = std::max(width_of(M, big1, g), width_of(M, big2, g)) / st.s_volume;
    for (int s : small) {
        const int one[1] = {s};
        st.delta = std::max(st.delta, width_of(M, one, g));
    }
    st.n_small = static_cast<int>(small.size());
    const double top = std::max(st.width1, st.width2);
    st.bound = top + 2.0 * n * st.s_volume * st.eta + n * n * st.n_small * st.delta;
    st.budget = top + 2.0 * n * st.s_volume;
    st.bound_ok = st.width <= st.bound * (1.0 + kTau);
    st.budget_ok = st.width <= st.budget * (1.0 + kTau);
    return st;
}

MergeResult merge(const FlatComplex& K, std::span<const double> f1, std::span<const double> f2, std::span<const char> side,
                  double epsilon)
{
    MergeResult r;
    r.mesh = RefinementMesh(K);
    const int a = r.mesh.add_store({f1.begin(), f1.end()});
    const int b = r.mesh.add_store({f2.begin(), f2.end()});
    const int out = r.mesh.add_store({});
    r.stats = merge_stores(r.mesh, K, a, b, out, side, epsilon);
    r.values = r.mesh.store(out);
    return r;
}

// ---------------------------------------------------------------------------
// recursion

namespace {

struct Recursion {
    const FlatComplex& K;
    const CellStructure& cs;
    const SweepConfig& cfg;
    SweepCertificate& cert;
    std::vector<int> leaves; // trace node ids

    std::string path_of(const std::vector<int>& cells) const
    {
        std::string p = "[";
        for (std::size_t i = 0; i < cells.size() && i < 8; ++i) p += (i ? "," : "") + std::to_string(cells[i]);
        return p + (cells.size() > 8 ? ",...]" : "]");
    }

    int build(std::vector<int> cells)
    {
        const int id = static_cast<int>(cert.trace.size());
        cert.trace.emplace_back();
        double vol = 0.0;
        for (int c : cells) vol += cs.cells[c].volume;
        cert.trace[id].cells = cells;
        cert.trace[id].volume = vol;
        if (cells.size() == 1) {
            cert.trace[id].kind = "cell";
            leaves.push_back(id);
            return id;
        }
        RegionSplit rs;
        try {
            rs = split_region(K, cs, cells, cfg.split);
        } catch (const Error& e) {
            throw Error(e.code(), std::string(e.what()) + " (splitting cells " + path_of(cells) + ")");
        }
        auto& node = cert.trace[id];
        node.kind = "merge";
        node.fallback = rs.result.fallback;
        node.capacitor = std::move(rs.capacitor);
        node.ramp = std::move(rs.ramp);
        node.ramp_failure = rs.ramp_failure;
        node.split_certificates = rs.result.certificates;
        node.cases = rs.result.cases;
        node.log = rs.result.log;
        const int l = build(rs.result.cells1);
        const int r = build(rs.result.cells2);
        cert.trace[id].left = l;
        cert.trace[id].right = r;
        return id;
    }
};

// One center reaches everything, so r_in carries no information; lambda = 1.
CellStructure whole_cell(const FlatComplex& K, double rho, double lambda_max)
{
    CellStructure cs;
    cs.rho = rho;
    cs.lambda_max = lambda_max;
    cs.volume = K.total_volume();
    Cell cell;
    cell.center = 0;
    cell.volume = cs.volume;
    cell.simplices.resize(K.num_simplices());
    std::iota(cell.simplices.begin(), cell.simplices.end(), 0);
    cs.cells.push_back(std::move(cell));
    cs.cell_of.assign(K.num_simplices(), 0);
    cs.skeleton = K.boundary_faces();
    return cs;
}

} // namespace

SweepResult sweep(const FlatComplex& K, const SweepConfig& cfg)
{
    const int n = K.dim();
    const auto T = build_table(n);
    SweepResult res;
    auto& cert = res.cert;
    cert.dim = n;
    cert.volume = K.total_volume();
    cert.C_n = T.C_n;
    cert.epsilon = cfg.epsilon;
    cert.min_epsilon = cfg.epsilon;
    const double L = std::pow(cert.volume, 1.0 / n);

    double rho = cfg.rho.value_or(auto_rho(K, cfg.n_target));
    for (int attempt = 0;; ++attempt) {
        try {
            res.cells = build_cells(K, rho, cfg.cells);
            break;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CertificateFailure) throw;
            if (pack_centers(K, rho, cfg.cells.pack).size() == 1) {
                res.cells = whole_cell(K, rho, cfg.cells.lambda_max);
                cert.log.push_back(std::string(e.what()) + "; one center covers the complex, sweeping it as a single cell");
                break;
            }
            if (cfg.rho || attempt == 8) throw;
            cert.log.push_back(std::string(e.what()) + "; retrying with rho = " + fmt(rho * 1.25));
            rho *= 1.25;
        }
    }
    const auto& cs = res.cells;
    cert.rho = rho;
    cert.lambda = cs.lambda;
    cert.cells = cs.size();
    for (const auto& line : cs.log) cert.log.push_back(line);

    Recursion rec{K, cs, cfg, cert, {}};
    std::vector<int> all(cs.size());
    std::iota(all.begin(), all.end(), 0);
    cert.root = rec.build(all);

    // leaf sweeps are independent
    const int nl = static_cast<int>(rec.leaves.size());
    std::vector<CellSweep> sweeps(nl);
    std::vector<std::exception_ptr> errors(nl);
    parallel_for(nl, [&](int i) {
        try {
            const int c = cert.trace[rec.leaves[i]].cells[0];
            sweeps[i] = sweep_single_cell(K, cs.cells[c].simplices, cs.lambda, L);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    RefinementMesh M(K);
    std::vector<int> store_of(cert.trace.size(), -1);
    for (int i = 0; i < nl; ++i) {
        auto& node = cert.trace[rec.leaves[i]];
        node.width = sweeps[i].width;
        node.cell_budget = sweeps[i].budget;
        node.unrolled = sweeps[i].unrolled;
        store_of[rec.leaves[i]] = M.add_store(std::move(sweeps[i].values));
    }
    sweeps.clear();

    const double p = (n - 1.0) / n;
    std::vector<int> order;
    std::function<void(int)> post = [&](int id) {
        if (cert.trace[id].left >= 0) {
            post(cert.trace[id].left);
            post(cert.trace[id].right);
        }
        order.push_back(id);
    };
    post(cert.root);

    for (int id : order) {
        auto& node = cert.trace[id];
        node.ratio = 0.0;
        if (node.kind == "cell") {
            node.ratio = node.width / std::pow(node.volume, p);
            continue;
        }
        std::vector<char> side(K.num_simplices(), 0);
        for (int c : cert.trace[node.left].cells)
            for (int s : cs.cells[c].simplices) side[s] = 1;
        for (int c : cert.trace[node.right].cells)
            for (int s : cs.cells[c].simplices) side[s] = 2;
        double eps = cfg.epsilon;
        for (int attempt = 0;; ++attempt) {
            RefinementMesh backup = M;
            const int out = M.add_store({});
            node.merge = merge_stores(M, K, store_of[node.left], store_of[node.right], out, side, eps);
            node.retries = attempt;
            if ((node.merge.bound_ok && node.merge.budget_ok) || attempt == cfg.max_halvings) {
                store_of[id] = out;
                break;
            }
            M = std::move(backup);
            eps /= 2.0;
        }
        M.drop_store(store_of[node.left]);
        M.drop_store(store_of[node.right]);
        cert.min_epsilon = std::min(cert.min_epsilon, node.merge.epsilon);
        node.width = node.merge.width;
        node.ratio = node.width / std::pow(node.volume, p);
        cert.max_eta = std::max(cert.max_eta, node.merge.eta);
        if (node.merge.s_volume > 0.0)
            cert.max_factor = std::max(cert.max_factor,
                                       (node.width - std::max(node.merge.width1, node.merge.width2)) / node.merge.s_volume);
        const std::string where = "merge of cells " + rec.path_of(node.cells);
        if (!node.merge.bound_ok) {
            node.pass = false;
            cert.failures.push_back(where + ": width " + fmt(node.width) + " > measured bound " + fmt(node.merge.bound));
        }
        if (!node.merge.budget_ok) {
            node.pass = false;
            cert.failures.push_back(where + ": width " + fmt(node.width) + " > max child + 2n vol(S) = " +
                                    fmt(node.merge.budget));
        }
        const auto& lc = cert.trace[node.left];
        const auto& rc = cert.trace[node.right];
        if (lc.ratio <= T.C_n && rc.ratio <= T.C_n && node.ratio > T.C_n) {
            node.pass = false;
            cert.failures.push_back(where + ": ratio " + fmt(node.ratio) + " > C_n although both children are within");
        }
    }

    res.values = M.store(store_of[cert.root]);
    const auto live = M.live_simplices();
    make_distinct(res.values, vertex_set([&](int s) { return M.simplex(s); }, live));
    cert.pl_morse = is_pl_morse(M.view(live), res.values);
    res.refined = M.to_complex();
    res.profile = width_profile(view_of(res.refined), res.values);
    cert.width = res.profile.width;
    cert.bound = T.C_n * std::pow(cert.volume, p);
    cert.slack = cert.bound - cert.width;
    if (!cert.pl_morse) cert.failures.push_back("final function has repeated vertex values");
    cert.pass = cert.failures.empty() && cert.width <= cert.bound;
    if (cert.width > cert.bound) {
        std::ostringstream msg;
        msg << "width " << cert.width << " > C_n vol^((n-1)/n) = " << cert.bound << "; trace:";
        for (int id : order)
            msg << " [" << cert.trace[id].kind << " cells=" << cert.trace[id].cells.size()
                << " W=" << cert.trace[id].width << "]";
        throw Error(ErrorCode::GlobalBudgetExceeded, msg.str());
    }
    return res;
}

// ---------------------------------------------------------------------------
// bisection

Bisection bisect_equal_volume(const FlatComplex& K, std::span<const double> values)
{
    Bisection b;
    const auto view = view_of(K);
    b.volume = K.total_volume();
    const double half = 0.5 * b.volume;
    const auto bp = used_values(view, values);
    if (bp.empty()) throw Error(ErrorCode::EmptyRegion, "complex has no vertices");
    auto F = [&](double t) { return sublevel_set_volume(view, values, t); };
    int lo = 0, hi = static_cast<int>(bp.size()) - 1;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        (F(bp[mid]) < half ? lo : hi) = mid;
    }
    double a = bp[lo], c = bp[hi];
    for (int it = 0; it < 200 && c > a; ++it) {
        const double m = 0.5 * (a + c);
        if (m <= a || m >= c) break;
        const double fm = F(m);
        if (std::abs(fm - half) <= 1e-12 * b.volume) {
            a = c = m;
            break;
        }
        (fm < half ? a : c) = m;
    }
    b.t = regular_level(bp, 0.5 * (a + c)).t;
    b.volume_below = F(b.t);
    b.level_volume = level_set_volume(view, values, b.t);
    b.chain = level_chain(K, values, b.t);
    b.chain_volume = chain_volume(K, b.chain);

    std::vector<char> above(K.num_simplices());
    for (int s = 0; s < K.num_simplices(); ++s) {
        double m = 0.0;
        for (int v : K.simplex(s)) m += values[v];
        above[s] = m / (K.dim() + 1) > b.t;
    }
    std::vector<char> seen(K.num_simplices(), 0);
    for (int s0 = 0; s0 < K.num_simplices(); ++s0) {
        if (seen[s0]) continue;
        (above[s0] ? b.components_above : b.components_below) += 1;
        std::vector<int> stack{s0};
        seen[s0] = 1;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int i = 0; i <= K.dim(); ++i) {
                const auto cf = K.face_cofaces(K.simplex_face(x, i));
                const int y = cf[0] == x ? cf[1] : cf[0];
                if (y >= 0 && !seen[y] && above[y] == above[x]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
        }
    }
    return b;
}

} // namespace sweepout
