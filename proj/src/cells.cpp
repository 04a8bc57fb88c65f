#include "sweepout/cells.hpp"

#include "sweepout/constants.hpp"
#include "sweepout/distance.hpp"
#include "sweepout/error.hpp"
#include "sweepout/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace sweepout {

namespace {

constexpr double kTau = 1e-6;

/// Single-source Dijkstra with a cutoff that only resets what it touched,
/// so repeated small searches stay proportional to the ball size.
class BallSearch {
public:
    explicit BallSearch(const FlatComplex& K) : K_(K), dist_(K.num_vertices(), kInfinity) {}

    template <class Visit>
    void run(int source, double cutoff, Visit&& visit)
    {
        for (int v : touched_) dist_[v] = kInfinity;
        touched_.clear();
        using Entry = std::pair<double, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        dist_[source] = 0.0;
        touched_.push_back(source);
        heap.push({0.0, source});
        while (!heap.empty()) {
            const auto [d, v] = heap.top();
            heap.pop();
            if (d != dist_[v]) continue;
            visit(v, d);
            for (const auto& nb : K_.neighbors(v)) {
                const double nd = d + nb.length;
                if (nd > cutoff || nd >= dist_[nb.vertex]) continue;
                if (dist_[nb.vertex] == kInfinity) touched_.push_back(nb.vertex);
                dist_[nb.vertex] = nd;
                heap.push({nd, nb.vertex});
            }
        }
    }

    double dist(int v) const { return dist_[v]; }

private:
    const FlatComplex& K_;
    std::vector<double> dist_;
    std::vector<int> touched_;
};

std::string fmt(double x)
{
    std::ostringstream out;
    out.precision(6);
    out << x;
    return out.str();
}

/// Graph distance from a vertex field to the barycenter of face f.
double face_distance(const FlatComplex& K, const std::vector<double>& d, int f)
{
    const int s = K.face_cofaces(f)[0];
    const auto sv = K.simplex(s);
    const auto p = K.realization(s);
    const auto fv = K.face_vertices(f);
    Point fb{0, 0, 0};
    std::vector<int> local;
    for (int v : fv) {
        const int i = static_cast<int>(std::find(sv.begin(), sv.end(), v) - sv.begin());
        local.push_back(i);
        fb = fb + p[i];
    }
    fb = (1.0 / fv.size()) * fb;
    double best = kInfinity;
    for (std::size_t k = 0; k < fv.size(); ++k) best = std::min(best, d[fv[k]] + distance(p[local[k]], fb));
    return best;
}

} // namespace

std::vector<int> pack_centers(const FlatComplex& K, double rho, const PackOptions& opt)
{
    if (!(rho > 0.0) || !std::isfinite(rho)) throw Error(ErrorCode::BadParams, "rho must be positive");
    const int nv = K.num_vertices();
    std::vector<char> used(nv, 0);
    for (const auto& s : K.simplices())
        for (int i = 0; i <= K.dim(); ++i) used[s[i]] = 1;

    std::vector<int> order;
    for (int v = 0; v < nv; ++v)
        if (used[v]) order.push_back(v);

    if (!K.boundary_faces().empty()) {
        std::vector<int> bverts;
        for (int v = 0; v < nv; ++v)
            if (K.boundary_vertex_mask()[v]) bverts.push_back(v);
        const auto db = geodesic_distance(K, bverts).dist;
        const double band = 2.0 * rho;
        // the 2 rho band around the boundary holds no centers unless nothing is outside it
        std::vector<int> inner;
        for (int v : order)
            if (db[v] >= band) inner.push_back(v);
        if (!inner.empty()) order = std::move(inner);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return db[a] < db[b]; });
    }

    std::vector<double> nearest(nv, kInfinity);
    std::vector<int> centers;
    BallSearch search(K);
    const double sep = 4.0 * rho;
    for (int v : order) {
        if (nearest[v] <= sep) continue;
        centers.push_back(v);
        if (centers.size() > opt.max_centers)
            throw Error(ErrorCode::RhoTooSmall, "more than " + std::to_string(opt.max_centers) + " centers at rho = " + fmt(rho));
        search.run(v, sep, [&](int w, double d) { nearest[w] = std::min(nearest[w], d); });
    }
    if (centers.size() < 2 && K.num_simplices() > 1 && !opt.allow_single)
        throw Error(ErrorCode::RhoTooLarge, "rho = " + fmt(rho) + " leaves a single center");
    return centers;
}

std::vector<int> cell_boundary_faces(const FlatComplex& K, std::span<const int> cell_simplices)
{
    std::vector<int> faces;
    for (int s : cell_simplices)
        for (int i = 0; i <= K.dim(); ++i) faces.push_back(K.simplex_face(s, i));
    return make_chain(std::move(faces));
}

CellStructure voronoi_cells(const FlatComplex& K, std::span<const int> centers_in, double rho, const CellOptions& opt)
{
    if (centers_in.empty()) throw Error(ErrorCode::BadParams, "no centers");
    if (!(rho > 0.0)) throw Error(ErrorCode::BadParams, "rho must be positive");
    const int ns = K.num_simplices();
    const int dim = K.dim();
    CellStructure cs;
    cs.rho = rho;
    cs.lambda_max = opt.lambda_max;
    cs.volume = K.total_volume();

    const auto field = geodesic_distance(K, centers_in);
    if (field.disconnected) throw Error(ErrorCode::DisconnectedComplex, "some vertex is unreachable from every center");

    // nearest center to each barycenter, ties to the lower center index
    std::vector<int> owner(ns);
    for (int s = 0; s < ns; ++s) {
        const auto sv = K.simplex(s);
        const auto p = K.realization(s);
        const Point b = K.barycenter(s);
        std::pair<double, int> best{kInfinity, 0};
        for (int i = 0; i <= dim; ++i) best = std::min(best, {field.dist[sv[i]] + distance(p[i], b), field.nearest[sv[i]]});
        owner[s] = best.second;
    }
    // a center keeps its own star, so r_in stays positive on skewed meshes
    for (int c = static_cast<int>(centers_in.size()) - 1; c >= 0; --c)
        for (int s : K.vertex_simplices(centers_in[c])) owner[s] = c;

    // face-connectivity repair: every component not holding its center moves
    // to the neighboring cell it shares the most face volume with
    const int nc_in = static_cast<int>(centers_in.size());
    for (int pass = 0; pass < 64; ++pass) {
        std::vector<int> comp(ns, -1);
        std::vector<std::vector<int>> comps;
        for (int s = 0; s < ns; ++s) {
            if (comp[s] >= 0) continue;
            const int id = static_cast<int>(comps.size());
            comps.emplace_back();
            std::vector<int> stack{s};
            comp[s] = id;
            while (!stack.empty()) {
                const int x = stack.back();
                stack.pop_back();
                comps[id].push_back(x);
                for (int i = 0; i <= dim; ++i) {
                    const auto cf = K.face_cofaces(K.simplex_face(x, i));
                    const int y = cf[0] == x ? cf[1] : cf[0];
                    if (y >= 0 && comp[y] < 0 && owner[y] == owner[x]) {
                        comp[y] = id;
                        stack.push_back(y);
                    }
                }
            }
        }
        // keeper per cell: prefer the component touching the center, then the larger one
        std::vector<int> keeper(nc_in, -1);
        std::vector<std::pair<bool, double>> rank(nc_in, {false, -1.0});
        for (int id = 0; id < static_cast<int>(comps.size()); ++id) {
            const int c = owner[comps[id][0]];
            bool touches = false;
            for (int s : comps[id])
                for (int v : K.simplex(s)) touches |= v == centers_in[c];
            const std::pair<bool, double> key{touches, K.volume_of(comps[id])};
            if (keeper[c] < 0 || key > rank[c]) {
                keeper[c] = id;
                rank[c] = key;
            }
        }
        bool moved = false;
        for (int id = 0; id < static_cast<int>(comps.size()); ++id) {
            const int c = owner[comps[id][0]];
            if (keeper[c] == id) continue;
            std::map<int, double> shared;
            for (int s : comps[id])
                for (int i = 0; i <= dim; ++i) {
                    const int f = K.simplex_face(s, i);
                    const auto cf = K.face_cofaces(f);
                    const int y = cf[0] == s ? cf[1] : cf[0];
                    if (y >= 0 && owner[y] != c) shared[owner[y]] += K.face_volume(f);
                }
            if (shared.empty()) continue; // a whole connected component of K
            int target = shared.begin()->first;
            for (const auto& [cell, w] : shared)
                if (w > shared[target]) target = cell;
            for (int s : comps[id]) owner[s] = target;
            ++cs.stranded_components;
            cs.log.push_back("reassigned stranded component of " + std::to_string(comps[id].size()) + " simplices from cell " +
                             std::to_string(c) + " to cell " + std::to_string(target));
            moved = true;
        }
        if (!moved) break;
    }

    // drop empty cells, keep center order
    std::vector<int> remap(nc_in, -1);
    std::vector<int> count(nc_in, 0);
    for (int s = 0; s < ns; ++s) ++count[owner[s]];
    for (int c = 0; c < nc_in; ++c)
        if (count[c] > 0) {
            remap[c] = static_cast<int>(cs.cells.size());
            cs.cells.push_back(Cell{centers_in[c], {}, 0.0, 0.0, 0.0, 1.0});
        } else {
            cs.log.push_back("dropped empty cell of center " + std::to_string(centers_in[c]));
        }
    cs.cell_of.resize(ns);
    for (int s = 0; s < ns; ++s) {
        cs.cell_of[s] = remap[owner[s]];
        cs.cells[cs.cell_of[s]].simplices.push_back(s);
    }

    // per-cell containment radii
    const double cutoff = 6.0 * rho * opt.lambda_max * 1.5;
    BallSearch search(K);
    const auto& bmask = K.boundary_vertex_mask();
    for (int c = 0; c < cs.size(); ++c) {
        auto& cell = cs.cells[c];
        cell.volume = K.volume_of(cell.simplices);
        double r_in = kInfinity;
        search.run(cell.center, cutoff, [&](int v, double d) {
            if (d >= r_in) return;
            bool outside = bmask[v];
            for (int s : K.vertex_simplices(v)) outside |= cs.cell_of[s] != c;
            if (outside) r_in = d;
        });
        double r_out = 0.0;
        for (int s : cell.simplices)
            for (int v : K.simplex(s)) r_out = std::max(r_out, search.dist(v));
        cell.r_in = r_in;
        cell.r_out = r_out;
        cell.lambda = std::max({1.0, r_in > 0.0 ? 2.0 * rho / r_in : kInfinity, r_out / (6.0 * rho)});
    }

    const int N = cs.size();
    int worst = 0;
    for (int c = 0; c < N; ++c)
        if (cs.cells[c].lambda > cs.cells[worst].lambda) worst = c;
    double lambda = cs.cells[worst].lambda;
    const double wn = omega(dim);
    auto lower = [&](double l) { return N * std::pow(l, -dim) * wn * std::pow(2.0 * rho, dim); };
    auto upper = [&](double l) { return N * std::pow(l, dim) * wn * std::pow(6.0 * rho, dim); };
    if (lower(lambda) > cs.volume || upper(lambda) < cs.volume) {
        const double need_lo = std::pow(N * wn * std::pow(2.0 * rho, dim) / cs.volume, 1.0 / dim);
        const double need_hi = std::pow(cs.volume / (N * wn * std::pow(6.0 * rho, dim)), 1.0 / dim);
        lambda = std::max({lambda, need_lo, need_hi});
        // pow rounding can leave the inequality a hair short
        while (lower(lambda) > cs.volume || upper(lambda) < cs.volume) lambda = std::nextafter(lambda, kInfinity);
        cs.eqN_inflated = true;
        cs.log.push_back("lambda inflated to " + fmt(lambda) + " for the cell count sandwich");
    }
    cs.lambda = lambda;
    cs.eqN_lower = lower(lambda);
    cs.eqN_upper = upper(lambda);
    if (!(lambda <= opt.lambda_max)) {
        const auto& cell = cs.cells[worst];
        std::string what = cs.eqN_inflated && cell.lambda <= opt.lambda_max
                               ? "cell count sandwich needs lambda = " + fmt(lambda)
                               : "cell " + std::to_string(worst) + " (center " + std::to_string(cell.center) +
                                     ") needs lambda = " + fmt(cell.lambda) + " (r_in = " + fmt(cell.r_in) +
                                     ", r_out = " + fmt(cell.r_out) + ")";
        throw Error(ErrorCode::CertificateFailure, what + " > lambda_max = " + fmt(opt.lambda_max) + " at rho = " + fmt(rho));
    }

    // skeleton and weighted cell adjacency
    std::map<std::pair<int, int>, double> adj;
    for (int f = 0; f < K.num_faces(); ++f) {
        const auto cf = K.face_cofaces(f);
        if (cf[1] < 0) {
            cs.skeleton.push_back(f);
            continue;
        }
        const int a = cs.cell_of[cf[0]], b = cs.cell_of[cf[1]];
        if (a == b) continue;
        cs.skeleton.push_back(f);
        adj[std::minmax(a, b)] += K.face_volume(f);
    }
    for (const auto& [key, w] : adj) cs.adjacency.push_back({key.first, key.second, w});
    return cs;
}

CellStructure build_cells(const FlatComplex& K, double rho, const CellOptions& opt)
{
    const auto centers = pack_centers(K, rho, opt.pack);
    return voronoi_cells(K, centers, rho, opt);
}

double auto_rho(const FlatComplex& K, int n_target)
{
    if (n_target < 1) throw Error(ErrorCode::BadParams, "N_target must be positive");
    return std::pow(K.total_volume() / (omega(K.dim()) * n_target), 1.0 / K.dim());
}

Chain radial_project(const FlatComplex& K, const CellStructure& cs, int c, const Chain& piece)
{
    if (c < 0 || c >= cs.size()) throw Error(ErrorCode::BadParams, "cell index out of range");
    const auto& cell = cs.cells[c];
    const int dim = K.dim();
    auto in_cell = [&](int s) { return s >= 0 && cs.cell_of[s] == c; };

    std::vector<int> on_boundary, interior;
    for (int f : piece) {
        const auto cf = K.face_cofaces(f);
        const bool a = in_cell(cf[0]), b = in_cell(cf[1]);
        if (!a && !b) throw Error(ErrorCode::BadParams, "face " + std::to_string(f) + " is not in cell " + std::to_string(c));
        (a && b ? interior : on_boundary).push_back(f);
    }
    if (piece.empty()) return {};

    // center ball test on face barycenters
    const double ball = cs.lambda * cs.rho;
    {
        const auto d = geodesic_distance(K, std::span<const int>(&cell.center, 1), {false, ball + K.longest_edge(), false}).dist;
        for (int f : piece)
            if (face_distance(K, d, f) < ball)
                throw Error(ErrorCode::TooCentral,
                            "face " + std::to_string(f) + " lies within lambda*rho = " + fmt(ball) + " of the center of cell " + std::to_string(c));
    }

    // two-color the cell's simplices, flipping across interior piece faces
    std::unordered_map<int, char> color;
    std::vector<char> flip(K.num_faces(), 0);
    for (int f : interior) flip[f] = 1;
    {
        const int start = cell.simplices.front();
        color[start] = 0;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int i = 0; i <= dim; ++i) {
                const int f = K.simplex_face(x, i);
                const auto cf = K.face_cofaces(f);
                const int y = cf[0] == x ? cf[1] : cf[0];
                if (!in_cell(y)) continue;
                const char want = color[x] ^ flip[f];
                auto it = color.find(y);
                if (it == color.end()) {
                    color[y] = want;
                    stack.push_back(y);
                } else if (it->second != want) {
                    throw Error(ErrorCode::NonSeparatingBoundary,
                                "piece boundary leaves the boundary of cell " + std::to_string(c));
                }
            }
        }
    }
    int center_simplex = cell.simplices.front();
    for (int s : K.vertex_simplices(cell.center))
        if (in_cell(s)) {
            center_simplex = s;
            break;
        }
    const char inner = color[center_simplex];

    std::vector<int> out = on_boundary;
    for (int s : cell.simplices) {
        if (color[s] == inner) continue;
        for (int i = 0; i <= dim; ++i) {
            const int f = K.simplex_face(s, i);
            const auto cf = K.face_cofaces(f);
            if (!(in_cell(cf[0]) && in_cell(cf[1]))) out.push_back(f);
        }
    }
    Chain image = make_chain(std::move(out));
    const double budget = std::pow(36.0, dim - 1) * std::pow(cs.lambda, 2.0 * (dim - 1)) * chain_volume(K, piece) * (1.0 + kTau);
    const double got = chain_volume(K, image);
    if (got > budget)
        throw Error(ErrorCode::ProjectionBudgetExceeded,
                    "projected volume " + fmt(got) + " exceeds " + fmt(budget) + " in cell " + std::to_string(c));
    return image;
}

namespace {

/// Dense GF(2) system solved by row reduction on packed bit rows.
struct Gf2System {
    int vars;
    int words;
    std::vector<std::vector<std::uint64_t>> rows; // last bit (index vars) is the right-hand side

    explicit Gf2System(int n) : vars(n), words((n + 1 + 63) / 64) {}

    void add_row(const std::vector<int>& cols, bool rhs)
    {
        std::vector<std::uint64_t> r(words, 0);
        for (int c : cols) r[c / 64] ^= std::uint64_t{1} << (c % 64);
        if (rhs) r[vars / 64] ^= std::uint64_t{1} << (vars % 64);
        rows.push_back(std::move(r));
    }

    static bool bit(const std::vector<std::uint64_t>& r, int c) { return (r[c / 64] >> (c % 64)) & 1u; }

    /// Particular solution and null space basis; false when inconsistent.
    bool solve(std::vector<char>& x, std::vector<std::vector<char>>& null_basis)
    {
        std::vector<int> pivot_col;
        int rank = 0;
        for (int c = 0; c < vars && rank < static_cast<int>(rows.size()); ++c) {
            int p = -1;
            for (int r = rank; r < static_cast<int>(rows.size()); ++r)
                if (bit(rows[r], c)) {
                    p = r;
                    break;
                }
            if (p < 0) continue;
            std::swap(rows[p], rows[rank]);
            for (int r = 0; r < static_cast<int>(rows.size()); ++r)
                if (r != rank && bit(rows[r], c))
                    for (int w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
            pivot_col.push_back(c);
            ++rank;
        }
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (bit(rows[r], vars)) return false;
        x.assign(vars, 0);
        for (int r = 0; r < rank; ++r) x[pivot_col[r]] = bit(rows[r], vars);
        std::vector<char> is_pivot(vars, 0);
        for (int c : pivot_col) is_pivot[c] = 1;
        for (int j = 0; j < vars; ++j) {
            if (is_pivot[j]) continue;
            std::vector<char> v(vars, 0);
            v[j] = 1;
            for (int r = 0; r < rank; ++r) v[pivot_col[r]] = bit(rows[r], j);
            null_basis.push_back(std::move(v));
        }
        return true;
    }
};

} // namespace

Chain min_chain_with_boundary(const FlatComplex& K, std::span<const int> cell_simplices, std::span<const int> ridge_bdry)
{
    const int dim = K.dim();
    std::unordered_map<int, int> local;
    for (int i = 0; i < static_cast<int>(cell_simplices.size()); ++i) local[cell_simplices[i]] = i;
    auto in_cell = [&](int s) { return s >= 0 && local.count(s) > 0; };

    const auto bfaces = cell_boundary_faces(K, cell_simplices);
    std::vector<int> interior;
    {
        std::vector<int> all;
        for (int s : cell_simplices)
            for (int i = 0; i <= dim; ++i) all.push_back(K.simplex_face(s, i));
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        std::set_difference(all.begin(), all.end(), bfaces.begin(), bfaces.end(), std::back_inserter(interior));
    }

    // ridge -> incident boundary faces
    std::map<int, std::vector<int>> ridge_faces;
    for (int i = 0; i < static_cast<int>(bfaces.size()); ++i)
        for (int r : K.face_ridges(bfaces[i])) ridge_faces[r].push_back(i);
    std::vector<int> wanted(ridge_bdry.begin(), ridge_bdry.end());
    wanted = make_chain(std::move(wanted));
    for (int r : wanted)
        if (!ridge_faces.count(r))
            throw Error(ErrorCode::NonSeparatingBoundary, "ridge " + std::to_string(r) + " is not on the cell boundary");

    Gf2System sys(static_cast<int>(bfaces.size()));
    for (const auto& [r, fs] : ridge_faces) sys.add_row(fs, std::binary_search(wanted.begin(), wanted.end(), r));
    std::vector<char> x;
    std::vector<std::vector<char>> basis;
    if (!sys.solve(x, basis))
        throw Error(ErrorCode::NonSeparatingBoundary, "prescribed boundary does not split the cell boundary");
    if (basis.size() > 6) basis.resize(6);

    const int n = static_cast<int>(cell_simplices.size());
    double best = kInfinity;
    Chain best_chain;
    for (std::uint32_t mask = 0; mask < (1u << basis.size()); ++mask) {
        std::vector<char> A = x;
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (mask >> b & 1u)
                for (std::size_t i = 0; i < A.size(); ++i) A[i] ^= basis[b][i];

        MaxFlow flow(n + 2);
        const int src = n, snk = n + 1;
        for (int i = 0; i < static_cast<int>(bfaces.size()); ++i) {
            const int f = bfaces[i];
            const auto cf = K.face_cofaces(f);
            const int s = in_cell(cf[0]) ? cf[0] : cf[1];
            if (A[i])
                flow.add_arc(src, local[s], K.face_volume(f));
            else
                flow.add_arc(local[s], snk, K.face_volume(f));
        }
        for (int f : interior) {
            const auto cf = K.face_cofaces(f);
            flow.add_edge(local[cf[0]], local[cf[1]], K.face_volume(f));
        }
        flow.solve(src, snk);
        const auto& R = flow.source_side();
        std::vector<int> chain;
        for (int i = 0; i < static_cast<int>(bfaces.size()); ++i) {
            const int f = bfaces[i];
            const auto cf = K.face_cofaces(f);
            const int s = in_cell(cf[0]) ? cf[0] : cf[1];
            if (static_cast<bool>(R[local[s]]) != static_cast<bool>(A[i])) chain.push_back(f);
        }
        for (int f : interior) {
            const auto cf = K.face_cofaces(f);
            if (R[local[cf[0]]] != R[local[cf[1]]]) chain.push_back(f);
        }
        Chain c = make_chain(std::move(chain));
        const double vol = chain_volume(K, c);
        if (vol < best) {
            best = vol;
            best_chain = std::move(c);
        }
    }
    return best_chain;
}

} // namespace sweepout
