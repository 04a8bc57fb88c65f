#include "sweepout/complex.hpp"

#include "sweepout/error.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace sweepout {

namespace {

constexpr int kMaxVertices = 1 << 21;

std::uint64_t face_key(const std::array<int, 3>& f, int size)
{
    std::uint64_t key = 0;
    for (int i = 0; i < 3; ++i) key = (key << 21) | static_cast<std::uint64_t>(i < size ? f[i] + 1 : 0);
    return key;
}

std::string simplex_name(const Simplex& s, int dim)
{
    std::string out = "(";
    for (int i = 0; i <= dim; ++i) out += (i ? " " : "") + std::to_string(s[i]);
    return out + ")";
}

} // namespace

FlatComplex FlatComplex::build(int dim, int num_vertices, std::vector<Simplex> simplices, const EdgeLengths& lengths)
{
    if (dim != 2 && dim != 3)
        throw Error(ErrorCode::UnsupportedDimension, "dimension " + std::to_string(dim) + " not in {2, 3}");
    if (num_vertices <= 0 || num_vertices >= kMaxVertices)
        throw Error(ErrorCode::ParseError, "vertex count out of range");
    if (simplices.empty()) throw Error(ErrorCode::ParseError, "complex has no simplices");

    FlatComplex K;
    K.dim_ = dim;
    K.num_vertices_ = num_vertices;
    const int nv = dim + 1;

    for (auto& s : simplices) {
        for (int i = nv; i < 4; ++i) s[i] = -1;
        std::sort(s.begin(), s.begin() + nv);
        for (int i = 0; i < nv; ++i) {
            if (s[i] < 0 || s[i] >= num_vertices)
                throw Error(ErrorCode::ParseError, "vertex id out of range in simplex " + simplex_name(s, dim));
            if (i > 0 && s[i] == s[i - 1])
                throw Error(ErrorCode::ParseError, "repeated vertex in simplex " + simplex_name(s, dim));
        }
    }
    K.simplices_ = std::move(simplices);
    const int ns = K.num_simplices();

    // edges
    for (int s = 0; s < ns; ++s) {
        const auto& sv = K.simplices_[s];
        for (int i = 0; i < nv; ++i)
            for (int j = i + 1; j < nv; ++j) {
                const auto key = edge_key(sv[i], sv[j]);
                if (K.edge_index_.count(key)) continue;
                auto it = lengths.find(key);
                if (it == lengths.end())
                    throw Error(ErrorCode::ParseError, "missing length for edge " + std::to_string(sv[i]) + "-"
                                                           + std::to_string(sv[j]));
                if (!(it->second > 0.0) || !std::isfinite(it->second))
                    throw Error(ErrorCode::DegenerateSimplex, "non-positive length on edge "
                                                                  + std::to_string(sv[i]) + "-"
                                                                  + std::to_string(sv[j]));
                K.edge_index_.emplace(key, K.num_edges());
                K.edges_.push_back({sv[i], sv[j]});
                K.edge_lengths_.push_back(it->second);
                K.longest_edge_ = std::max(K.longest_edge_, it->second);
            }
    }

    // realizations
    K.realizations_.resize(ns);
    K.volumes_.resize(ns);
    for (int s = 0; s < ns; ++s) {
        const auto& sv = K.simplices_[s];
        LengthTable l{};
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j)
                if (i != j) l[i][j] = K.edge_lengths_[K.edge_index_.at(edge_key(sv[i], sv[j]))];
        auto pts = realize_simplex(dim, l);
        if (!pts) throw Error(ErrorCode::DegenerateSimplex, "simplex " + simplex_name(sv, dim) + " has no flat realization");
        K.realizations_[s] = *pts;
        K.volumes_[s] = sweepout::simplex_volume(dim, K.realization(s));
    }

    // faces
    std::unordered_map<std::uint64_t, int> face_index;
    face_index.reserve(static_cast<std::size_t>(ns) * nv);
    K.simplex_faces_.assign(ns, {-1, -1, -1, -1});
    for (int s = 0; s < ns; ++s) {
        const auto& sv = K.simplices_[s];
        for (int i = 0; i < nv; ++i) {
            std::array<int, 3> f{-1, -1, -1};
            int k = 0;
            for (int j = 0; j < nv; ++j)
                if (j != i) f[k++] = sv[j];
            const auto key = face_key(f, dim);
            auto [it, inserted] = face_index.emplace(key, K.num_faces());
            if (inserted) {
                K.faces_.push_back(f);
                K.face_cofaces_.push_back({s, -1});
            } else {
                auto& cf = K.face_cofaces_[it->second];
                if (cf[1] >= 0) {
                    std::string name = "(";
                    for (int j = 0; j < dim; ++j) name += (j ? " " : "") + std::to_string(f[j]);
                    throw Error(ErrorCode::NonManifold, "face " + name + ") has three or more cofaces");
                }
                cf[1] = s;
            }
            K.simplex_faces_[s][i] = it->second;
        }
    }
    const int nf = K.num_faces();
    K.face_volumes_.resize(nf);
    K.face_ridges_.assign(nf, {-1, -1, -1});
    for (int f = 0; f < nf; ++f) {
        const int s = K.face_cofaces_[f][0];
        const auto& sv = K.simplices_[s];
        const auto& fv = K.faces_[f];
        std::array<Point, 3> pts{};
        for (int j = 0; j < dim; ++j) {
            const int local = static_cast<int>(std::find(sv.begin(), sv.begin() + nv, fv[j]) - sv.begin());
            pts[j] = K.realizations_[s][local];
        }
        K.face_volumes_[f] = sweepout::simplex_volume(dim - 1, pts);
        if (dim == 2) {
            K.face_ridges_[f] = {fv[0], fv[1], -1};
        } else {
            K.face_ridges_[f] = {K.edge(fv[1], fv[2]), K.edge(fv[0], fv[2]), K.edge(fv[0], fv[1])};
        }
        if (K.face_cofaces_[f][1] < 0) K.boundary_faces_.push_back(f);
    }

    // adjacency
    const int nvtx = num_vertices;
    std::vector<int> degree(nvtx + 1, 0);
    for (const auto& e : K.edges_) {
        ++degree[e[0]];
        ++degree[e[1]];
    }
    K.adjacency_offsets_.assign(nvtx + 1, 0);
    for (int v = 0; v < nvtx; ++v) K.adjacency_offsets_[v + 1] = K.adjacency_offsets_[v] + degree[v];
    K.adjacency_.resize(K.adjacency_offsets_[nvtx]);
    std::vector<int> fill(K.adjacency_offsets_.begin(), K.adjacency_offsets_.end() - 1);
    for (int e = 0; e < K.num_edges(); ++e) {
        const auto [u, v] = K.edges_[e];
        K.adjacency_[fill[u]++] = {v, K.edge_lengths_[e]};
        K.adjacency_[fill[v]++] = {u, K.edge_lengths_[e]};
    }
    for (int v = 0; v < nvtx; ++v) {
        std::sort(K.adjacency_.begin() + K.adjacency_offsets_[v], K.adjacency_.begin() + K.adjacency_offsets_[v + 1],
                  [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    }

    std::vector<int> vdeg(nvtx, 0);
    for (const auto& s : K.simplices_)
        for (int i = 0; i < nv; ++i) ++vdeg[s[i]];
    K.vertex_simplex_offsets_.assign(nvtx + 1, 0);
    for (int v = 0; v < nvtx; ++v) K.vertex_simplex_offsets_[v + 1] = K.vertex_simplex_offsets_[v] + vdeg[v];
    K.vertex_simplices_.resize(K.vertex_simplex_offsets_[nvtx]);
    std::vector<int> vfill(K.vertex_simplex_offsets_.begin(), K.vertex_simplex_offsets_.end() - 1);
    for (int s = 0; s < ns; ++s)
        for (int i = 0; i < nv; ++i) K.vertex_simplices_[vfill[K.simplices_[s][i]]++] = s;

    K.boundary_vertex_.assign(nvtx, 0);
    for (int f : K.boundary_faces_)
        for (int v : K.face_vertices(f)) K.boundary_vertex_[v] = 1;

    // index-ordered summation keeps the total reproducible
    K.total_volume_ = 0.0;
    for (double v : K.volumes_) K.total_volume_ += v;
    return K;
}

Point FlatComplex::barycenter(int s) const
{
    Point c{0.0, 0.0, 0.0};
    for (const auto& p : realization(s)) c = c + p;
    return (1.0 / (dim_ + 1)) * c;
}

int FlatComplex::shared_face(int s, int t) const
{
    for (int i = 0; i <= dim_; ++i) {
        const int f = simplex_faces_[s][i];
        const auto cf = face_cofaces_[f];
        if ((cf[0] == s && cf[1] == t) || (cf[1] == s && cf[0] == t)) return f;
    }
    return -1;
}

int FlatComplex::edge(int u, int v) const
{
    auto it = edge_index_.find(edge_key(u, v));
    return it == edge_index_.end() ? -1 : it->second;
}

double FlatComplex::volume_of(std::span<const int> simplices) const
{
    double sum = 0.0;
    for (int s : simplices) sum += volumes_[s];
    return sum;
}

EdgeLengths FlatComplex::edge_length_map() const
{
    EdgeLengths out;
    out.reserve(edges_.size());
    for (int e = 0; e < num_edges(); ++e) out.emplace(edge_key(edges_[e][0], edges_[e][1]), edge_lengths_[e]);
    return out;
}

Chain make_chain(std::vector<int> faces)
{
    std::sort(faces.begin(), faces.end());
    Chain out;
    for (std::size_t i = 0; i < faces.size();) {
        std::size_t j = i;
        while (j < faces.size() && faces[j] == faces[i]) ++j;
        if ((j - i) % 2 == 1) out.push_back(faces[i]);
        i = j;
    }
    return out;
}

double chain_volume(const FlatComplex& K, const Chain& c)
{
    double sum = 0.0;
    for (int f : c) sum += K.face_volume(f);
    return sum;
}

std::vector<int> boundary(const FlatComplex& K, const Chain& c)
{
    std::vector<int> ridges;
    ridges.reserve(c.size() * K.dim());
    for (int f : c)
        for (int r : K.face_ridges(f)) ridges.push_back(r);
    return make_chain(std::move(ridges));
}

std::vector<int> ridge_boundary(const FlatComplex& K, std::span<const int> ridges)
{
    if (K.dim() == 2) return {};
    std::vector<int> verts;
    for (int r : ridges) {
        const auto ev = K.edge_vertices(r);
        verts.push_back(ev[0]);
        verts.push_back(ev[1]);
    }
    return make_chain(std::move(verts));
}

Chain simplex_set_boundary(const FlatComplex& K, std::span<const int> simplices)
{
    std::vector<int> faces;
    for (int s : simplices)
        for (int i = 0; i <= K.dim(); ++i) faces.push_back(K.simplex_face(s, i));
    return make_chain(std::move(faces));
}

Chain separating_faces(const FlatComplex& K, std::span<const char> side)
{
    Chain out;
    for (int f = 0; f < K.num_faces(); ++f) {
        const auto cf = K.face_cofaces(f);
        if (cf[1] < 0) continue;
        if ((side[cf[0]] != 0) != (side[cf[1]] != 0)) out.push_back(f);
    }
    return out;
}

// ---------------------------------------------------------------------------
// interchange format

namespace {

struct LineReader {
    std::istream& in;
    int line_no = 0;

    bool next(std::istringstream& out)
    {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            out.clear();
            out.str(line);
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
    }
};

Simplex read_simplex(LineReader& r, std::istringstream& ls, int dim)
{
    Simplex s{-1, -1, -1, -1};
    for (int i = 0; i <= dim; ++i)
        if (!(ls >> s[i])) r.fail("expected " + std::to_string(dim + 1) + " vertex ids");
    std::string extra;
    if (ls >> extra) r.fail("trailing token '" + extra + "'");
    return s;
}

} // namespace

FlatComplex read_complex(std::istream& in)
{
    LineReader r{in};
    std::istringstream ls;
    if (!r.next(ls)) r.fail("empty stream");
    std::string kind;
    int dim = 0, nv = 0, ns = 0;
    if (!(ls >> kind >> dim >> nv >> ns)) r.fail("expected header '<flatcomplex|embedded> <n> <#vertices> <#simplices>'");
    if (dim != 2 && dim != 3)
        throw Error(ErrorCode::UnsupportedDimension, "dimension " + std::to_string(dim) + " not in {2, 3}");
    if (nv <= 0 || ns <= 0) r.fail("vertex and simplex counts must be positive");

    EdgeLengths lengths;
    std::vector<Simplex> simplices;
    simplices.reserve(ns);

    if (kind == "flatcomplex") {
        for (int s = 0; s < ns; ++s) {
            if (!r.next(ls)) r.fail("unexpected end of stream in simplex list");
            simplices.push_back(read_simplex(r, ls, dim));
        }
        while (r.next(ls)) {
            std::string tag;
            int u = 0, v = 0;
            double len = 0.0;
            if (!(ls >> tag >> u >> v >> len) || tag != "edge") r.fail("expected 'edge <u> <v> <length>'");
            if (u < 0 || v < 0 || u >= nv || v >= nv || u == v) r.fail("bad edge endpoints");
            lengths[edge_key(u, v)] = len;
        }
    } else if (kind == "embedded") {
        std::vector<std::vector<double>> coords(nv);
        for (int v = 0; v < nv; ++v) {
            if (!r.next(ls)) r.fail("unexpected end of stream in vertex list");
            double x = 0.0;
            while (ls >> x) coords[v].push_back(x);
            if (coords[v].size() < static_cast<std::size_t>(dim) || coords[v].size() != coords[0].size())
                r.fail("inconsistent coordinate count");
        }
        for (int s = 0; s < ns; ++s) {
            if (!r.next(ls)) r.fail("unexpected end of stream in simplex list");
            simplices.push_back(read_simplex(r, ls, dim));
        }
        for (const auto& s : simplices)
            for (int i = 0; i <= dim; ++i)
                for (int j = i + 1; j <= dim; ++j) {
                    if (s[i] < 0 || s[j] < 0 || s[i] >= nv || s[j] >= nv) r.fail("vertex id out of range");
                    double d2 = 0.0;
                    for (std::size_t k = 0; k < coords[0].size(); ++k) {
                        const double d = coords[s[i]][k] - coords[s[j]][k];
                        d2 += d * d;
                    }
                    lengths[edge_key(s[i], s[j])] = std::sqrt(d2);
                }
    } else {
        r.fail("unknown complex kind '" + kind + "'");
    }

    FlatComplex K = FlatComplex::build(dim, nv, std::move(simplices), lengths);
    if (static_cast<std::size_t>(K.num_edges()) != lengths.size())
        throw Error(ErrorCode::ParseError, "edge lines name pairs that are not edges of any simplex");
    return K;
}

void write_complex(std::ostream& out, const FlatComplex& K)
{
    out << "flatcomplex " << K.dim() << ' ' << K.num_vertices() << ' ' << K.num_simplices() << '\n';
    for (int s = 0; s < K.num_simplices(); ++s) {
        const auto sv = K.simplex(s);
        for (std::size_t i = 0; i < sv.size(); ++i) out << (i ? " " : "") << sv[i];
        out << '\n';
    }
    char buf[64];
    for (int e = 0; e < K.num_edges(); ++e) {
        const auto ev = K.edge_vertices(e);
        std::snprintf(buf, sizeof buf, "%.17g", K.edge_length(e));
        out << "edge " << ev[0] << ' ' << ev[1] << ' ' << buf << '\n';
    }
}

FlatComplex load_complex_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return read_complex(in);
}

void save_complex_file(const std::string& path, const FlatComplex& K)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    write_complex(out, K);
}

} // namespace sweepout
