#pragma once

#include "sweepout/geometry.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace sweepout {

/// Top-dimensional simplex: sorted vertex ids, entries past dim are -1.
using Simplex = std::array<int, 4>;

inline std::uint64_t edge_key(int u, int v)
{
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
}

using EdgeLengths = std::unordered_map<std::uint64_t, double>;

/// Piecewise-flat simplicial n-complex (n = 2 or 3) described intrinsically by
/// its edge lengths. Immutable once built; every derived table (face lattice,
/// per-simplex realizations, adjacency) is computed by `build`.
///
/// Faces are the (n-1)-simplices, ridges the (n-2)-simplices. For n = 2 a
/// ridge id is a vertex id, for n = 3 it is an edge id.
class FlatComplex {
public:
    FlatComplex() = default;

    static FlatComplex build(int dim, int num_vertices, std::vector<Simplex> simplices, const EdgeLengths& lengths);

    int dim() const { return dim_; }
    int num_vertices() const { return num_vertices_; }
    int num_simplices() const { return static_cast<int>(simplices_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_faces() const { return static_cast<int>(faces_.size()); }
    int num_ridges() const { return dim_ == 2 ? num_vertices_ : num_edges(); }

    std::span<const int> simplex(int s) const { return {simplices_[s].data(), static_cast<std::size_t>(dim_ + 1)}; }
    const Simplex& simplex_array(int s) const { return simplices_[s]; }
    std::span<const Point> realization(int s) const
    {
        return {realizations_[s].data(), static_cast<std::size_t>(dim_ + 1)};
    }
    const std::vector<std::array<Point, 4>>& realizations() const { return realizations_; }
    double simplex_volume(int s) const { return volumes_[s]; }
    Point barycenter(int s) const;

    /// Face opposite local vertex i of simplex s.
    int simplex_face(int s, int i) const { return simplex_faces_[s][i]; }
    std::span<const int> face_vertices(int f) const { return {faces_[f].data(), static_cast<std::size_t>(dim_)}; }
    std::array<int, 2> face_cofaces(int f) const { return face_cofaces_[f]; }
    bool is_boundary_face(int f) const { return face_cofaces_[f][1] < 0; }
    std::span<const int> face_ridges(int f) const
    {
        return {face_ridges_[f].data(), static_cast<std::size_t>(dim_)};
    }
    double face_volume(int f) const { return face_volumes_[f]; }
    const std::vector<int>& boundary_faces() const { return boundary_faces_; }
    /// Face shared by two top simplices, -1 when they are not adjacent.
    int shared_face(int s, int t) const;

    int edge(int u, int v) const;
    std::array<int, 2> edge_vertices(int e) const { return edges_[e]; }
    double edge_length(int e) const { return edge_lengths_[e]; }
    double longest_edge() const { return longest_edge_; }

    struct Neighbor {
        int vertex;
        double length;
    };
    std::span<const Neighbor> neighbors(int v) const
    {
        return {adjacency_.data() + adjacency_offsets_[v],
                static_cast<std::size_t>(adjacency_offsets_[v + 1] - adjacency_offsets_[v])};
    }
    std::span<const int> vertex_simplices(int v) const
    {
        return {vertex_simplices_.data() + vertex_simplex_offsets_[v],
                static_cast<std::size_t>(vertex_simplex_offsets_[v + 1] - vertex_simplex_offsets_[v])};
    }

    /// Vertices lying on a boundary face.
    const std::vector<char>& boundary_vertex_mask() const { return boundary_vertex_; }

    double total_volume() const { return total_volume_; }
    double volume_of(std::span<const int> simplices) const;

    /// Edge lengths keyed by vertex pair, as accepted by `build`.
    EdgeLengths edge_length_map() const;
    const std::vector<Simplex>& simplices() const { return simplices_; }

private:
    int dim_ = 0;
    int num_vertices_ = 0;
    std::vector<Simplex> simplices_;
    std::vector<std::array<Point, 4>> realizations_;
    std::vector<double> volumes_;
    std::vector<std::array<int, 4>> simplex_faces_;
    std::vector<std::array<int, 3>> faces_;
    std::vector<std::array<int, 2>> face_cofaces_;
    std::vector<std::array<int, 3>> face_ridges_;
    std::vector<double> face_volumes_;
    std::vector<int> boundary_faces_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<double> edge_lengths_;
    std::unordered_map<std::uint64_t, int> edge_index_;
    std::vector<int> adjacency_offsets_;
    std::vector<Neighbor> adjacency_;
    std::vector<int> vertex_simplex_offsets_;
    std::vector<int> vertex_simplices_;
    std::vector<char> boundary_vertex_;
    double longest_edge_ = 0.0;
    double total_volume_ = 0.0;
};

/// Mod-2 chain of faces; sorted, duplicate-free face ids.
using Chain = std::vector<int>;

/// Normalizes a face list to a mod-2 chain (faces listed an even number of
/// times cancel).
Chain make_chain(std::vector<int> faces);
double chain_volume(const FlatComplex& K, const Chain& c);

/// Mod-2 boundary of a face chain, as sorted ridge ids.
std::vector<int> boundary(const FlatComplex& K, const Chain& c);
/// Mod-2 boundary of a ridge chain (n = 3: edges to vertices; n = 2: empty).
std::vector<int> ridge_boundary(const FlatComplex& K, std::span<const int> ridges);
/// Mod-2 boundary of a set of top simplices.
Chain simplex_set_boundary(const FlatComplex& K, std::span<const int> simplices);
/// Faces separating simplices labelled true from those labelled false. Faces
/// on the complex boundary are never included.
Chain separating_faces(const FlatComplex& K, std::span<const char> side);

FlatComplex read_complex(std::istream& in);
void write_complex(std::ostream& out, const FlatComplex& K);
FlatComplex load_complex_file(const std::string& path);
void save_complex_file(const std::string& path, const FlatComplex& K);

} // namespace sweepout
