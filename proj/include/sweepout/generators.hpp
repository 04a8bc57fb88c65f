#pragma once

#include "sweepout/complex.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sweepout {

/// k x k grid on the unit square torus, each square split along its
/// (i,j)-(i+1,j+1) diagonal. Needs k >= 3.
FlatComplex flat_torus_2d(int k);
/// k^3 grid on the unit cube torus, each cube split into the 6 Freudenthal
/// tetrahedra. Needs k >= 3.
FlatComplex flat_torus_3d(int k);
/// Subdivided icosahedron with vertices projected onto the sphere of the
/// given radius; edge lengths are chords.
FlatComplex icosphere(int subdivisions, double radius);
/// Regular m-gon of unit area, triangulated by `rings` concentric copies of
/// its vertex ring around a central vertex.
FlatComplex convex_polygon_disk(int m, int rings = 1);

/// Triangulated planar grid of nx x ny squares of side h; squares where
/// keep(i, j) is false are omitted. Unused vertices are dropped.
FlatComplex planar_grid(int nx, int ny, double h, const std::function<bool(int, int)>& keep);

FlatComplex from_embedding(int dim, const std::vector<Point>& coords, std::vector<Simplex> simplices);
/// Same complex with every edge length multiplied by s.
FlatComplex scaled(const FlatComplex& K, double s);

/// Largest |2 pi - angle sum| over interior vertices of a 2-complex.
double max_angle_defect(const FlatComplex& K);

/// Parses "flat-torus-2d:16", "icosphere:3,1", "convex-polygon-disk:8,2"...
FlatComplex generate(const std::string& desc);

} // namespace sweepout
