#pragma once

#include "sweepout/complex.hpp"

#include <span>
#include <string>
#include <vector>

namespace sweepout {

struct PackOptions {
    std::size_t max_centers = 100000;
    /// Accept a single center on a multi-simplex complex instead of throwing
    /// RhoTooLarge.
    bool allow_single = false;
};

/// Greedy maximal packing of vertex centers with pairwise graph distance
/// > 4 rho. When the complex has boundary, only vertices at distance >= 2 rho
/// from it are candidates (closest to 2 rho first), unless there are none.
std::vector<int> pack_centers(const FlatComplex& K, double rho, const PackOptions& opt = {});

struct Cell {
    int center = -1;
    std::vector<int> simplices; // sorted
    double volume = 0.0;
    /// Graph distance from the center to the nearest vertex outside the cell
    /// (vertices of other cells' simplices or of the complex boundary).
    double r_in = 0.0;
    /// Largest graph distance from the center to a cell vertex.
    double r_out = 0.0;
    double lambda = 1.0; // smallest factor certifying this cell alone
};

struct CellAdjacency {
    int a = 0, b = 0; // a < b
    double weight = 0.0;
};

struct CellStructure {
    double rho = 0.0;
    double lambda = 1.0;
    double lambda_max = 4.0;
    double volume = 0.0;
    std::vector<Cell> cells;
    std::vector<int> cell_of; // per simplex
    std::vector<int> skeleton; // faces between distinct cells or on the complex boundary
    std::vector<CellAdjacency> adjacency;
    double eqN_lower = 0.0; // N lambda^-n omega_n 2^n rho^n
    double eqN_upper = 0.0; // N lambda^n omega_n 6^n rho^n
    bool eqN_inflated = false;
    int stranded_components = 0;
    std::vector<std::string> log;

    int size() const { return static_cast<int>(cells.size()); }
};

struct CellOptions {
    double lambda_max = 4.0;
    PackOptions pack;
};

/// Nearest-center assignment of simplices (graph distance to the barycenter,
/// ties to the lower center index), connectivity repair and the a-posteriori
/// (rho, lambda) certificate. Throws CertificateFailure when lambda_max is
/// not enough.
CellStructure voronoi_cells(const FlatComplex& K, std::span<const int> centers, double rho,
                            const CellOptions& opt = {});

/// pack_centers followed by voronoi_cells.
CellStructure build_cells(const FlatComplex& K, double rho, const CellOptions& opt = {});

/// rho = (vol / (omega_n N_target))^{1/n}.
double auto_rho(const FlatComplex& K, int n_target = 64);

/// Cell boundary faces: faces of the cell's simplices with exactly one coface
/// inside the cell (complex boundary faces included).
std::vector<int> cell_boundary_faces(const FlatComplex& K, std::span<const int> cell_simplices);

/// Discrete radial retraction of a chain piece inside cell `c` onto the cell
/// boundary, preserving its mod-2 boundary. Throws TooCentral when a face
/// barycenter is within lambda * rho of the center, NonSeparatingBoundary
/// when the piece's boundary leaves the cell boundary, and
/// ProjectionBudgetExceeded when the image breaks 36^{n-1} lambda^{2(n-1)}.
Chain radial_project(const FlatComplex& K, const CellStructure& cs, int c, const Chain& piece);

/// Minimum-volume face chain inside the cell with the given mod-2 ridge
/// boundary, which must lie on the cell boundary. Throws
/// NonSeparatingBoundary when no boundary-face chain has that boundary.
Chain min_chain_with_boundary(const FlatComplex& K, std::span<const int> cell_simplices,
                              std::span<const int> ridge_boundary);

} // namespace sweepout
