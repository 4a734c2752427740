#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace gapcheck {

using Vec2 = Eigen::Vector2d;

enum class DomainKind { Interval, Rectangle, Disk, Ellipse, Polygon };

// Convex domain in R^1 or R^2, described by exact continuum parameters.
// Intervals are [a, b]; rectangles are [0, wx] x [0, wy]; disks and
// ellipses are centered at the origin; polygons are strictly convex
// vertex lists (normalized to counterclockwise on construction).
struct DomainSpec {
  DomainKind kind = DomainKind::Interval;
  double a = -0.5, b = 0.5;      // interval endpoints
  double wx = 1.0, wy = 1.0;     // rectangle side lengths
  double radius = 1.0;           // disk
  double ax = 1.0, ay = 1.0;     // ellipse semi-axes
  std::vector<Vec2> vertices;    // convex polygon, CCW

  static DomainSpec interval(double a, double b);
  static DomainSpec rectangle(double wx, double wy);
  static DomainSpec disk(double r);
  static DomainSpec ellipse(double ax, double ay);
  static DomainSpec polygon(std::vector<Vec2> verts);

  int dimension() const { return kind == DomainKind::Interval ? 1 : 2; }
  bool contains(const Vec2& p, bool strict) const;
  std::string name() const;
};

// Exact continuum diameter of the spec (never the discrete hull).
double diameter(const DomainSpec& spec);
// Lower bound on the inradius, used to validate grid spacing.
double inradius(const DomainSpec& spec);
// Exact measure: length / area (shoelace for polygons).
double volume(const DomainSpec& spec);

// Uniform lattice restricted to the domain. Nodes are lattice points that
// lie strictly inside with the full difference stencil inside the closed
// domain. Cell-centered grids (Neumann) place nodes at half-integer lattice
// offsets; their stencil reaches mirror ghosts across boundary faces.
struct GridDomain {
  DomainSpec spec;
  double h = 0.0;
  int dim = 1;
  bool cellCentered = false;
  double D = 0.0;  // continuum diameter
  std::vector<Vec2> nodes;
  // Neighbor node index per direction (W,E,S,N), -1 when the lattice
  // neighbor is not a grid node (Dirichlet zero / mirror ghost).
  std::vector<std::array<int, 4>> nbr;
  // Diagonal neighbors (SW,SE,NW,NE) for mixed second differences; -1 if absent.
  std::vector<std::array<int, 4>> diag;

  int size() const { return static_cast<int>(nodes.size()); }
  // True when all axis neighbors exist, i.e. central differences are defined.
  bool fullStencil(int i) const;
  // True when axis and diagonal neighbors all exist.
  bool fullHessianStencil(int i) const;
};

GridDomain build_grid(const DomainSpec& spec, double h);
GridDomain build_cell_grid(const DomainSpec& spec, double h);

// Node indices with field >= delta * max(field) and full difference stencil.
std::vector<int> admissible_nodes(const GridDomain& grid,
                                  const Eigen::VectorXd& field, double delta);

// All unordered admissible-node pairs, or a seeded uniform subsample of
// exactly maxPairs distinct pairs when the exhaustive set is larger.
std::vector<std::pair<int, int>> admissible_pairs(const GridDomain& grid,
                                                  const Eigen::VectorXd& field,
                                                  double delta,
                                                  std::size_t maxPairs,
                                                  std::uint64_t seed);

std::vector<std::pair<int, int>> pairs_from_nodes(const std::vector<int>& nodes,
                                                  std::size_t maxPairs,
                                                  std::uint64_t seed);

}  // namespace gapcheck
