#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "gapcheck/geometry.hpp"

namespace gapcheck {

// Sampled vector field at a subset of grid nodes (e.g. X = -grad log phi0).
struct VectorFieldSample {
  std::vector<int> nodes;
  std::vector<Vec2> values;
  std::string provenance;

  bool empty() const { return nodes.empty(); }
};

// Convex quadratic potential q(x) = x^T A x + b.x + c.
struct Potential {
  Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
  double c = 0.0;

  static Potential zero() { return {}; }
  double eval(const Vec2& x) const { return x.dot(A * x) + b.dot(x) + c; }
  // PSD test with tolerance 1e-12 on the eigenvalues of A.
  bool convex() const;
  // Exact infimum over the spec: interior stationary point when it lies in
  // the closed domain, otherwise a boundary/grid scan at resolution h.
  double infimum(const DomainSpec& spec, double h) const;
};

enum class BoundaryCondition { Dirichlet, Neumann };

struct OperatorMatrix {
  Eigen::SparseMatrix<double> M;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  bool symmetric = true;
  GridDomain grid;
  double normInf = 0.0;
};

// (-Delta_h + q) on the node-centered grid, zero Dirichlet data outside the
// interior mask, standard 3-point / 5-point stencil.
OperatorMatrix assemble_dirichlet(const GridDomain& grid, const Potential& q);

// (-Delta_h + 2 X . grad_h) on a cell-centered grid with mirror ghosts.
// Pass an empty sample for X = 0.
OperatorMatrix assemble_neumann_drift(const GridDomain& grid,
                                      const VectorFieldSample& X);

// Second-order central gradient at every full-stencil node.
VectorFieldSample gradient(const Eigen::VectorXd& field, const GridDomain& grid);

// Per-node symmetric Hessian sample (mixed stencil in 2-D).
struct HessianSample {
  std::vector<int> nodes;
  std::vector<Eigen::Matrix2d> values;
};
HessianSample hessian(const Eigen::VectorXd& field, const GridDomain& grid);

}  // namespace gapcheck
