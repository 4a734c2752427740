#include "gapcheck/operators.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "gapcheck/error.hpp"

namespace gapcheck {

bool Potential::convex() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(0.5 * (A + A.transpose()));
  return es.eigenvalues().minCoeff() >= -1e-12;
}

double Potential::infimum(const DomainSpec& spec, double h) const {
  if (!convex()) throw NonConvexPotential("A has a negative eigenvalue");
  const int dim = spec.dimension();
  double best = std::numeric_limits<double>::max();

  // Interior stationary point 2Ax + b = 0.
  Eigen::Matrix2d As = 0.5 * (A + A.transpose());
  if (dim == 1) {
    if (As(0, 0) > 1e-14) {
      double xs = -b(0) / (2.0 * As(0, 0));
      if (spec.contains(Vec2(xs, 0.0), false)) best = eval(Vec2(xs, 0.0));
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(As);
    if (es.eigenvalues().minCoeff() > 1e-14) {
      Vec2 xs = As.ldlt().solve(-0.5 * b);
      if (spec.contains(xs, false)) best = std::min(best, eval(xs));
    }
  }

  // Grid scan (covers boundary minimizers at resolution h).
  GridDomain g = build_grid(spec, h);
  for (const auto& p : g.nodes) best = std::min(best, eval(p));
  if (dim == 1) {
    best = std::min(best, std::min(eval(Vec2(spec.a, 0.0)), eval(Vec2(spec.b, 0.0))));
  }
  return best;
}

OperatorMatrix assemble_dirichlet(const GridDomain& grid, const Potential& q) {
  if (grid.cellCentered)
    throw StencilEscape("Dirichlet assembly expects a node-centered grid");
  if (!q.convex()) throw NonConvexPotential("A has a negative eigenvalue");
  const int N = grid.size();
  if (N < 1) throw EmptyInterior("grid has no interior node");
  const double ih2 = 1.0 / (grid.h * grid.h);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(N) * 5);
  for (int i = 0; i < N; ++i) {
    trip.emplace_back(i, i, 2.0 * grid.dim * ih2 + q.eval(grid.nodes[i]));
    for (int d = 0; d < 2 * grid.dim; ++d) {
      int j = grid.nbr[i][d];
      if (j >= 0) trip.emplace_back(i, j, -ih2);
    }
  }
  OperatorMatrix op;
  op.M.resize(N, N);
  op.M.setFromTriplets(trip.begin(), trip.end());
  op.bc = BoundaryCondition::Dirichlet;
  op.symmetric = true;
  op.grid = grid;
  Eigen::VectorXd rowAbs = Eigen::VectorXd::Zero(N);
  for (int k = 0; k < op.M.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.M, k); it; ++it)
      rowAbs[it.row()] += std::abs(it.value());
  op.normInf = rowAbs.maxCoeff();
  return op;
}

OperatorMatrix assemble_neumann_drift(const GridDomain& grid,
                                      const VectorFieldSample& X) {
  if (!grid.cellCentered)
    throw StencilEscape("Neumann drift assembly expects a cell-centered grid");
  const int N = grid.size();
  const double h = grid.h;
  const double ih2 = 1.0 / (h * h);

  std::vector<Vec2> drift(N, Vec2::Zero());
  if (!X.empty()) {
    if (static_cast<int>(X.nodes.size()) != N)
      throw SingularDrift("drift field must be sampled at every cell center");
    for (std::size_t k = 0; k < X.nodes.size(); ++k) {
      if (!X.values[k].allFinite())
        throw SingularDrift("non-finite drift component at a cell center");
      drift[X.nodes[k]] = X.values[k];
    }
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(N) * 5);
  bool sym = X.empty();
  for (int i = 0; i < N; ++i) {
    double diag = 0.0;
    for (int axis = 0; axis < grid.dim; ++axis) {
      int lo = grid.nbr[i][2 * axis];
      int hi = grid.nbr[i][2 * axis + 1];
      double xcomp = drift[i][axis];
      // -d^2/ds^2 with mirror ghost u_ghost = u_i across a boundary face,
      // central drift 2 X (u_hi - u_lo) / (2h) with the same substitution.
      double cLo = -ih2 - xcomp / h;
      double cHi = -ih2 + xcomp / h;
      diag += 2.0 * ih2;
      if (lo >= 0) trip.emplace_back(i, lo, cLo); else diag += cLo;
      if (hi >= 0) trip.emplace_back(i, hi, cHi); else diag += cHi;
    }
    trip.emplace_back(i, i, diag);
  }
  OperatorMatrix op;
  op.M.resize(N, N);
  op.M.setFromTriplets(trip.begin(), trip.end());
  op.bc = BoundaryCondition::Neumann;
  op.symmetric = sym;
  op.grid = grid;
  Eigen::VectorXd rowAbs = Eigen::VectorXd::Zero(N);
  for (int k = 0; k < op.M.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.M, k); it; ++it)
      rowAbs[it.row()] += std::abs(it.value());
  op.normInf = rowAbs.maxCoeff();
  return op;
}

VectorFieldSample gradient(const Eigen::VectorXd& field, const GridDomain& grid) {
  if (field.size() != grid.size()) throw StencilEscape("field size mismatch");
  VectorFieldSample out;
  out.provenance = "central-gradient";
  const double i2h = 1.0 / (2.0 * grid.h);
  for (int i = 0; i < grid.size(); ++i) {
    if (!grid.fullStencil(i)) continue;
    Vec2 g = Vec2::Zero();
    g.x() = (field[grid.nbr[i][1]] - field[grid.nbr[i][0]]) * i2h;
    if (grid.dim == 2) g.y() = (field[grid.nbr[i][3]] - field[grid.nbr[i][2]]) * i2h;
    out.nodes.push_back(i);
    out.values.push_back(g);
  }
  return out;
}

HessianSample hessian(const Eigen::VectorXd& field, const GridDomain& grid) {
  if (field.size() != grid.size()) throw StencilEscape("field size mismatch");
  HessianSample out;
  const double ih2 = 1.0 / (grid.h * grid.h);
  for (int i = 0; i < grid.size(); ++i) {
    if (!grid.fullHessianStencil(i)) continue;
    Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
    H(0, 0) = (field[grid.nbr[i][1]] - 2.0 * field[i] + field[grid.nbr[i][0]]) * ih2;
    if (grid.dim == 2) {
      H(1, 1) = (field[grid.nbr[i][3]] - 2.0 * field[i] + field[grid.nbr[i][2]]) * ih2;
      // diag order: SW, SE, NW, NE
      H(0, 1) = (field[grid.diag[i][3]] - field[grid.diag[i][2]] -
                 field[grid.diag[i][1]] + field[grid.diag[i][0]]) *
                0.25 * ih2;
      H(1, 0) = H(0, 1);
    }
    out.nodes.push_back(i);
    out.values.push_back(H);
  }
  return out;
}

}  // namespace gapcheck
