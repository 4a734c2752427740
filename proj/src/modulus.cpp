#include "gapcheck/modulus.hpp"

#include <cmath>
#include <unordered_map>

#include <Eigen/Dense>

#include "gapcheck/error.hpp"

namespace gapcheck {

VectorFieldSample ground_state_field(const SpectralResult& spectral,
                                     const GridDomain& grid, double delta) {
  const Eigen::VectorXd& phi0 = spectral.vectors.at(0);
  std::vector<int> adm = admissible_nodes(grid, phi0, delta);
  const double i2h = 1.0 / (2.0 * grid.h);
  VectorFieldSample X;
  X.provenance = "-grad(phi0)/phi0";
  X.nodes = adm;
  X.values.reserve(adm.size());
  for (int i : adm) {
    Vec2 g = Vec2::Zero();
    g.x() = -(phi0[grid.nbr[i][1]] - phi0[grid.nbr[i][0]]) * i2h / phi0[i];
    if (grid.dim == 2)
      g.y() = -(phi0[grid.nbr[i][3]] - phi0[grid.nbr[i][2]]) * i2h / phi0[i];
    X.values.push_back(g);
  }
  return X;
}

SlackReport expansion_slack(const VectorFieldSample& X, const GridDomain& grid,
                            const std::vector<std::pair<int, int>>& pairs,
                            const Model1D& model, double tolerance,
                            int threads) {
  // Node index -> sample index lookup.
  std::unordered_map<int, int> at;
  at.reserve(X.nodes.size());
  for (std::size_t k = 0; k < X.nodes.size(); ++k) at[X.nodes[k]] = int(k);

  const double D = model.D;
  auto slack = [&](int i, int j) {
    const Vec2& x = grid.nodes[i];
    const Vec2& y = grid.nodes[j];
    Vec2 u = y - x;
    const double r = u.norm();
    u /= r;
    const Vec2 dX = X.values[at.at(j)] - X.values[at.at(i)];
    return dX.dot(u) - 2.0 * (M_PI / D) * std::tan(M_PI * r / (2.0 * D));
  };
  auto exclude = [&](int i, int j) {
    return (grid.nodes[j] - grid.nodes[i]).norm() >= 0.999 * D;
  };
  return reduce_slack("expansion-modulus (tan bound)", pairs, grid, tolerance,
                      threads, slack, exclude);
}

double logconcavity_min_eig(const SpectralResult& spectral,
                            const GridDomain& grid, double delta) {
  const Eigen::VectorXd& phi0 = spectral.vectors.at(0);
  std::vector<int> adm = admissible_nodes(grid, phi0, delta);
  Eigen::VectorXd neglog = -phi0.array().max(1e-300).log();
  HessianSample H = hessian(neglog, grid);
  std::unordered_map<int, int> at;
  for (std::size_t k = 0; k < H.nodes.size(); ++k) at[H.nodes[k]] = int(k);

  double best = std::numeric_limits<double>::max();
  bool any = false;
  for (int i : adm) {
    auto it = at.find(i);
    if (it == at.end()) continue;  // mixed stencil exits the mask
    any = true;
    const Eigen::Matrix2d& M = H.values[it->second];
    if (grid.dim == 1) {
      best = std::min(best, M(0, 0));
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(M);
      best = std::min(best, es.eigenvalues().minCoeff());
    }
  }
  if (!any) throw NoAdmissibleNodes("no node carries a full Hessian stencil");
  return best;
}

RatioDiagnostic ratio_continuity(const SpectralResult& spectral,
                                 const GridDomain& grid, const Model1D& model,
                                 double delta) {
  if (spectral.values.size() < 3)
    throw DegenerateExcited("need three eigenvalues to certify simplicity");
  const double l1 = spectral.values[1], l2 = spectral.values[2];
  if (l2 - l1 <= 1e-6 * l1)
    throw DegenerateExcited("first excited level is (nearly) degenerate");

  const Eigen::VectorXd& phi0 = spectral.vectors.at(0);
  const Eigen::VectorXd& phi1 = spectral.vectors.at(1);
  std::vector<int> adm = admissible_nodes(grid, phi0, delta);

  RatioDiagnostic out;
  for (std::size_t a = 0; a < adm.size(); ++a) {
    for (std::size_t b = a + 1; b < adm.size(); ++b) {
      const int i = adm[a], j = adm[b];
      const double r = (grid.nodes[j] - grid.nodes[i]).norm();
      const double w = model.wbar(0.5 * r);
      if (w <= 0.0) continue;
      const double dw = std::abs(phi1[j] / phi0[j] - phi1[i] / phi0[i]);
      if (dw / w > out.Cstar) {
        out.Cstar = dw / w;
        out.argmaxX = grid.nodes[i];
        out.argmaxY = grid.nodes[j];
      }
    }
  }
  return out;
}

}  // namespace gapcheck
