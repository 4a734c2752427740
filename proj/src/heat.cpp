#include "gapcheck/heat.hpp"

#include <cmath>
#include <unordered_map>

#include <Eigen/SparseCholesky>

#include "gapcheck/error.hpp"

namespace gapcheck {

double min_kernel_time(double D, double h) {
  return std::max(0.02 * D * D, 10.0 * h * h);
}

KernelBasis make_kernel_basis(const OperatorMatrix& op, double tMin,
                              int kMaxPartial) {
  if (op.bc != BoundaryCondition::Dirichlet || !op.symmetric)
    throw TailTooFat("kernel basis requires a symmetric Dirichlet operator");
  const int N = static_cast<int>(op.M.rows());
  KernelBasis basis;
  basis.weight = std::pow(op.grid.h, op.grid.dim);
  if (N <= 3000) {
    basis.spectral = partial_eigenpairs(op, N);
    basis.full = true;
    return basis;
  }
  basis.spectral = partial_eigenpairs(op, std::min(N, kMaxPartial));
  basis.full = false;
  const double lamLast = basis.spectral.values[basis.spectral.values.size() - 1];
  if (std::exp(-lamLast * tMin) > 1e-12)
    throw TailTooFat("partial basis tail bound fails at the smallest requested t");
  return basis;
}

std::vector<HeatState> kernel_spectral(const KernelBasis& basis,
                                       const GridDomain& grid, int z,
                                       const std::vector<double>& tList) {
  const int N = grid.size();
  const int m = static_cast<int>(basis.spectral.values.size());
  std::vector<HeatState> out;
  out.reserve(tList.size());
  for (double t : tList) {
    HeatState st;
    st.z = z;
    st.t = t;
    st.method = "spectral";
    st.modeCount = m;
    st.H = Eigen::VectorXd::Zero(N);
    for (int k = 0; k < m; ++k) {
      const Eigen::VectorXd& phi = basis.spectral.vectors[k];
      st.H += std::exp(-basis.spectral.values[k] * t) * phi[z] * phi;
    }
    out.push_back(std::move(st));
  }
  return out;
}

std::vector<HeatState> kernel_cn(const OperatorMatrix& op, int z,
                                 const std::vector<double>& tList, double dt) {
  const int N = static_cast<int>(op.M.rows());
  Eigen::SparseMatrix<double> I(N, N);
  I.setIdentity();
  Eigen::SparseMatrix<double> lhs = I + (0.5 * dt) * op.M;
  Eigen::SparseMatrix<double> rhs = I - (0.5 * dt) * op.M;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(lhs);
  if (solver.info() != Eigen::Success)
    throw LinearSolveFailure("Crank-Nicolson factorization failed");

  Eigen::VectorXd u = Eigen::VectorXd::Zero(N);
  u[z] = 1.0 / std::pow(op.grid.h, op.grid.dim);

  std::vector<double> sorted = tList;
  std::sort(sorted.begin(), sorted.end());
  std::vector<HeatState> out;
  long step = 0;
  for (double t : sorted) {
    const long target = std::lround(t / dt);
    for (; step < target; ++step) {
      u = solver.solve(rhs * u);
      if (solver.info() != Eigen::Success)
        throw LinearSolveFailure("Crank-Nicolson step failed");
    }
    HeatState st;
    st.z = z;
    st.t = target * dt;
    st.method = "crank-nicolson";
    st.dt = dt;
    st.H = u;
    out.push_back(std::move(st));
  }
  return out;
}

SlackReport kernel_slack(const HeatState& state, const GridDomain& grid,
                         const Model1D& model, double delta, double tolerance,
                         std::size_t maxPairs, std::uint64_t seed, int threads,
                         bool viaRatioForm) {
  const double t = state.t;
  if (t < min_kernel_time(grid.D, grid.h))
    throw PoleProximity("snapshot earlier than the kernel-slack time floor");

  std::vector<int> adm = admissible_nodes(grid, state.H, delta);
  auto pairs = pairs_from_nodes(adm, maxPairs, seed);

  // Gradients of log H, central differences (log of H, not H, to avoid
  // cancellation where the kernel is tiny).
  Eigen::VectorXd logH(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    logH[i] = state.H[i] > 0.0 ? std::log(state.H[i]) : -1e30;
  const double i2h = 1.0 / (2.0 * grid.h);
  auto gradLogH = [&](int i) {
    Vec2 g = Vec2::Zero();
    g.x() = (logH[grid.nbr[i][1]] - logH[grid.nbr[i][0]]) * i2h;
    if (grid.dim == 2) g.y() = (logH[grid.nbr[i][3]] - logH[grid.nbr[i][2]]) * i2h;
    return g;
  };
  const Vec2 zpos = grid.nodes[state.z];
  const double D = model.D;

  auto slack = [&](int i, int j) {
    const Vec2& x = grid.nodes[i];
    const Vec2& y = grid.nodes[j];
    Vec2 u = y - x;
    const double r = u.norm();
    u /= r;
    if (!viaRatioForm) {
      const double diff = (gradLogH(j) - gradLogH(i)).dot(u);
      return 2.0 * dlog_hbar(0.5 * r, t, model) - diff;
    }
    // phi = H/K route: -(grad_y log phi - grad_x log phi).u >= -2 psi(r/2,t)
    // with grad log K at x equal to -(x-z)/(2t).
    Vec2 gphiY = gradLogH(j) + (y - zpos) / (2.0 * t);
    Vec2 gphiX = gradLogH(i) + (x - zpos) / (2.0 * t);
    return 2.0 * psi_parabolic(0.5 * r, t, model) - (gphiY - gphiX).dot(u);
  };
  auto exclude = [&](int i, int j) {
    return (grid.nodes[j] - grid.nodes[i]).norm() >= 0.999 * D;
  };
  return reduce_slack(viaRatioForm ? "kernel log-concavity (H/K form)"
                                   : "kernel log-concavity (log Hbar form)",
                      pairs, grid, tolerance, threads, slack, exclude);
}

double kernel_form_difference(const HeatState& state, const GridDomain& grid,
                              const Model1D& model, double delta,
                              std::size_t maxPairs, std::uint64_t seed) {
  const double t = state.t;
  if (t < min_kernel_time(grid.D, grid.h))
    throw PoleProximity("snapshot earlier than the kernel-slack time floor");

  std::vector<int> adm = admissible_nodes(grid, state.H, delta);
  auto pairs = pairs_from_nodes(adm, maxPairs, seed);

  Eigen::VectorXd logH(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    logH[i] = state.H[i] > 0.0 ? std::log(state.H[i]) : -1e30;
  const double i2h = 1.0 / (2.0 * grid.h);
  auto gradLogH = [&](int i) {
    Vec2 g = Vec2::Zero();
    g.x() = (logH[grid.nbr[i][1]] - logH[grid.nbr[i][0]]) * i2h;
    if (grid.dim == 2) g.y() = (logH[grid.nbr[i][3]] - logH[grid.nbr[i][2]]) * i2h;
    return g;
  };
  const Vec2 zpos = grid.nodes[state.z];
  const double D = model.D;

  double worst = 0.0;
  for (const auto& [i, j] : pairs) {
    const Vec2& x = grid.nodes[i];
    const Vec2& y = grid.nodes[j];
    Vec2 u = y - x;
    const double r = u.norm();
    if (r >= 0.999 * D) continue;
    u /= r;
    const double direct =
        2.0 * dlog_hbar(0.5 * r, t, model) - (gradLogH(j) - gradLogH(i)).dot(u);
    const Vec2 gphiY = gradLogH(j) + (y - zpos) / (2.0 * t);
    const Vec2 gphiX = gradLogH(i) + (x - zpos) / (2.0 * t);
    const double ratio =
        2.0 * psi_parabolic(0.5 * r, t, model) - (gphiY - gphiX).dot(u);
    worst = std::max(worst, std::abs(direct - ratio));
  }
  return worst;
}

DecayReport decay_check(const std::vector<HeatState>& states,
                        const Model1D& model, int dim, double infq) {
  if (states.size() < 3)
    throw PoleProximity("decay check needs at least 3 snapshots");
  DecayReport rep;
  rep.maxViolation = std::numeric_limits<double>::lowest();
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    const double t0 = states[i].t, t1 = states[i + 1].t;
    const double m0 = states[i].H.maxCoeff(), m1 = states[i + 1].H.maxCoeff();
    const double lhs = std::log(m1) - std::log(m0);
    const double hb0 = hbar_series_derivs(0.0, t0, model).H;
    const double hb1 = hbar_series_derivs(0.0, t1, model).H;
    const double rhs = dim * (std::log(hb1) - std::log(hb0)) - infq * (t1 - t0);
    rep.maxViolation = std::max(rep.maxViolation, lhs - rhs);
    ++rep.steps;
  }
  return rep;
}

}  // namespace gapcheck
