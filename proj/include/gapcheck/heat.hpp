#pragma once

#include <vector>

#include "gapcheck/eigensolve.hpp"
#include "gapcheck/model1d.hpp"
#include "gapcheck/slack.hpp"

namespace gapcheck {

// Dirichlet heat-kernel snapshot H(z, ., t) on interior nodes.
struct HeatState {
  int z = 0;
  double t = 0.0;
  Eigen::VectorXd H;
  std::string method;  // "spectral" or "crank-nicolson"
  int modeCount = 0;
  double dt = 0.0;
};

// Eigenbasis backing the spectral kernel representation. Full for
// N <= 3000, else a partial basis whose truncation tail must satisfy
// exp(-lambda_last * tMin) <= 1e-12 (TailTooFat otherwise).
struct KernelBasis {
  SpectralResult spectral;
  bool full = false;
  double weight = 0.0;  // h^n
};

KernelBasis make_kernel_basis(const OperatorMatrix& op, double tMin,
                              int kMaxPartial = 120);

std::vector<HeatState> kernel_spectral(const KernelBasis& basis,
                                       const GridDomain& grid, int z,
                                       const std::vector<double>& tList);

// Crank-Nicolson evolution from the discrete delta h^{-n} at z; the
// cross-validation path for the spectral kernel.
std::vector<HeatState> kernel_cn(const OperatorMatrix& op, int z,
                                 const std::vector<double>& tList, double dt);

// Minimum slack of the parabolic comparison
//   2 (log Hbar)'(|y-x|/2, t) - (grad_y log H - grad_x log H).(y-x)/|y-x|,
// over admissible pairs of the delta-sublevel of H. `viaRatioForm` computes
// the algebraically equivalent form in terms of phi = H/K instead.
SlackReport kernel_slack(const HeatState& state, const GridDomain& grid,
                         const Model1D& model, double delta, double tolerance,
                         std::size_t maxPairs, std::uint64_t seed,
                         int threads = 1, bool viaRatioForm = false);

// Largest absolute per-pair difference between the two algebraically
// equivalent slack forms over the same admissible pair sample.
double kernel_form_difference(const HeatState& state, const GridDomain& grid,
                              const Model1D& model, double delta,
                              std::size_t maxPairs, std::uint64_t seed);

// Discrete-in-time check of d/dt log max_x H <= n d/dt log Hbar(0,t) - inf q
// across consecutive snapshots; returns the largest signed violation.
struct DecayReport {
  double maxViolation = 0.0;
  std::size_t steps = 0;
};
DecayReport decay_check(const std::vector<HeatState>& states,
                        const Model1D& model, int dim, double infq);

double min_kernel_time(double D, double h);

}  // namespace gapcheck
