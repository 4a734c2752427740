#pragma once

#include <optional>

#include "gapcheck/eigensolve.hpp"
#include "gapcheck/model1d.hpp"
#include "gapcheck/slack.hpp"

namespace gapcheck {

// X = -(grad_h phi0)/phi0 on the delta-sublevel of the ground state.
VectorFieldSample ground_state_field(const SpectralResult& spectral,
                                     const GridDomain& grid, double delta);

// Pairwise slack of the tan expansion-modulus bound:
//   (X(y)-X(x)).(y-x)/|y-x| - 2 (pi/D) tan(pi |y-x| / 2D).
// Pairs with |y-x| >= 0.999 D are excluded and counted.
SlackReport expansion_slack(const VectorFieldSample& X, const GridDomain& grid,
                            const std::vector<std::pair<int, int>>& pairs,
                            const Model1D& model, double tolerance,
                            int threads = 1);

// Minimum over admissible nodes of the smallest eigenvalue of the discrete
// Hessian of -log phi0 (the log-concavity certificate).
double logconcavity_min_eig(const SpectralResult& spectral,
                            const GridDomain& grid, double delta);

// Modulus-of-continuity diagnostic for w = phi1/phi0 against the 1-D
// profile wbar; reported, not pass/fail.
struct RatioDiagnostic {
  double Cstar = 0.0;
  Vec2 argmaxX = Vec2::Zero(), argmaxY = Vec2::Zero();
};
RatioDiagnostic ratio_continuity(const SpectralResult& spectral,
                                 const GridDomain& grid, const Model1D& model,
                                 double delta);

}  // namespace gapcheck
