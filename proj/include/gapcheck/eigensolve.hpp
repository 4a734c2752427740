#pragma once

#include <vector>

#include <Eigen/Core>

#include "gapcheck/operators.hpp"

namespace gapcheck {

// Lowest part of the spectrum with certified residuals. Eigenfunctions are
// L2-normalized with weight h^n; the ground state is sign-normalized so
// that its largest-magnitude entry is positive.
struct SpectralResult {
  Eigen::VectorXd values;
  std::vector<Eigen::VectorXd> vectors;
  Eigen::VectorXd residuals;
  double h = 0.0;
  int dim = 1;
};

// k smallest eigenpairs; dense solve for N <= 3000, otherwise shifted
// inverse iteration with deflation. Throws NoConvergence / PerronFailure.
// k is capped at 6; heat-kernel internals use partial_eigenpairs.
SpectralResult smallest_eigenpairs(const OperatorMatrix& op, int k);

// Same solver without the public k cap; used for partial kernel bases.
SpectralResult partial_eigenpairs(const OperatorMatrix& op, int k);

}  // namespace gapcheck
