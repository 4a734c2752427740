#pragma once

#include <string>
#include <vector>

#include "gapcheck/eigensolve.hpp"
#include "gapcheck/slack.hpp"

namespace gapcheck {

// One inequality verdict. `computed` and `slack` are raw grid-level values;
// `correctedSlack` uses Richardson extrapolation over two grid levels.
struct BoundVerdict {
  std::string id;
  double computed = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  double correctedSlack = 0.0;
  double correctedComputed = 0.0;
  Verdict verdict = Verdict::Fail;
};

// (4 f(h/2) - f(h)) / 3, assuming second-order error.
double richardson2(double coarse, double fine);

Verdict classify(double correctedSlack, double tol);

// lambda1 - lambda0 >= 3 pi^2 / D^2, Richardson-corrected over (h, h/2).
BoundVerdict gap_check(const SpectralResult& coarse, const SpectralResult& fine,
                       double D, double tol);

// lambda0 >= n (pi/D)^2 + inf q and lambda1 >= (n+3)(pi/D)^2 + inf q.
std::vector<BoundVerdict> dirichlet_lower_bounds(const SpectralResult& coarse,
                                                 const SpectralResult& fine,
                                                 double D, int n, double infq,
                                                 double tol);

// Volume forms via the isodiametric inequality, alpha(1)=2, alpha(2)=pi.
std::vector<BoundVerdict> isodiametric_bounds(const SpectralResult& coarse,
                                              const SpectralResult& fine,
                                              double volume, int n, double infq,
                                              double tol);

enum class NeumannVariant { ExpansionModulus, Convex };

// lambda~1 vs mu1 - mu0 (variant i) or 2 eps' + mu0 (variant ii).
BoundVerdict neumann_check(const SpectralResult& coarse,
                           const SpectralResult& fine, double D,
                           NeumannVariant variant, double epsPrime, double tol);

}  // namespace gapcheck
