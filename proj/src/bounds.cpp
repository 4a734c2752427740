#include "gapcheck/bounds.hpp"

#include <cmath>

namespace gapcheck {

double richardson2(double coarse, double fine) {
  return (4.0 * fine - coarse) / 3.0;
}

Verdict classify(double correctedSlack, double tol) {
  if (correctedSlack < -tol) return Verdict::Fail;
  if (std::abs(correctedSlack) <= tol) return Verdict::Marginal;
  return Verdict::Pass;
}

namespace {

BoundVerdict make_verdict(std::string id, double raw, double corrected,
                          double bound, double tol) {
  BoundVerdict v;
  v.id = std::move(id);
  v.computed = raw;
  v.correctedComputed = corrected;
  v.bound = bound;
  v.slack = raw - bound;
  v.correctedSlack = corrected - bound;
  v.verdict = classify(v.correctedSlack, tol);
  return v;
}

}  // namespace

BoundVerdict gap_check(const SpectralResult& coarse, const SpectralResult& fine,
                       double D, double tol) {
  const double gapC = coarse.values[1] - coarse.values[0];
  const double gapF = fine.values[1] - fine.values[0];
  return make_verdict("fundamental-gap", gapF, richardson2(gapC, gapF),
                      3.0 * M_PI * M_PI / (D * D), tol);
}

std::vector<BoundVerdict> dirichlet_lower_bounds(const SpectralResult& coarse,
                                                 const SpectralResult& fine,
                                                 double D, int n, double infq,
                                                 double tol) {
  const double p2 = (M_PI / D) * (M_PI / D);
  std::vector<BoundVerdict> out;
  out.push_back(make_verdict("lambda0-diameter", fine.values[0],
                             richardson2(coarse.values[0], fine.values[0]),
                             n * p2 + infq, tol));
  out.push_back(make_verdict("lambda1-diameter", fine.values[1],
                             richardson2(coarse.values[1], fine.values[1]),
                             (n + 3) * p2 + infq, tol));
  return out;
}

std::vector<BoundVerdict> isodiametric_bounds(const SpectralResult& coarse,
                                              const SpectralResult& fine,
                                              double volume, int n, double infq,
                                              double tol) {
  const double alpha = n == 1 ? 2.0 : M_PI;
  const double base = (M_PI * M_PI / 4.0) * std::pow(alpha / volume, 2.0 / n);
  std::vector<BoundVerdict> out;
  out.push_back(make_verdict("lambda0-isodiametric", fine.values[0],
                             richardson2(coarse.values[0], fine.values[0]),
                             n * base + infq, tol));
  out.push_back(make_verdict("lambda1-isodiametric", fine.values[1],
                             richardson2(coarse.values[1], fine.values[1]),
                             (n + 3) * base + infq, tol));
  return out;
}

BoundVerdict neumann_check(const SpectralResult& coarse,
                           const SpectralResult& fine, double D,
                           NeumannVariant variant, double epsPrime, double tol) {
  const double mu0 = M_PI * M_PI / (D * D);
  const double bound =
      variant == NeumannVariant::ExpansionModulus ? 3.0 * mu0 : 2.0 * epsPrime + mu0;
  const char* id = variant == NeumannVariant::ExpansionModulus
                       ? "neumann-expansion-modulus"
                       : "neumann-convex";
  return make_verdict(id, fine.values[1],
                      richardson2(coarse.values[1], fine.values[1]), bound, tol);
}

}  // namespace gapcheck
