#pragma once

#include <vector>

namespace gapcheck {

// Closed-form 1-D oracle on [-D/2, D/2]: eigendata of d^2/ds^2 with
// Dirichlet boundary, the tan barrier, and the free / Dirichlet heat
// kernels with analytic derivatives. Everything here is evaluated from
// series or closed forms, never from grids.
struct Model1D {
  double D = 1.0;
  int kMax = 200;  // eigenfunction-series truncation
  int mMax = 20;   // image-sum truncation

  explicit Model1D(double D_ = 1.0, int kMax_ = 200, int mMax_ = 20)
      : D(D_), kMax(kMax_), mMax(mMax_) {}

  double mu0() const;                 // pi^2 / D^2
  double mu1() const;                 // 4 pi^2 / D^2
  double phi0(double s) const;        // cos(pi s / D)
  double phi1(double s) const;        // sin(2 pi s / D)
  double wbar(double s) const;        // 2 sin(pi s / D)
  double wbar_prime(double s) const;
  double psi_tan(double s) const;     // -(pi/D) tan(pi s / D), |s| <= 0.499 D
};

enum class KernelMethod { Series, Images };

// Free heat kernel (4 pi t)^(-1/2) exp(-s^2 / 4t).
double kbar(double s, double t);

// Dirichlet kernel on [-D/2, D/2] centered at 0. The two methods must
// agree; each serves as the other's oracle.
double hbar(double s, double t, const Model1D& model, KernelMethod method);

// Series value together with the analytic derivatives needed by the
// parabolic barrier checks.
struct HbarDerivs {
  double H = 0.0, Hs = 0.0, Hss = 0.0, Hsss = 0.0, Ht = 0.0, Hst = 0.0;
  bool truncationUnderflow = false;  // dropped tail bound exceeded 1e-12
};
HbarDerivs hbar_series_derivs(double s, double t, const Model1D& model);

// d/ds log Hbar(s, t).
double dlog_hbar(double s, double t, const Model1D& model);

// psi(s, t) = (log(Hbar/Kbar))' and its partials.
double psi_parabolic(double s, double t, const Model1D& model);
struct PsiParabolic {
  double psi = 0.0, psi_s = 0.0, psi_ss = 0.0, psi_t = 0.0;
};
PsiParabolic psi_parabolic_derivs(double s, double t, const Model1D& model);

// max |psi'' + 2 psi psi'| over samples for the tan barrier.
double check_psi_ode(const Model1D& model, const std::vector<double>& sSamples);

// Signed residual psi_t - psi'' - 2 psi psi' + psi/t + (psi'/t) s over a
// sample grid; returns {min, max}.
struct PdeResidual {
  double min = 0.0, max = 0.0;
};
PdeResidual check_psi_pde(const Model1D& model, const std::vector<double>& sGrid,
                          const std::vector<double>& tGrid);

}  // namespace gapcheck
