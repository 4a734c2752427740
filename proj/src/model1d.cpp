#include "gapcheck/model1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gapcheck/error.hpp"

namespace gapcheck {

double Model1D::mu0() const { return M_PI * M_PI / (D * D); }
double Model1D::mu1() const { return 4.0 * M_PI * M_PI / (D * D); }
double Model1D::phi0(double s) const { return std::cos(M_PI * s / D); }
double Model1D::phi1(double s) const { return std::sin(2.0 * M_PI * s / D); }
double Model1D::wbar(double s) const { return 2.0 * std::sin(M_PI * s / D); }
double Model1D::wbar_prime(double s) const {
  return 2.0 * M_PI / D * std::cos(M_PI * s / D);
}

double Model1D::psi_tan(double s) const {
  if (std::abs(s) > 0.499 * D)
    throw PoleProximity("tan barrier evaluated too close to the pole at D/2");
  return -(M_PI / D) * std::tan(M_PI * s / D);
}

double kbar(double s, double t) {
  if (!(t > 0.0)) throw PoleProximity("kbar requires t > 0");
  return std::exp(-s * s / (4.0 * t)) / std::sqrt(4.0 * M_PI * t);
}

HbarDerivs hbar_series_derivs(double s, double t, const Model1D& model) {
  const double D = model.D;
  if (!(t > 0.0) || std::abs(s) >= 0.5 * D)
    throw PoleProximity("hbar requires t > 0 and |s| < D/2");
  // e_k(s) = sqrt(2/D) sin(k pi (s + D/2) / D); e_k(0) vanishes for even k.
  HbarDerivs out;
  const double c = 2.0 / D;
  for (int k = 1; k <= model.kMax; k += 2) {
    const double a = k * M_PI / D;
    const double lam = a * a;
    const double decay = std::exp(-lam * t);
    const double phase = a * (s + 0.5 * D);
    const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;  // sin(k pi / 2), odd k
    const double ek0 = sgn;                              // times sqrt(2/D), folded into c
    const double sn = std::sin(phase), cs = std::cos(phase);
    const double w = c * decay * ek0;
    out.H += w * sn;
    out.Hs += w * a * cs;
    out.Hss += -w * lam * sn;
    out.Hsss += -w * lam * a * cs;
    out.Ht += -w * lam * sn;
    out.Hst += -w * lam * a * cs;
  }
  // Tail bound: geometric-type envelope on the first dropped odd term.
  const int kd = model.kMax % 2 == 0 ? model.kMax + 1 : model.kMax + 2;
  const double ad = kd * M_PI / D;
  if (c * std::exp(-ad * ad * t) * 2.0 > 1e-12) out.truncationUnderflow = true;
  return out;
}

double hbar(double s, double t, const Model1D& model, KernelMethod method) {
  const double D = model.D;
  if (!(t > 0.0) || std::abs(s) >= 0.5 * D)
    throw PoleProximity("hbar requires t > 0 and |s| < D/2");
  if (method == KernelMethod::Series) return hbar_series_derivs(s, t, model).H;
  // Alternating reflections of the free kernel: source at 0 on [-D/2, D/2]
  // maps to images at 2mD (positive) and 2mD - D shifted sources (negative).
  double sum = 0.0;
  for (int m = -model.mMax; m <= model.mMax; ++m) {
    sum += kbar(s - 2.0 * m * D, t);
    sum -= kbar(s + D - 2.0 * m * D, t);
  }
  return sum;
}

double dlog_hbar(double s, double t, const Model1D& model) {
  HbarDerivs d = hbar_series_derivs(s, t, model);
  return d.Hs / d.H;
}

double psi_parabolic(double s, double t, const Model1D& model) {
  HbarDerivs d = hbar_series_derivs(s, t, model);
  return d.Hs / d.H + s / (2.0 * t);
}

PsiParabolic psi_parabolic_derivs(double s, double t, const Model1D& model) {
  HbarDerivs d = hbar_series_derivs(s, t, model);
  const double L = d.Hs / d.H;  // (log H)'
  PsiParabolic p;
  p.psi = L + s / (2.0 * t);
  p.psi_s = d.Hss / d.H - L * L + 1.0 / (2.0 * t);
  p.psi_ss = d.Hsss / d.H - 3.0 * d.Hss * d.Hs / (d.H * d.H) + 2.0 * L * L * L;
  p.psi_t = d.Hst / d.H - d.Hs * d.Ht / (d.H * d.H) - s / (2.0 * t * t);
  return p;
}

double check_psi_ode(const Model1D& model, const std::vector<double>& sSamples) {
  const double a = M_PI / model.D;
  double worst = 0.0;
  for (double s : sSamples) {
    const double tn = std::tan(a * s);
    const double sec2 = 1.0 + tn * tn;
    const double psi = -a * tn;
    const double psi1 = -a * a * sec2;
    const double psi2 = -2.0 * a * a * a * sec2 * tn;
    worst = std::max(worst, std::abs(psi2 + 2.0 * psi * psi1));
  }
  return worst;
}

PdeResidual check_psi_pde(const Model1D& model, const std::vector<double>& sGrid,
                          const std::vector<double>& tGrid) {
  PdeResidual r;
  r.min = std::numeric_limits<double>::max();
  r.max = std::numeric_limits<double>::lowest();
  for (double t : tGrid) {
    for (double s : sGrid) {
      PsiParabolic p = psi_parabolic_derivs(s, t, model);
      double res = p.psi_t - p.psi_ss - 2.0 * p.psi * p.psi_s + p.psi / t +
                   (p.psi_s / t) * s;
      r.min = std::min(r.min, res);
      r.max = std::max(r.max, res);
    }
  }
  return r;
}

}  // namespace gapcheck
