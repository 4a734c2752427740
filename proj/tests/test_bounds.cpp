#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gapcheck/bounds.hpp"
#include "gapcheck/operators.hpp"

using namespace gapcheck;

namespace {
SpectralResult interval_eigs(double h, int k = 2) {
  GridDomain g = build_grid(DomainSpec::interval(-0.5, 0.5), h);
  return smallest_eigenpairs(assemble_dirichlet(g, Potential::zero()), k);
}
const double kPi2 = M_PI * M_PI;
}  // namespace

TEST_CASE("richardson2 cancels the h^2 term exactly") {
  // f(h) = a + b h^2 at h and h/2.
  const double a = 3.7, b = -2.1, h = 0.2;
  CHECK(richardson2(a + b * h * h, a + b * h * h / 4.0) ==
        doctest::Approx(a).epsilon(1e-14));
}

TEST_CASE("Richardson-corrected eigenvalues converge at fourth order") {
  const double l16 = interval_eigs(1.0 / 16).values[0];
  const double l32 = interval_eigs(1.0 / 32).values[0];
  const double l64 = interval_eigs(1.0 / 64).values[0];
  const double e1 = std::abs(richardson2(l16, l32) - kPi2);
  const double e2 = std::abs(richardson2(l32, l64) - kPi2);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 3.8);
  CHECK(order <= 4.2);
}

TEST_CASE("three-way classification with the marginal band") {
  CHECK(classify(1.0, 1e-3) == Verdict::Pass);
  CHECK(classify(1e-4, 1e-3) == Verdict::Marginal);
  CHECK(classify(-1e-4, 1e-3) == Verdict::Marginal);
  CHECK(classify(-2e-3, 1e-3) == Verdict::Fail);
  CHECK(to_string(Verdict::Pass) == "pass");
  CHECK(to_string(Verdict::Marginal) == "marginal");
  CHECK(to_string(Verdict::Fail) == "fail");
}

TEST_CASE("gap check: interval equality lands in the marginal band") {
  SpectralResult c = interval_eigs(1.0 / 64), f = interval_eigs(1.0 / 128);
  BoundVerdict v = gap_check(c, f, 1.0, 1e-3);
  CHECK(v.id == "fundamental-gap");
  CHECK(v.bound == doctest::Approx(3.0 * kPi2));
  CHECK(v.verdict == Verdict::Marginal);
  CHECK(std::abs(v.correctedSlack) <= 1e-5);
  // Raw slack keeps the O(h^2) defect; corrected is much tighter.
  CHECK(std::abs(v.correctedSlack) < std::abs(v.slack));
}

TEST_CASE("diameter lower bounds carry the potential infimum") {
  SpectralResult c = interval_eigs(1.0 / 64), f = interval_eigs(1.0 / 128);
  auto vs = dirichlet_lower_bounds(c, f, 1.0, 1, 0.25, 1e-3);
  REQUIRE(vs.size() == 2);
  CHECK(vs[0].id == "lambda0-diameter");
  CHECK(vs[0].bound == doctest::Approx(kPi2 + 0.25));
  CHECK(vs[1].id == "lambda1-diameter");
  CHECK(vs[1].bound == doctest::Approx(4.0 * kPi2 + 0.25));
  // With infq = 0.25 but q = 0, both bounds are (slightly) violated.
  CHECK(vs[0].verdict == Verdict::Fail);
}

TEST_CASE("isodiametric bounds use alpha(1) = 2 and alpha(2) = pi") {
  SpectralResult c = interval_eigs(1.0 / 64), f = interval_eigs(1.0 / 128);
  auto v1 = isodiametric_bounds(c, f, 1.0, 1, 0.0, 1e-3);
  CHECK(v1[0].bound == doctest::Approx(kPi2));  // unit interval: equality
  CHECK(v1[0].verdict == Verdict::Marginal);
  CHECK(v1[1].bound == doctest::Approx(4.0 * kPi2));

  auto v2 = isodiametric_bounds(c, f, 1.0, 2, 0.0, 1e-3);
  CHECK(v2[0].bound == doctest::Approx(M_PI * kPi2 / 2.0));  // pi^3 / 2
  CHECK(v2[1].bound == doctest::Approx(5.0 * M_PI * kPi2 / 4.0));
}

TEST_CASE("Neumann verdicts for both bound variants") {
  GridDomain gc = build_cell_grid(DomainSpec::interval(-0.5, 0.5), 1.0 / 64);
  GridDomain gf = build_cell_grid(DomainSpec::interval(-0.5, 0.5), 1.0 / 128);
  SpectralResult c = smallest_eigenpairs(assemble_neumann_drift(gc, {}), 2);
  SpectralResult f = smallest_eigenpairs(assemble_neumann_drift(gf, {}), 2);

  BoundVerdict convex = neumann_check(c, f, 1.0, NeumannVariant::Convex, 0.0, 1e-3);
  CHECK(convex.id == "neumann-convex");
  CHECK(convex.bound == doctest::Approx(kPi2));
  CHECK(convex.verdict == Verdict::Marginal);  // flat drift: equality

  BoundVerdict eps = neumann_check(c, f, 1.0, NeumannVariant::Convex, 0.3, 1e-3);
  CHECK(eps.bound == doctest::Approx(0.6 + kPi2));
  CHECK(eps.verdict == Verdict::Fail);  // lambda~1 = pi^2 < bound

  BoundVerdict em =
      neumann_check(c, f, 1.0, NeumannVariant::ExpansionModulus, 0.0, 1e-3);
  CHECK(em.id == "neumann-expansion-modulus");
  CHECK(em.bound == doctest::Approx(3.0 * kPi2));
}

TEST_CASE("corrected slack transforms covariantly under constant shifts") {
  GridDomain g64 = build_grid(DomainSpec::interval(-0.5, 0.5), 1.0 / 64);
  GridDomain g128 = build_grid(DomainSpec::interval(-0.5, 0.5), 1.0 / 128);
  Potential qc;
  qc.c = 0.4;
  SpectralResult c0 = smallest_eigenpairs(assemble_dirichlet(g64, Potential::zero()), 2);
  SpectralResult f0 = smallest_eigenpairs(assemble_dirichlet(g128, Potential::zero()), 2);
  SpectralResult cc = smallest_eigenpairs(assemble_dirichlet(g64, qc), 2);
  SpectralResult fc = smallest_eigenpairs(assemble_dirichlet(g128, qc), 2);
  auto base = dirichlet_lower_bounds(c0, f0, 1.0, 1, 0.0, 1e-3);
  auto shifted = dirichlet_lower_bounds(cc, fc, 1.0, 1, 0.4, 1e-3);
  for (int j = 0; j < 2; ++j)
    CHECK(std::abs(shifted[j].correctedSlack - base[j].correctedSlack) <= 1e-10);
}
