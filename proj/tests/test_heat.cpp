#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gapcheck/error.hpp"
#include "gapcheck/heat.hpp"

using namespace gapcheck;

namespace {
struct Setting {
  GridDomain grid;
  OperatorMatrix op;
  KernelBasis basis;
  int z = 0;
};
Setting make_interval(double h, double c = 0.0, double tMin = 0.02) {
  Setting s{build_grid(DomainSpec::interval(-0.5, 0.5), h), {}, {}, 0};
  Potential q;
  q.c = c;
  s.op = assemble_dirichlet(s.grid, q);
  s.basis = make_kernel_basis(s.op, tMin);
  for (int i = 0; i < s.grid.size(); ++i)
    if (std::abs(s.grid.nodes[i].x()) < 1e-12) s.z = i;
  return s;
}
}  // namespace

TEST_CASE("spectral kernel reproduces the closed-form interval kernel") {
  Setting s = make_interval(1.0 / 64);
  Model1D model(1.0);
  auto states = kernel_spectral(s.basis, s.grid, s.z, {0.05, 0.2});
  REQUIRE(states.size() == 2);
  for (const auto& st : states) {
    CHECK(st.method == "spectral");
    for (int i = 0; i < s.grid.size(); ++i) {
      const double expect =
          hbar(s.grid.nodes[i].x(), st.t, model, KernelMethod::Series);
      if (expect > 1e-6)
        CHECK(st.H[i] == doctest::Approx(expect).epsilon(5e-3));
    }
  }
}

TEST_CASE("Crank-Nicolson cross-validates the spectral kernel") {
  Setting s = make_interval(1.0 / 64);
  auto sp = kernel_spectral(s.basis, s.grid, s.z, {0.1});
  auto cn = kernel_cn(s.op, s.z, {0.1}, 1e-4);
  REQUIRE(cn.size() == 1);
  CHECK(cn[0].method == "crank-nicolson");
  CHECK(cn[0].t == doctest::Approx(0.1));
  const double scale = sp[0].H.maxCoeff();
  CHECK((cn[0].H - sp[0].H).cwiseAbs().maxCoeff() <= 1e-5 * scale);
}

TEST_CASE("kernel positivity and mass decay") {
  Setting s = make_interval(1.0 / 64);
  auto states = kernel_spectral(s.basis, s.grid, s.z, {0.02, 0.05, 0.1, 0.3});
  double prevMass = std::numeric_limits<double>::max();
  for (const auto& st : states) {
    CHECK(st.H.minCoeff() > -1e-12);
    const double mass = s.grid.h * st.H.sum();
    CHECK(mass < prevMass);
    CHECK(mass <= 1.0 + 1e-9);
    prevMass = mass;
  }
}

TEST_CASE("constant potential multiplies the kernel by exp(-c t)") {
  Setting s0 = make_interval(1.0 / 32);
  Setting sc = make_interval(1.0 / 32, 1.3);
  auto a = kernel_spectral(s0.basis, s0.grid, s0.z, {0.2});
  auto b = kernel_spectral(sc.basis, sc.grid, sc.z, {0.2});
  const double f = std::exp(-1.3 * 0.2);
  for (int i = 0; i < s0.grid.size(); ++i)
    CHECK(b[0].H[i] == doctest::Approx(f * a[0].H[i]).epsilon(1e-10));
}

TEST_CASE("long time: kernel collapses onto the ground-state product") {
  Setting s = make_interval(1.0 / 32);
  const double t = 3.0;
  auto states = kernel_spectral(s.basis, s.grid, s.z, {t});
  const auto& sp = s.basis.spectral;
  for (int i = 0; i < s.grid.size(); ++i) {
    const double lead =
        std::exp(-sp.values[0] * t) * sp.vectors[0][s.z] * sp.vectors[0][i];
    CHECK(states[0].H[i] == doctest::Approx(lead).epsilon(1e-12));
  }
}

TEST_CASE("kernel slack: tight in 1-D, both algebraic forms coincide") {
  Setting s = make_interval(1.0 / 128);
  Model1D model(1.0);
  auto states = kernel_spectral(s.basis, s.grid, s.z, {0.1});
  SlackReport direct =
      kernel_slack(states[0], s.grid, model, 1e-2, 1e-2, 1u << 20, 3, 2, false);
  CHECK(direct.verdict != Verdict::Fail);
  CHECK(std::abs(direct.minSlack) <= 1e-2);
  SlackReport ratio =
      kernel_slack(states[0], s.grid, model, 1e-2, 1e-2, 1u << 20, 3, 2, true);
  CHECK(ratio.pairCount == direct.pairCount);
  CHECK(std::abs(ratio.minSlack - direct.minSlack) <= 1e-11);
  CHECK(kernel_form_difference(states[0], s.grid, model, 1e-2, 20000, 3) <=
        1e-11);
}

TEST_CASE("time floor guards the kernel slack") {
  Setting s = make_interval(1.0 / 32);
  CHECK(min_kernel_time(1.0, 1.0 / 32) == doctest::Approx(0.02));
  CHECK(min_kernel_time(1.0, 0.1) == doctest::Approx(0.1));  // 10 h^2 binds
  auto states = kernel_spectral(s.basis, s.grid, s.z, {1e-3});
  CHECK_THROWS_AS(
      kernel_slack(states[0], s.grid, Model1D(1.0), 1e-2, 1e-2, 1000, 1, 1),
      PoleProximity);
}

TEST_CASE("decay check: equality case obeys the model rate") {
  Setting s = make_interval(1.0 / 64);
  auto states =
      kernel_spectral(s.basis, s.grid, s.z, {0.03, 0.06, 0.12, 0.25, 0.5});
  DecayReport rep = decay_check(states, Model1D(1.0), 1, 0.0);
  CHECK(rep.steps == 4);
  CHECK(rep.maxViolation <= 1e-3);

  // A constant potential shifts both sides identically.
  Setting sc = make_interval(1.0 / 64, 0.8);
  auto sh = kernel_spectral(sc.basis, sc.grid, sc.z, {0.03, 0.06, 0.12, 0.25, 0.5});
  DecayReport repc = decay_check(sh, Model1D(1.0), 1, 0.8);
  CHECK(repc.maxViolation == doctest::Approx(rep.maxViolation).epsilon(1e-9));

  CHECK_THROWS_AS(decay_check({states[0], states[1]}, Model1D(1.0), 1, 0.0),
                  PoleProximity);
}

TEST_CASE("kernel basis validation") {
  GridDomain g = build_cell_grid(DomainSpec::interval(-0.5, 0.5), 1.0 / 16);
  OperatorMatrix op = assemble_neumann_drift(g, {});
  CHECK_THROWS_AS(make_kernel_basis(op, 0.1), TailTooFat);
}
