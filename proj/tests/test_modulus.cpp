#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "gapcheck/error.hpp"
#include "gapcheck/modulus.hpp"

using namespace gapcheck;

namespace {
struct Setup1D {
  GridDomain grid;
  SpectralResult spectral;
};
Setup1D make_1d(double h, int k = 2) {
  GridDomain g = build_grid(DomainSpec::interval(-0.5, 0.5), h);
  SpectralResult r = smallest_eigenpairs(assemble_dirichlet(g, Potential::zero()), k);
  return {std::move(g), std::move(r)};
}
}  // namespace

TEST_CASE("ground-state field matches pi tan(pi s) and is odd") {
  auto [g, r] = make_1d(1.0 / 64);
  VectorFieldSample X = ground_state_field(r, g, 1e-2);
  CHECK_FALSE(X.empty());
  std::map<long, double> bySite;
  for (std::size_t k = 0; k < X.nodes.size(); ++k) {
    const double s = g.nodes[X.nodes[k]].x();
    bySite[std::lround(s * 64)] = X.values[k].x();
    if (std::abs(s) <= 0.35)
      CHECK(X.values[k].x() ==
            doctest::Approx(M_PI * std::tan(M_PI * s)).epsilon(5e-3));
  }
  for (const auto& [site, val] : bySite) {
    REQUIRE(bySite.count(-site) == 1);
    CHECK(val == doctest::Approx(-bySite.at(-site)));  // odd by symmetry
  }
}

TEST_CASE("expansion slack: nonnegative up to O(h^2), symmetric pairs tight") {
  auto [g, r] = make_1d(1.0 / 128);
  Model1D model(1.0);
  VectorFieldSample X = ground_state_field(r, g, 1e-2);
  auto pairs = pairs_from_nodes(X.nodes, 1u << 20, 9);
  SlackReport rep = expansion_slack(X, g, pairs, model,
                                    default_slack_tol(g.h, 1.0), 2);
  CHECK(rep.pairCount == pairs.size());
  CHECK(rep.excludedPoleCount == 0);
  CHECK(rep.verdict != Verdict::Fail);
  CHECK(std::abs(rep.minSlack) <= 0.06);  // tight: O(h^2) around equality
  CHECK(rep.q0 == doctest::Approx(rep.minSlack));
  CHECK(rep.q1 >= rep.q0);
  CHECK(rep.q50 >= rep.q1);
  // The binding pairs are near-symmetric: |x + y| small at the argmin.
  CHECK(std::abs(rep.argminX.x() + rep.argminY.x()) <= 0.1);
}

TEST_CASE("slack reduction is deterministic across thread counts") {
  auto [g, r] = make_1d(1.0 / 64);
  Model1D model(1.0);
  VectorFieldSample X = ground_state_field(r, g, 1e-2);
  auto pairs = pairs_from_nodes(X.nodes, 2000, 13);
  SlackReport a = expansion_slack(X, g, pairs, model, 1e-2, 1);
  SlackReport b = expansion_slack(X, g, pairs, model, 1e-2, 5);
  CHECK(a.minSlack == b.minSlack);  // bitwise
  CHECK(a.q1 == b.q1);
  CHECK(a.q50 == b.q50);
  CHECK(a.argminSeparation == b.argminSeparation);
}

TEST_CASE("pole exclusion counts pairs instead of evaluating them") {
  // Hand-built field on a grid fine enough that node separation can
  // exceed 0.999 D.
  GridDomain g = build_grid(DomainSpec::interval(-0.5, 0.5), 1.0 / 4096);
  Eigen::VectorXd phi(g.size());
  for (int i = 0; i < g.size(); ++i)
    phi[i] = std::cos(M_PI * g.nodes[i].x());
  auto adm = admissible_nodes(g, phi, 1e-6);
  // Pick the two extreme admissible nodes plus the center.
  int lo = adm[0], hi = adm[0], mid = adm[0];
  for (int i : adm) {
    if (g.nodes[i].x() < g.nodes[lo].x()) lo = i;
    if (g.nodes[i].x() > g.nodes[hi].x()) hi = i;
    if (std::abs(g.nodes[i].x()) < std::abs(g.nodes[mid].x())) mid = i;
  }
  REQUIRE((g.nodes[hi] - g.nodes[lo]).norm() >= 0.999);
  VectorFieldSample X;
  X.nodes = {lo, mid, hi};
  X.values = {Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
  std::vector<std::pair<int, int>> pairs = {{lo, hi}, {lo, mid}};
  SlackReport rep = expansion_slack(X, g, pairs, Model1D(1.0), 10.0, 1);
  CHECK(rep.excludedPoleCount == 1);
  CHECK(rep.pairCount == 1);
}

TEST_CASE("reduction with nothing left to evaluate throws") {
  GridDomain g = build_grid(DomainSpec::interval(-0.5, 0.5), 1.0 / 8);
  std::vector<std::pair<int, int>> pairs = {{0, 1}};
  CHECK_THROWS_AS(
      reduce_slack("x", pairs, g, 1.0, 1, [](int, int) { return 0.0; },
                   [](int, int) { return true; }),
      NoAdmissibleNodes);
}

TEST_CASE("log-concavity floor: pi^2 in 1-D, scales like 1/D^2") {
  auto [g, r] = make_1d(1.0 / 64);
  const double m = logconcavity_min_eig(r, g, 1e-2);
  CHECK(m >= M_PI * M_PI - 0.1);
  CHECK(m <= M_PI * M_PI + 0.1);

  GridDomain g2 = build_grid(DomainSpec::interval(-1.0, 1.0), 1.0 / 32);
  SpectralResult r2 =
      smallest_eigenpairs(assemble_dirichlet(g2, Potential::zero()), 1);
  const double m2 = logconcavity_min_eig(r2, g2, 1e-2);
  CHECK(m2 == doctest::Approx(M_PI * M_PI / 4.0).epsilon(2e-2));
}

TEST_CASE("ratio continuity: C* -> 2 on the interval (closed-form ratio)") {
  auto [g, r] = make_1d(1.0 / 64, 3);
  RatioDiagnostic d = ratio_continuity(r, g, Model1D(1.0), 1e-1);
  // w = phi1/phi0 = 2 sin(pi s); |w(y)-w(x)| / wbar(|y-x|/2) peaks at 2.
  CHECK(d.Cstar >= 1.9);
  CHECK(d.Cstar <= 2.05);
  CHECK(std::abs(d.argmaxX.x() + d.argmaxY.x()) <= 0.2);
}

TEST_CASE("ratio diagnostic refuses a degenerate excited level") {
  GridDomain g = build_grid(DomainSpec::rectangle(1.0, 1.0), 1.0 / 20);
  SpectralResult r =
      smallest_eigenpairs(assemble_dirichlet(g, Potential::zero()), 3);
  CHECK_THROWS_AS(ratio_continuity(r, g, Model1D(std::sqrt(2.0)), 1e-2),
                  DegenerateExcited);
  SpectralResult two =
      smallest_eigenpairs(assemble_dirichlet(g, Potential::zero()), 2);
  CHECK_THROWS_AS(ratio_continuity(two, g, Model1D(std::sqrt(2.0)), 1e-2),
                  DegenerateExcited);
}
