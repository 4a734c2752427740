#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "gapcheck/error.hpp"
#include "gapcheck/geometry.hpp"

using namespace gapcheck;

namespace {
std::set<std::pair<long, long>> node_keys(const GridDomain& g, double scale) {
  std::set<std::pair<long, long>> keys;
  for (const auto& p : g.nodes)
    keys.insert({std::lround(p.x() * scale), std::lround(p.y() * scale)});
  return keys;
}
}  // namespace

TEST_CASE("domain constructors validate their parameters") {
  CHECK_THROWS_AS(DomainSpec::interval(1.0, 1.0), NonConvex);
  CHECK_THROWS_AS(DomainSpec::rectangle(-1.0, 1.0), NonConvex);
  CHECK_THROWS_AS(DomainSpec::disk(0.0), NonConvex);
  CHECK_THROWS_AS(DomainSpec::ellipse(1.0, -2.0), NonConvex);
  // Collinear / reflex vertex lists are rejected.
  CHECK_THROWS_AS(DomainSpec::polygon({{0, 0}, {1, 0}, {2, 0}}), NonConvex);
  CHECK_THROWS_AS(
      DomainSpec::polygon({{0, 0}, {2, 0}, {2, 2}, {1, 0.5}, {0, 2}}),
      NonConvex);
}

TEST_CASE("containment: closed vs strict") {
  DomainSpec disk = DomainSpec::disk(1.0);
  CHECK(disk.contains({1.0, 0.0}, false));
  CHECK_FALSE(disk.contains({1.0, 0.0}, true));
  CHECK(disk.contains({0.3, -0.4}, true));
  CHECK_FALSE(disk.contains({0.8, 0.7}, false));

  DomainSpec rect = DomainSpec::rectangle(2.0, 1.0);
  CHECK(rect.contains({0.0, 0.0}, false));
  CHECK_FALSE(rect.contains({0.0, 0.0}, true));
  CHECK(rect.contains({1.0, 0.5}, true));
}

TEST_CASE("exact diameters, volumes, inradii") {
  CHECK(diameter(DomainSpec::interval(-0.5, 0.5)) == doctest::Approx(1.0));
  CHECK(diameter(DomainSpec::rectangle(3.0, 4.0)) == doctest::Approx(5.0));
  CHECK(diameter(DomainSpec::disk(1.5)) == doctest::Approx(3.0));
  CHECK(diameter(DomainSpec::ellipse(2.0, 1.0)) == doctest::Approx(4.0));

  CHECK(volume(DomainSpec::interval(0.0, 2.5)) == doctest::Approx(2.5));
  CHECK(volume(DomainSpec::rectangle(2.0, 3.0)) == doctest::Approx(6.0));
  CHECK(volume(DomainSpec::disk(2.0)) == doctest::Approx(4.0 * M_PI));
  // Shoelace on the unit square given as a polygon.
  DomainSpec sq = DomainSpec::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(volume(sq) == doctest::Approx(1.0));
  CHECK(diameter(sq) == doctest::Approx(std::sqrt(2.0)));

  CHECK(inradius(DomainSpec::rectangle(2.0, 1.0)) == doctest::Approx(0.5));
  CHECK(inradius(DomainSpec::disk(0.7)) == doctest::Approx(0.7));
}

TEST_CASE("diameter is invariant under rigid motions of a polygon") {
  std::vector<Vec2> verts = {{0, 0}, {2, 0}, {2.5, 1.0}, {1.0, 2.0}, {-0.5, 1.0}};
  const double d0 = diameter(DomainSpec::polygon(verts));
  const double c = std::cos(0.7), s = std::sin(0.7);
  std::vector<Vec2> moved;
  for (const auto& v : verts)
    moved.emplace_back(c * v.x() - s * v.y() + 3.0, s * v.x() + c * v.y() - 1.0);
  CHECK(diameter(DomainSpec::polygon(moved)) == doctest::Approx(d0));
}

TEST_CASE("interval grid: node count, spacing, stencil") {
  GridDomain g = build_grid(DomainSpec::interval(-0.5, 0.5), 0.125);
  CHECK(g.dim == 1);
  CHECK(g.size() == 7);  // +-k/8 for k = 0..3
  // The two extreme nodes have a boundary neighbor (Dirichlet data); the
  // rest keep a full in-grid stencil.
  int full = 0;
  for (int i = 0; i < g.size(); ++i)
    if (g.fullStencil(i)) ++full;
  CHECK(full == 5);
  std::vector<double> xs;
  for (const auto& p : g.nodes) xs.push_back(p.x());
  std::sort(xs.begin(), xs.end());
  CHECK(xs.front() == doctest::Approx(-0.375));
  CHECK(xs.back() == doctest::Approx(0.375));
}

TEST_CASE("rectangle grid size and neighbor wiring") {
  GridDomain g = build_grid(DomainSpec::rectangle(1.0, 1.0), 0.25);
  CHECK(g.dim == 2);
  CHECK(g.size() == 9);
  int fullHess = 0;
  for (int i = 0; i < g.size(); ++i) {
    CHECK(g.fullStencil(i) == (g.nbr[i][0] >= 0 && g.nbr[i][1] >= 0 &&
                               g.nbr[i][2] >= 0 && g.nbr[i][3] >= 0));
    if (g.fullHessianStencil(i)) ++fullHess;
  }
  CHECK(fullHess == 1);  // only the center keeps all diagonals
  // Neighbor coordinates differ by exactly h along the axis.
  for (int i = 0; i < g.size(); ++i) {
    if (g.nbr[i][1] >= 0) {
      CHECK(g.nodes[g.nbr[i][1]].x() - g.nodes[i].x() == doctest::Approx(0.25));
      CHECK(g.nodes[g.nbr[i][1]].y() == doctest::Approx(g.nodes[i].y()));
    }
  }
}

TEST_CASE("refinement nests the lattice: coarse disk nodes persist at h/2") {
  DomainSpec disk = DomainSpec::disk(1.0);
  GridDomain coarse = build_grid(disk, 1.0 / 8);
  GridDomain fine = build_grid(disk, 1.0 / 16);
  auto fineKeys = node_keys(fine, 1 << 16);
  for (const auto& key : node_keys(coarse, 1 << 16))
    CHECK(fineKeys.count(key) == 1);
  CHECK(fine.size() > coarse.size());
}

TEST_CASE("grid construction failure modes") {
  CHECK_THROWS_AS(build_grid(DomainSpec::interval(0.0, 0.01), 1.0), EmptyInterior);
  CHECK_THROWS_AS(build_grid(DomainSpec::disk(1.0), -0.1), NonConvex);
  CHECK_THROWS_AS(build_cell_grid(DomainSpec::disk(1.0), 0.1), NonConvex);
  CHECK_THROWS_AS(build_cell_grid(DomainSpec::interval(0.0, 1.0), 0.3), NonConvex);
}

TEST_CASE("cell grid covers the domain with half-offset nodes") {
  GridDomain g = build_cell_grid(DomainSpec::interval(-0.5, 0.5), 0.25);
  CHECK(g.cellCentered);
  CHECK(g.size() == 4);
  std::vector<double> xs;
  for (const auto& p : g.nodes) xs.push_back(p.x());
  std::sort(xs.begin(), xs.end());
  CHECK(xs[0] == doctest::Approx(-0.375));
  CHECK(xs[3] == doctest::Approx(0.375));

  GridDomain g2 = build_cell_grid(DomainSpec::rectangle(1.0, 0.5), 0.125);
  CHECK(g2.size() == 32);
}

TEST_CASE("admissible nodes follow the delta-sublevel rule") {
  GridDomain g = build_grid(DomainSpec::interval(-0.5, 0.5), 1.0 / 16);
  Eigen::VectorXd field(g.size());
  for (int i = 0; i < g.size(); ++i) field[i] = std::cos(M_PI * g.nodes[i].x());
  auto all = admissible_nodes(g, field, 1e-6);
  // Everything qualifies except the two boundary-adjacent nodes, whose
  // stencils touch the Dirichlet boundary.
  CHECK(static_cast<int>(all.size()) == g.size() - 2);
  auto some = admissible_nodes(g, field, 0.5);
  CHECK(some.size() < all.size());
  for (int i : some) CHECK(field[i] >= 0.5 * field.maxCoeff());
  CHECK_THROWS_AS(admissible_nodes(g, field, 2.0), NoAdmissibleNodes);
}

TEST_CASE("pair sampling: exhaustive below the cap, seeded subsample above") {
  std::vector<int> nodes(40);
  for (int i = 0; i < 40; ++i) nodes[i] = i;
  auto all = pairs_from_nodes(nodes, 100000, 5);
  CHECK(all.size() == 40u * 39u / 2u);

  auto sampled = pairs_from_nodes(nodes, 100, 5);
  CHECK(sampled.size() == 100u);
  std::set<std::pair<int, int>> uniq(sampled.begin(), sampled.end());
  CHECK(uniq.size() == 100u);  // distinct pairs
  for (const auto& [a, b] : sampled) CHECK(a != b);

  // Determinism in the seed; a different seed gives a different sample.
  CHECK(pairs_from_nodes(nodes, 100, 5) == sampled);
  CHECK(pairs_from_nodes(nodes, 100, 6) != sampled);
}
