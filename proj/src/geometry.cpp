#include "gapcheck/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "gapcheck/error.hpp"

namespace gapcheck {

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

void validate_polygon(std::vector<Vec2>& verts) {
  const std::size_t n = verts.size();
  if (n < 3) throw NonConvex("polygon needs at least 3 vertices");
  double signedArea = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = verts[i];
    const Vec2& q = verts[(i + 1) % n];
    signedArea += p.x() * q.y() - q.x() * p.y();
  }
  if (signedArea < 0.0) std::reverse(verts.begin(), verts.end());
  for (std::size_t i = 0; i < n; ++i) {
    double c = cross(verts[i], verts[(i + 1) % n], verts[(i + 2) % n]);
    if (c <= 0.0) throw NonConvex("vertex list is not strictly convex");
  }
}

}  // namespace

DomainSpec DomainSpec::interval(double a, double b) {
  if (!(b > a)) throw NonConvex("interval endpoints must satisfy a < b");
  DomainSpec s;
  s.kind = DomainKind::Interval;
  s.a = a;
  s.b = b;
  return s;
}

DomainSpec DomainSpec::rectangle(double wx, double wy) {
  if (!(wx > 0.0) || !(wy > 0.0)) throw NonConvex("rectangle sides must be positive");
  DomainSpec s;
  s.kind = DomainKind::Rectangle;
  s.wx = wx;
  s.wy = wy;
  return s;
}

DomainSpec DomainSpec::disk(double r) {
  if (!(r > 0.0)) throw NonConvex("disk radius must be positive");
  DomainSpec s;
  s.kind = DomainKind::Disk;
  s.radius = r;
  return s;
}

DomainSpec DomainSpec::ellipse(double ax, double ay) {
  if (!(ax > 0.0) || !(ay > 0.0)) throw NonConvex("ellipse semi-axes must be positive");
  DomainSpec s;
  s.kind = DomainKind::Ellipse;
  s.ax = ax;
  s.ay = ay;
  return s;
}

DomainSpec DomainSpec::polygon(std::vector<Vec2> verts) {
  validate_polygon(verts);
  DomainSpec s;
  s.kind = DomainKind::Polygon;
  s.vertices = std::move(verts);
  return s;
}

bool DomainSpec::contains(const Vec2& p, bool strict) const {
  const double eps = strict ? 0.0 : 1e-12 * std::max(1.0, diameter(*this));
  switch (kind) {
    case DomainKind::Interval:
      return strict ? (p.x() > a && p.x() < b) : (p.x() >= a - eps && p.x() <= b + eps);
    case DomainKind::Rectangle:
      return strict ? (p.x() > 0 && p.x() < wx && p.y() > 0 && p.y() < wy)
                    : (p.x() >= -eps && p.x() <= wx + eps && p.y() >= -eps &&
                       p.y() <= wy + eps);
    case DomainKind::Disk: {
      double r2 = p.squaredNorm();
      double R2 = radius * radius;
      return strict ? r2 < R2 : r2 <= R2 * (1.0 + 1e-12);
    }
    case DomainKind::Ellipse: {
      double v = (p.x() / ax) * (p.x() / ax) + (p.y() / ay) * (p.y() / ay);
      return strict ? v < 1.0 : v <= 1.0 + 1e-12;
    }
    case DomainKind::Polygon: {
      const std::size_t n = vertices.size();
      for (std::size_t i = 0; i < n; ++i) {
        double c = cross(vertices[i], vertices[(i + 1) % n], p);
        if (strict ? c <= 0.0 : c < -eps) return false;
      }
      return true;
    }
  }
  return false;
}

std::string DomainSpec::name() const {
  switch (kind) {
    case DomainKind::Interval: return "interval";
    case DomainKind::Rectangle: return "rectangle";
    case DomainKind::Disk: return "disk";
    case DomainKind::Ellipse: return "ellipse";
    case DomainKind::Polygon: return "convex-polygon";
  }
  return "?";
}

double diameter(const DomainSpec& spec) {
  switch (spec.kind) {
    case DomainKind::Interval: return spec.b - spec.a;
    case DomainKind::Rectangle: return std::hypot(spec.wx, spec.wy);
    case DomainKind::Disk: return 2.0 * spec.radius;
    case DomainKind::Ellipse: return 2.0 * std::max(spec.ax, spec.ay);
    case DomainKind::Polygon: {
      double best = 0.0;
      for (std::size_t i = 0; i < spec.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < spec.vertices.size(); ++j)
          best = std::max(best, (spec.vertices[i] - spec.vertices[j]).norm());
      return best;
    }
  }
  return 0.0;
}

double inradius(const DomainSpec& spec) {
  switch (spec.kind) {
    case DomainKind::Interval: return 0.5 * (spec.b - spec.a);
    case DomainKind::Rectangle: return 0.5 * std::min(spec.wx, spec.wy);
    case DomainKind::Disk: return spec.radius;
    case DomainKind::Ellipse: return std::min(spec.ax, spec.ay);
    case DomainKind::Polygon: {
      // Distance from the centroid to the edges; a lower bound on the
      // true inradius, which is all the h-validation needs.
      Vec2 c = Vec2::Zero();
      for (const auto& v : spec.vertices) c += v;
      c /= static_cast<double>(spec.vertices.size());
      double best = std::numeric_limits<double>::max();
      const std::size_t n = spec.vertices.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = spec.vertices[i];
        const Vec2& q = spec.vertices[(i + 1) % n];
        Vec2 e = q - p;
        double d = std::abs(e.x() * (c.y() - p.y()) - e.y() * (c.x() - p.x())) / e.norm();
        best = std::min(best, d);
      }
      return best;
    }
  }
  return 0.0;
}

double volume(const DomainSpec& spec) {
  switch (spec.kind) {
    case DomainKind::Interval: return spec.b - spec.a;
    case DomainKind::Rectangle: return spec.wx * spec.wy;
    case DomainKind::Disk: return M_PI * spec.radius * spec.radius;
    case DomainKind::Ellipse: return M_PI * spec.ax * spec.ay;
    case DomainKind::Polygon: {
      double s = 0.0;
      const std::size_t n = spec.vertices.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = spec.vertices[i];
        const Vec2& q = spec.vertices[(i + 1) % n];
        s += p.x() * q.y() - q.x() * p.y();
      }
      return 0.5 * std::abs(s);
    }
  }
  return 0.0;
}

bool GridDomain::fullStencil(int i) const {
  const auto& nb = nbr[i];
  if (dim == 1) return nb[0] >= 0 && nb[1] >= 0;
  return nb[0] >= 0 && nb[1] >= 0 && nb[2] >= 0 && nb[3] >= 0;
}

bool GridDomain::fullHessianStencil(int i) const {
  if (!fullStencil(i)) return false;
  if (dim == 1) return true;
  const auto& dg = diag[i];
  return dg[0] >= 0 && dg[1] >= 0 && dg[2] >= 0 && dg[3] >= 0;
}

namespace {

std::int64_t key_of(std::int64_t ix, std::int64_t iy) {
  return ((ix + (1 << 20)) << 32) | ((iy + (1 << 20)) & 0xffffffff);
}

GridDomain build_lattice(const DomainSpec& spec, double h, bool cellCentered) {
  if (!(h > 0.0)) throw NonConvex("grid spacing must be positive");
  if (h >= inradius(spec))
    throw EmptyInterior("grid spacing must be smaller than the inradius");
  const int dim = spec.dimension();
  const double off = cellCentered ? 0.5 : 0.0;

  GridDomain grid;
  grid.spec = spec;
  grid.h = h;
  grid.dim = dim;
  grid.cellCentered = cellCentered;
  grid.D = diameter(spec);

  // Lattice is anchored at the origin (node-centered) so refinement h -> h/2
  // keeps node sets nested.
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  switch (spec.kind) {
    case DomainKind::Interval: x0 = spec.a; x1 = spec.b; break;
    case DomainKind::Rectangle: x1 = spec.wx; y1 = spec.wy; break;
    case DomainKind::Disk: x0 = -spec.radius; x1 = spec.radius; y0 = x0; y1 = x1; break;
    case DomainKind::Ellipse: x0 = -spec.ax; x1 = spec.ax; y0 = -spec.ay; y1 = spec.ay; break;
    case DomainKind::Polygon:
      x0 = y0 = std::numeric_limits<double>::max();
      x1 = y1 = std::numeric_limits<double>::lowest();
      for (const auto& v : spec.vertices) {
        x0 = std::min(x0, v.x()); x1 = std::max(x1, v.x());
        y0 = std::min(y0, v.y()); y1 = std::max(y1, v.y());
      }
      break;
  }

  auto accept = [&](const Vec2& p) {
    if (!spec.contains(p, true)) return false;
    // Full stencil stays in the closed domain (cell-centered grids use
    // mirror ghosts instead, so only the node itself must be inside).
    if (cellCentered) return true;
    const Vec2 dx(h, 0.0), dy(0.0, h);
    if (!spec.contains(p + dx, false) || !spec.contains(p - dx, false)) return false;
    if (dim == 2 &&
        (!spec.contains(p + dy, false) || !spec.contains(p - dy, false)))
      return false;
    return true;
  };

  std::unordered_map<std::int64_t, int> index;
  std::vector<std::pair<std::int64_t, std::int64_t>> latt;
  const auto ilo = static_cast<std::int64_t>(std::floor(x0 / h)) - 2;
  const auto ihi = static_cast<std::int64_t>(std::ceil(x1 / h)) + 2;
  const auto jlo = dim == 2 ? static_cast<std::int64_t>(std::floor(y0 / h)) - 2 : 0;
  const auto jhi = dim == 2 ? static_cast<std::int64_t>(std::ceil(y1 / h)) + 2 : 0;
  for (std::int64_t j = jlo; j <= jhi; ++j) {
    for (std::int64_t i = ilo; i <= ihi; ++i) {
      Vec2 p((i + off) * h, dim == 2 ? (j + off) * h : 0.0);
      if (!accept(p)) continue;
      index[key_of(i, j)] = grid.size();
      grid.nodes.push_back(p);
      latt.emplace_back(i, j);
    }
  }
  if (grid.nodes.empty()) throw EmptyInterior("no lattice node qualifies");

  auto at = [&](std::int64_t i, std::int64_t j) {
    auto it = index.find(key_of(i, j));
    return it == index.end() ? -1 : it->second;
  };
  grid.nbr.resize(grid.nodes.size());
  grid.diag.resize(grid.nodes.size());
  for (std::size_t k = 0; k < grid.nodes.size(); ++k) {
    auto [i, j] = latt[k];
    grid.nbr[k] = {at(i - 1, j), at(i + 1, j),
                   dim == 2 ? at(i, j - 1) : -1, dim == 2 ? at(i, j + 1) : -1};
    grid.diag[k] = {dim == 2 ? at(i - 1, j - 1) : -1, dim == 2 ? at(i + 1, j - 1) : -1,
                    dim == 2 ? at(i - 1, j + 1) : -1, dim == 2 ? at(i + 1, j + 1) : -1};
  }
  return grid;
}

}  // namespace

GridDomain build_grid(const DomainSpec& spec, double h) {
  GridDomain g = build_lattice(spec, h, false);
  int perDim = g.dim == 1 ? g.size() : static_cast<int>(std::sqrt(double(g.size())));
  if (perDim < 3) throw EmptyInterior("fewer than 3 interior nodes per dimension");
  return g;
}

GridDomain build_cell_grid(const DomainSpec& spec, double h) {
  if (spec.kind != DomainKind::Interval && spec.kind != DomainKind::Rectangle)
    throw NonConvex("cell-centered grids are supported on intervals and rectangles");
  auto fits = [&](double len) {
    double m = len / h;
    return std::abs(m - std::round(m)) < 1e-9;
  };
  if (spec.kind == DomainKind::Interval) {
    if (!fits(spec.b - spec.a)) throw NonConvex("interval length must be a multiple of h");
  } else if (!fits(spec.wx) || !fits(spec.wy)) {
    throw NonConvex("rectangle sides must be multiples of h");
  }
  return build_lattice(spec, h, true);
}

std::vector<int> admissible_nodes(const GridDomain& grid,
                                  const Eigen::VectorXd& field, double delta) {
  if (field.size() != grid.size())
    throw StencilEscape("field size does not match grid");
  if (!(delta > 0.0 && delta < 1.0)) throw NoAdmissibleNodes("delta outside (0,1)");
  const double cutoff = delta * field.maxCoeff();
  std::vector<int> out;
  for (int i = 0; i < grid.size(); ++i)
    if (field[i] >= cutoff && grid.fullStencil(i)) out.push_back(i);
  if (out.empty()) throw NoAdmissibleNodes("delta-sublevel set is empty");
  return out;
}

std::vector<std::pair<int, int>> pairs_from_nodes(const std::vector<int>& nodes,
                                                  std::size_t maxPairs,
                                                  std::uint64_t seed) {
  const std::size_t n = nodes.size();
  const std::uint64_t total = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::vector<std::pair<int, int>> pairs;
  if (total <= maxPairs) {
    pairs.reserve(total);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        pairs.emplace_back(nodes[i], nodes[j]);
    return pairs;
  }
  // Seeded sampling of distinct linear pair indices; decode (i,j) from the
  // triangular index so the result is independent of iteration order.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, total - 1);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(maxPairs * 2);
  std::vector<std::uint64_t> order;
  order.reserve(maxPairs);
  while (order.size() < maxPairs) {
    std::uint64_t t = dist(rng);
    if (chosen.insert(t).second) order.push_back(t);
  }
  std::sort(order.begin(), order.end());
  pairs.reserve(maxPairs);
  for (std::uint64_t t : order) {
    // Row i is the largest with i*n - i*(i+1)/2 <= t.
    std::size_t i = static_cast<std::size_t>(
        n - 2 - std::floor(std::sqrt(-8.0 * double(t) + 4.0 * double(n) * (double(n) - 1) - 7.0) / 2.0 - 0.5));
    while (i + 1 < n && (i + 1) * n - (i + 1) * (i + 2) / 2 <= t) ++i;
    while (i > 0 && i * n - i * (i + 1) / 2 > t) --i;
    std::uint64_t base = static_cast<std::uint64_t>(i) * n - static_cast<std::uint64_t>(i) * (i + 1) / 2;
    std::size_t j = i + 1 + static_cast<std::size_t>(t - base);
    pairs.emplace_back(nodes[i], nodes[j]);
  }
  return pairs;
}

std::vector<std::pair<int, int>> admissible_pairs(const GridDomain& grid,
                                                  const Eigen::VectorXd& field,
                                                  double delta,
                                                  std::size_t maxPairs,
                                                  std::uint64_t seed) {
  return pairs_from_nodes(admissible_nodes(grid, field, delta), maxPairs, seed);
}

}  // namespace gapcheck
