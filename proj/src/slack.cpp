#include "gapcheck/slack.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "gapcheck/error.hpp"

namespace gapcheck {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Marginal: return "marginal";
    case Verdict::Fail: return "fail";
  }
  return "?";
}

double default_slack_tol(double h, double D) {
  return 10.0 * h * (M_PI / D) * (M_PI / D);
}

SlackReport reduce_slack(const std::string& inequality,
                         const std::vector<std::pair<int, int>>& pairs,
                         const GridDomain& grid, double tolerance, int threads,
                         const std::function<double(int, int)>& slack,
                         const std::function<bool(int, int)>& exclude) {
  const std::size_t n = pairs.size();
  std::vector<double> values(n, std::numeric_limits<double>::quiet_NaN());

  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t p = lo; p < hi; ++p) {
      const auto [i, j] = pairs[p];
      if (exclude && exclude(i, j)) continue;
      values[p] = slack(i, j);
    }
  };
  const int nt = std::max(1, threads);
  if (nt == 1 || n < 1024) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      std::size_t lo = std::min(n, t * chunk), hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  SlackReport rep;
  rep.inequality = inequality;
  rep.tolerance = tolerance;
  std::vector<double> kept;
  kept.reserve(n);
  std::size_t argmin = 0;
  double best = std::numeric_limits<double>::max();
  for (std::size_t p = 0; p < n; ++p) {
    if (std::isnan(values[p])) {
      ++rep.excludedPoleCount;
      continue;
    }
    kept.push_back(values[p]);
    if (values[p] < best) {
      best = values[p];
      argmin = p;
    }
  }
  if (kept.empty()) throw NoAdmissibleNodes("no pair survived exclusion");
  rep.pairCount = kept.size();
  rep.minSlack = best;
  rep.argminX = grid.nodes[pairs[argmin].first];
  rep.argminY = grid.nodes[pairs[argmin].second];
  rep.argminSeparation = (rep.argminY - rep.argminX).norm();

  std::sort(kept.begin(), kept.end());
  auto quant = [&](double q) {
    std::size_t idx = static_cast<std::size_t>(q * double(kept.size() - 1));
    return kept[idx];
  };
  rep.q0 = quant(0.0);
  rep.q1 = quant(0.01);
  rep.q50 = quant(0.5);

  if (rep.minSlack < -tolerance) rep.verdict = Verdict::Fail;
  else if (std::abs(rep.minSlack) <= tolerance) rep.verdict = Verdict::Marginal;
  else rep.verdict = Verdict::Pass;
  return rep;
}

}  // namespace gapcheck
