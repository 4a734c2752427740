#include "gapcheck/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gapcheck/error.hpp"

namespace gapcheck {

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> ids = {
      "eigen",          "gap",          "modulus",       "logconcavity",
      "heat-slack",     "decay",        "neumann",       "dirichlet-bounds",
      "isodiametric",   "model-residuals", "ratio-diagnostic"};
  return ids;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& v) {
  std::string t = v;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream ss(t);
  std::vector<std::string> out;
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("not a number for key '" + key + "': " + s);
  }
}

using KeyMap = std::map<std::string, std::string>;

}  // namespace

RunConfig parse_config(const std::string& text) {
  std::map<std::string, KeyMap> sections;
  std::string current = "";
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header: " + line);
      current = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value: " + line);
    sections[current][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto get = [&](const std::string& sec, const std::string& key,
                 const std::string& fallback) {
    auto s = sections.find(sec);
    if (s == sections.end()) return fallback;
    auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
  };
  auto require = [&](const std::string& sec, const std::string& key) {
    std::string v = get(sec, key, "");
    if (v.empty()) throw ConfigError("missing required key [" + sec + "] " + key);
    return v;
  };

  RunConfig cfg;

  const std::string kind = require("domain", "kind");
  if (kind == "interval") {
    cfg.domain = DomainSpec::interval(to_double(require("domain", "a"), "a"),
                                      to_double(require("domain", "b"), "b"));
  } else if (kind == "rectangle") {
    cfg.domain = DomainSpec::rectangle(to_double(require("domain", "wx"), "wx"),
                                       to_double(require("domain", "wy"), "wy"));
  } else if (kind == "disk") {
    cfg.domain = DomainSpec::disk(to_double(require("domain", "radius"), "radius"));
  } else if (kind == "ellipse") {
    cfg.domain = DomainSpec::ellipse(to_double(require("domain", "ax"), "ax"),
                                     to_double(require("domain", "ay"), "ay"));
  } else if (kind == "convex-polygon") {
    auto vs = tokens(require("domain", "vertices"));
    if (vs.size() < 6 || vs.size() % 2 != 0)
      throw ConfigError("polygon vertices need an even coordinate count >= 6");
    std::vector<Vec2> verts;
    for (std::size_t i = 0; i < vs.size(); i += 2)
      verts.emplace_back(to_double(vs[i], "vertices"), to_double(vs[i + 1], "vertices"));
    cfg.domain = DomainSpec::polygon(std::move(verts));
  } else {
    throw ConfigError("unknown domain kind: " + kind);
  }

  cfg.h = to_double(require("grid", "h"), "h");
  cfg.levels = static_cast<int>(to_double(get("grid", "levels", "2"), "levels"));
  if (cfg.h <= 0.0 || cfg.levels < 1 || cfg.levels > 4)
    throw ConfigError("grid h must be positive and levels in [1,4]");

  auto av = tokens(get("potential", "a", "0"));
  if (av.size() == 1) {
    cfg.potential.A.setZero();
    cfg.potential.A(0, 0) = to_double(av[0], "a");
  } else if (av.size() == 4) {
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        cfg.potential.A(r, c) = to_double(av[2 * r + c], "a");
  } else {
    throw ConfigError("potential a must have 1 or 4 entries");
  }
  auto bv = tokens(get("potential", "b", "0 0"));
  if (bv.size() == 1) {
    cfg.potential.b = Vec2(to_double(bv[0], "b"), 0.0);
  } else if (bv.size() == 2) {
    cfg.potential.b = Vec2(to_double(bv[0], "b"), to_double(bv[1], "b"));
  } else {
    throw ConfigError("potential b must have 1 or 2 entries");
  }
  cfg.potential.c = to_double(get("potential", "c", "0"), "c");

  cfg.checks = tokens(require("checks", "run"));
  const auto& known = known_checks();
  for (const auto& id : cfg.checks)
    if (std::find(known.begin(), known.end(), id) == known.end())
      throw ConfigError("unknown check id: " + id);

  cfg.delta = to_double(get("params", "delta", "0.01"), "delta");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("delta must be in (0,1)");
  cfg.maxPairs = static_cast<std::size_t>(to_double(get("params", "max_pairs", "200000"), "max_pairs"));
  cfg.seed = static_cast<std::uint64_t>(to_double(get("params", "seed", "0"), "seed"));
  for (const auto& t : tokens(get("params", "t_list", "")))
    cfg.tList.push_back(to_double(t, "t_list"));
  const std::string src = get("params", "source", "center");
  if (src == "center") {
    cfg.sourceIsCenter = true;
  } else {
    auto sv = tokens(src);
    if (sv.size() != 2) throw ConfigError("source must be 'center' or two coordinates");
    cfg.sourceIsCenter = false;
    cfg.sourceOffset = Vec2(to_double(sv[0], "source"), to_double(sv[1], "source"));
  }
  cfg.epsPrime = to_double(get("params", "eps_prime", "0"), "eps_prime");
  cfg.neumannDrift = get("params", "neumann_drift", "none");
  if (cfg.neumannDrift != "none" && cfg.neumannDrift != "model-tan")
    throw ConfigError("neumann_drift must be 'none' or 'model-tan'");
  cfg.threads = static_cast<int>(to_double(get("params", "threads", "1"), "threads"));

  if (sections.count("tolerances")) {
    for (const auto& [key, val] : sections.at("tolerances")) {
      double tv = to_double(val, key);
      if (!(tv > 0.0)) throw ConfigError("tolerance override must be positive: " + key);
      cfg.tolOverrides[key] = tv;
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace gapcheck
