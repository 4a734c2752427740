#include "gapcheck/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

#include "gapcheck/error.hpp"

namespace gapcheck {

namespace {

// Shortest round-trip decimal for CSV cells.
std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

json domain_echo(const DomainSpec& d) {
  json j;
  j["kind"] = d.name();
  switch (d.kind) {
    case DomainKind::Interval: j["a"] = d.a; j["b"] = d.b; break;
    case DomainKind::Rectangle: j["wx"] = d.wx; j["wy"] = d.wy; break;
    case DomainKind::Disk: j["radius"] = d.radius; break;
    case DomainKind::Ellipse: j["ax"] = d.ax; j["ay"] = d.ay; break;
    case DomainKind::Polygon: {
      json verts = json::array();
      for (const auto& v : d.vertices) verts.push_back({v.x(), v.y()});
      j["vertices"] = verts;
      break;
    }
  }
  return j;
}

}  // namespace

json config_echo(const RunConfig& cfg) {
  json j;
  j["domain"] = domain_echo(cfg.domain);
  j["grid"] = {{"h", cfg.h}, {"levels", cfg.levels}};
  j["potential"] = {
      {"a", {cfg.potential.A(0, 0), cfg.potential.A(0, 1), cfg.potential.A(1, 0),
             cfg.potential.A(1, 1)}},
      {"b", {cfg.potential.b(0), cfg.potential.b(1)}},
      {"c", cfg.potential.c}};
  j["checks"] = cfg.checks;
  json p;
  p["delta"] = cfg.delta;
  p["max_pairs"] = cfg.maxPairs;
  p["seed"] = cfg.seed;
  p["t_list"] = cfg.tList;
  p["source"] = cfg.sourceIsCenter
                    ? json("center")
                    : json({cfg.sourceOffset.x(), cfg.sourceOffset.y()});
  p["eps_prime"] = cfg.epsPrime;
  // threads is deliberately not echoed: reports are byte-identical across
  // worker counts.
  p["neumann_drift"] = cfg.neumannDrift;
  j["params"] = p;
  if (!cfg.tolOverrides.empty()) j["tolerances"] = cfg.tolOverrides;
  return j;
}

json to_json(const SlackReport& rep) {
  json j;
  j["inequality"] = rep.inequality;
  j["pair_count"] = rep.pairCount;
  j["excluded_pole_pairs"] = rep.excludedPoleCount;
  j["min_slack"] = rep.minSlack;
  j["argmin"] = {{"x", {rep.argminX.x(), rep.argminX.y()}},
                 {"y", {rep.argminY.x(), rep.argminY.y()}},
                 {"separation", rep.argminSeparation}};
  j["quantiles"] = {{"q0", rep.q0}, {"q1", rep.q1}, {"q50", rep.q50}};
  j["tolerance"] = rep.tolerance;
  j["verdict"] = to_string(rep.verdict);
  return j;
}

json to_json(const BoundVerdict& v) {
  json j;
  j["id"] = v.id;
  j["computed"] = v.computed;
  j["corrected_computed"] = v.correctedComputed;
  j["bound"] = v.bound;
  j["slack"] = v.slack;
  j["corrected_slack"] = v.correctedSlack;
  j["verdict"] = to_string(v.verdict);
  return j;
}

std::string report_json(const RunReport& rep) { return rep.doc.dump(2) + "\n"; }

std::string table_csv(const RunReport& rep) {
  std::string out = "check,computed,bound,slack,verdict\n";
  if (!rep.doc.contains("checks")) return out;
  for (const auto& [id, body] : rep.doc.at("checks").items()) {
    auto row = [&](const json& e, const std::string& label) {
      double computed = e.value("corrected_computed", e.value("computed", 0.0));
      double bound = e.value("bound", 0.0);
      double slack = e.value("corrected_slack",
                             e.value("min_slack", computed - bound));
      out += label + "," + fmt(computed) + "," + fmt(bound) + "," + fmt(slack) +
             "," + e.value("verdict", std::string("n/a")) + "\n";
    };
    if (body.is_array()) {
      for (const auto& e : body) row(e, id + ":" + e.value("id", std::string("")));
    } else if (body.contains("verdict") || body.contains("min_slack")) {
      row(body, id);
    }
  }
  return out;
}

std::string field_csv(const RunReport& rep) {
  std::string out = "x,y";
  for (const auto& [name, col] : rep.fields) out += "," + name;
  out += "\n";
  for (std::size_t i = 0; i < rep.fieldCoords.size(); ++i) {
    out += fmt(rep.fieldCoords[i].x()) + "," + fmt(rep.fieldCoords[i].y());
    for (const auto& [name, col] : rep.fields) out += "," + fmt(col[i]);
    out += "\n";
  }
  return out;
}

void emit(const RunReport& rep, const std::vector<std::string>& formats,
          const std::string& outDir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(outDir, ec);
  auto write = [&](const std::string& name, const std::string& payload) {
    std::ofstream f(fs::path(outDir) / name, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file: " + name);
    f << payload;
  };
  for (const auto& f : formats) {
    if (f == "report-json") write("report.json", report_json(rep));
    else if (f == "table-csv") write("table.csv", table_csv(rep));
    else if (f == "field-csv") write("fields.csv", field_csv(rep));
    else throw ConfigError("unknown output format: " + f);
  }
}

}  // namespace gapcheck
