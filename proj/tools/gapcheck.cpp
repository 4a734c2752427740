#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gapcheck/acceptance.hpp"
#include "gapcheck/checks.hpp"
#include "gapcheck/error.hpp"
#include "gapcheck/report.hpp"

namespace {

int cmd_run(const std::string& configPath, const std::string& outDir,
            std::vector<std::string> formats, int threads, long long seed) {
  gapcheck::RunConfig cfg = gapcheck::load_config(configPath);
  if (threads > 0) cfg.threads = threads;
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  if (formats.empty()) formats = {"report-json"};

  gapcheck::RunReport rep = gapcheck::run(cfg);
  gapcheck::emit(rep, formats, outDir);

  const auto& doc = rep.doc;
  std::printf("overall: %s\n",
              doc.value("overall", std::string("unknown")).c_str());
  if (doc.contains("errors")) {
    for (const auto& e : doc.at("errors")) {
      std::fprintf(stderr, "error in %s: %s\n",
                   e.value("check", std::string("?")).c_str(),
                   e.value("what", std::string("")).c_str());
    }
  }
  return rep.exitCode;
}

int cmd_verify_all(int threads) {
  auto results = gapcheck::run_acceptance(threads > 0 ? threads : 1);
  bool allPass = true;
  for (const auto& r : results) {
    std::printf("[%s] criterion %2d: %s -- %s\n", r.pass ? "PASS" : "FAIL",
                r.id, r.title.c_str(), r.detail.c_str());
    allPass = allPass && r.pass;
  }
  std::printf("%zu/%zu criteria passed\n",
              static_cast<std::size_t>(
                  std::count_if(results.begin(), results.end(),
                                [](const auto& r) { return r.pass; })),
              results.size());
  return allPass ? 0 : 1;
}

int cmd_list_checks() {
  for (const auto& id : gapcheck::known_checks()) std::printf("%s\n", id.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gapcheck: spectral-gap and heat-kernel inequality checker"};
  app.require_subcommand(1);

  std::string configPath;
  std::string outDir = "out";
  std::vector<std::string> formats;
  int threads = 0;
  long long seed = -1;

  CLI::App* runCmd = app.add_subcommand("run", "run the checks of a scenario config");
  runCmd->add_option("config_file", configPath, "scenario config file");
  runCmd->add_option("--config", configPath, "scenario config file");
  runCmd->add_option("--out", outDir, "output directory (default: out)");
  runCmd
      ->add_option("--formats", formats,
                   "output formats: report-json, table-csv, field-csv")
      ->delimiter(',');
  runCmd->add_option("--threads", threads, "worker threads for pairwise scans");
  runCmd->add_option("--seed", seed, "override the pair-sampling seed");

  CLI::App* verifyCmd =
      app.add_subcommand("verify-all", "run the full acceptance battery");
  verifyCmd->add_option("--threads", threads, "worker threads for pairwise scans");

  app.add_subcommand("list-checks", "list known check identifiers");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand("run")) {
      if (configPath.empty())
        throw gapcheck::ConfigError("run needs a config file (positional or --config)");
      return cmd_run(configPath, outDir, formats, threads, seed);
    }
    if (app.got_subcommand("verify-all")) return cmd_verify_all(threads);
    return cmd_list_checks();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const gapcheck::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", e.code().c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
