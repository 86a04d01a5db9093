// Batch experiment runner.
//
//   subdiff --config exp.cfg [--seed U64] [--workers N] [--out DIR]
//
// Exit status: 0 when every configured band passes, 1 when one fails,
// 2 on configuration or runtime errors.

#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "subdiff/errors.hpp"
#include "subdiff/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Subordinate killed diffusion experiments"};
  std::string config;
  std::uint64_t seed = 0;
  subdiff::RunOptions opt;
  std::string out = "out";
  app.add_option("--config", config, "experiment configuration file")->required()->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "master seed (overrides the configuration)");
  auto* workers_opt = app.add_option("--workers", opt.workers, "worker threads (0 = all)")->check(CLI::NonNegativeNumber);
  auto* out_opt = app.add_option("--out", out, "output directory (default: the config 'out' key, else ./out)");
  app.set_version_flag("--version", subdiff::artifact_version());
  CLI11_PARSE(app, argc, argv);

  if (seed_opt->count()) opt.seed = seed;
  try {
    const auto cfg = subdiff::Config::load(config);
    opt.out = out_opt->count() ? out : cfg.str("out", out);
    if (!workers_opt->count()) opt.workers = cfg.integer("workers", 0);
    const auto result = subdiff::run_experiment(cfg, opt);
    for (const auto& item : result.items)
      std::printf("%s %s: %s\n", item.pass ? "PASS" : "FAIL", item.name.c_str(), item.detail.c_str());
    std::printf("wrote %zu files to %s\n", result.files.size(), opt.out.string().c_str());
    return result.ok() ? 0 : 1;
  } catch (const subdiff::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  }
  return 2;
}
