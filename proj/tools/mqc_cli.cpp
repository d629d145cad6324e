// command-line experiment runner: sweep / pulses / check

#include "mqc/runner.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace {

int write_file(const fs::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    fmt::print(stderr, "error: cannot write '{}'\n", path.string());
    return 3;
  }
  f << body;
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnus-expansion leakage-correction experiment runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  int threads = 1;
  double tol = -1.0;
  double at = std::nan("");

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "config file path");
    if (needs_config) opt->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads");
    sub->add_option("--tol", tol, "override integration tolerance");
  };

  auto* sweep = app.add_subcommand("sweep", "run the configured parameter sweep");
  add_common(sweep, true);
  auto* pulses = app.add_subcommand("pulses", "emit pulse traces at one parameter point");
  add_common(pulses, true);
  pulses->add_option("--at", at, "sweep-parameter value (defaults to config pulse_points)");
  auto* check = app.add_subcommand("check", "run the determinism / round-trip suite");
  add_common(check, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1; // usage error
  }

  if (check->parsed()) return mqc::run_check(threads);

  mqc::RunConfig cfg;
  try {
    cfg = mqc::parse_config_file(config_path);
    if (tol > 0) cfg.tol = tol;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
  } catch (const std::exception& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return 2;
  }

  try {
    if (sweep->parsed()) {
      auto records = mqc::run_sweep(cfg, threads);
      const auto csv_path = fs::path(out_dir) / fmt::format("sweep_{}.csv", to_string(cfg.model));
      if (int rc = write_file(csv_path, mqc::sweep_csv(cfg, records))) return rc;
      for (double point : cfg.pulse_points)
        for (auto s : cfg.strategies) {
          const auto p = fs::path(out_dir) /
                         fmt::format("pulses_{}_{}_{:g}.csv", to_string(cfg.model), to_string(s), point);
          if (int rc = write_file(p, mqc::pulses_csv(cfg, s, point))) return rc;
        }
      size_t failed = 0;
      for (const auto& r : records)
        if (!r.ok) {
          fmt::print(stderr, "point {:g} failed: {}\n", r.param, r.error);
          ++failed;
        }
      if (failed == records.size()) return 3;
      if (failed > 0) return 1;
      return 0;
    }
    // pulses
    std::vector<double> points = cfg.pulse_points;
    if (!std::isnan(at)) points = {at};
    if (points.empty()) {
      fmt::print(stderr, "config error: no pulse points (use --at or pulse_points)\n");
      return 2;
    }
    size_t failed = 0, total = 0;
    for (double point : points)
      for (auto s : cfg.strategies) {
        ++total;
        const auto p = fs::path(out_dir) /
                       fmt::format("pulses_{}_{}_{:g}.csv", to_string(cfg.model), to_string(s), point);
        try {
          if (int rc = write_file(p, mqc::pulses_csv(cfg, s, point))) return rc;
        } catch (const std::exception& e) {
          fmt::print(stderr, "point {:g} ({}) failed: {}\n", point, to_string(s), e.what());
          ++failed;
        }
      }
    if (failed == total) return 3;
    if (failed > 0) return 1;
    return 0;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 3;
  }
}
