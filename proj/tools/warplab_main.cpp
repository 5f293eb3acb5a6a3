#include "warplab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

std::ofstream open_or_die(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  return out;
}

std::string output_path(const warplab::Config& cfg, const std::string& override_path) {
  if (!override_path.empty()) return override_path;
  return cfg.get("output", "path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warplab: radial Schrodinger laboratory on rotationally symmetric manifolds"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "experiment config file")->required();
    cmd->add_option("-o,--output", out_override, "override the [output] path");
  };

  CLI::App* describe = app.add_subcommand("describe", "curvature/potential tables and regime guess");
  CLI::App* check = app.add_subcommand("check", "hypothesis certification, JSON report");
  CLI::App* solve = app.add_subcommand("solve", "linear evolution, CSV snapshots + diagnostics");
  CLI::App* norms = app.add_subcommand("norms", "space-time norms of a linear run, CSV");
  CLI::App* resolvent = app.add_subcommand("resolvent", "weighted resolvent sweep, CSV");
  CLI::App* scatter = app.add_subcommand("scatter", "NLS run and scattering residual, CSV");
  for (CLI::App* cmd : {describe, check, solve, norms, resolvent, scatter}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    const warplab::Config cfg = warplab::load_config(config_path);
    if (describe->parsed()) return warplab::run_describe(cfg, std::cout, std::cerr);
    if (check->parsed()) return warplab::run_check(cfg, std::cout, std::cerr);
    if (solve->parsed()) {
      const std::string path = output_path(cfg, out_override);
      std::ofstream csv = open_or_die(path);
      std::ofstream diag = open_or_die(path + ".diag.csv");
      return warplab::run_solve(cfg, csv, diag, std::cerr);
    }
    if (norms->parsed()) {
      std::ofstream csv = open_or_die(output_path(cfg, out_override));
      return warplab::run_norms(cfg, csv, std::cerr);
    }
    if (resolvent->parsed()) {
      std::ofstream csv = open_or_die(output_path(cfg, out_override));
      return warplab::run_resolvent(cfg, csv, std::cerr);
    }
    if (scatter->parsed()) {
      std::ofstream csv = open_or_die(output_path(cfg, out_override));
      return warplab::run_scatter(cfg, csv, std::cerr);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return warplab::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return warplab::kExitNonConvergence;
  }
  return warplab::kExitInputError;
}
