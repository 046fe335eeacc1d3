#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qubogs/config.hpp"
#include "qubogs/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNotConverged = 2;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> backend;
};

qubogs::ExperimentConfig load_with_overrides(const std::string& path, const Overrides& ov) {
  qubogs::ExperimentConfig cfg = qubogs::load_config(path);
  if (ov.seed) {
    cfg.solver.sampler.seed = *ov.seed;
    cfg.sweep.seeds = {*ov.seed};
  }
  if (ov.backend) {
    try {
      cfg.solver.backend = qubogs::parse_backend(*ov.backend);
    } catch (const std::invalid_argument& e) {
      throw qubogs::ConfigError(std::string("--backend: ") + e.what());
    }
    cfg.sweep.backends = {cfg.solver.backend};
  }
  cfg.validate();
  return cfg;
}

std::filesystem::path output_dir(const qubogs::ExperimentConfig& cfg, const Overrides& ov) {
  if (ov.out_dir) return *ov.out_dir;
  if (!cfg.output.dir.empty()) return cfg.output.dir;
  if (const char* env = std::getenv("QUBOGS_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "out";
}

void add_overrides(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--seed", ov.seed, "Master seed (overrides solver.seed and sweep.seeds)");
  cmd->add_option("--out-dir", ov.out_dir, "Output directory (default: output.dir, $QUBOGS_OUT_DIR, ./out)");
  cmd->add_option("--backend", ov.backend, "exact, exhaustive or sa (overrides solver.backend and sweep.backends)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block Gauss-Seidel heat-plate solver with QUBO block solves"};
  app.require_subcommand(1);

  Overrides ov;
  std::string config_path;

  auto* solve = app.add_subcommand("solve", "Run one solve and write trace.csv, field.csv, summary.txt");
  solve->add_option("config", config_path, "INI config file")->required();
  add_overrides(solve, ov);

  auto* sweep = app.add_subcommand("sweep", "Run the parameter sweep and write sweep.csv plus per-run traces");
  sweep->add_option("config", config_path, "INI config file")->required();
  add_overrides(sweep, ov);

  std::string field_csv;
  std::string pgm_path;
  auto* render = app.add_subcommand("render", "Render field.csv to a PGM image and print an ASCII preview");
  render->add_option("field", field_csv, "Field CSV")->required();
  render->add_option("output", pgm_path, "Output .pgm")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*solve) {
      const auto cfg = load_with_overrides(config_path, ov);
      const auto dir = output_dir(cfg, ov);
      const auto summary = qubogs::run_solve(cfg, dir);
      std::cout << "iterations: " << summary.iterations << "\nconverged: " << (summary.converged ? "yes" : "no")
                << "\nfinal residual: " << qubogs::format_number(summary.final_residual);
      if (summary.final_error) std::cout << "\nfinal relative error: " << qubogs::format_number(*summary.final_error);
      std::cout << "\ncondition number: " << qubogs::format_number(summary.kappa) << "\noutput: " << dir.string()
                << '\n';
      return summary.converged ? kExitOk : kExitNotConverged;
    }
    if (*sweep) {
      const auto cfg = load_with_overrides(config_path, ov);
      const auto dir = output_dir(cfg, ov);
      const auto summary = qubogs::run_sweep(cfg, dir);
      std::cout << "combinations: " << summary.combinations << "\nconverged: " << summary.converged
                << "\nfailed: " << summary.failures << "\noutput: " << dir.string() << '\n';
      return summary.failures == 0 ? kExitOk : kExitNotConverged;
    }
    if (*render) {
      std::ifstream in(field_csv);
      if (!in) {
        std::cerr << "error: cannot read '" << field_csv << "'\n";
        return kExitConfig;
      }
      const auto image = qubogs::render_field(in);
      std::ofstream out(pgm_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << pgm_path << "'\n";
        return kExitConfig;
      }
      out << image.pgm;
      std::cout << image.ascii;
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
