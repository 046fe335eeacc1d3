#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qubogs/block_gauss_seidel.hpp"
#include "qubogs/grid.hpp"

namespace qubogs {

/// Bad or unreadable configuration. The message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemSection {
  int m = 10;
  double length = 1.0;
  std::string boundary = "ramp";  // "ramp" or "constant"
  double bottom = 0.0;
  double top = 0.0;
  double left = 0.0;
  double right = 0.0;
  std::vector<PointSource> sources;

  HeatProblem to_problem() const;
};

struct SweepSection {
  std::vector<Backend> backends;
  std::vector<std::size_t> bits;
  std::vector<std::size_t> blocks;
  std::vector<double> shrink;
  std::vector<std::uint64_t> seeds;
};

struct OutputSection {
  std::string dir;  // empty: fall back to $QUBOGS_OUT_DIR, then "out"
  bool pgm = true;
};

/// INI file with [problem], [solver], [sweep] and [output] sections. Every key
/// is optional; defaults reproduce the 9x9 heat-plate demo.
struct ExperimentConfig {
  ProblemSection problem;
  SolveConfig solver;
  SweepSection sweep;  // lists default to the single [solver] value
  OutputSection output;

  void validate() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace qubogs
