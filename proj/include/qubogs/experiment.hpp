#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qubogs/config.hpp"
#include "qubogs/grid.hpp"
#include "qubogs/trace.hpp"

namespace qubogs {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

inline constexpr const char* kTraceHeader = "k,residual,relative_error,clipped_blocks,best_energy_sum,halfwidth_max";
inline constexpr const char* kFieldHeader = "i,j,x,y,T";
inline constexpr const char* kSweepHeader = "backend,R,D,gamma,seed,k,residual,relative_error";

void write_trace_csv(std::ostream& out, const IterationTrace& trace);
void write_field_csv(std::ostream& out, const TemperatureField& field);

struct SolveSummary {
  std::size_t iterations = 0;
  bool converged = false;
  double kappa = 0.0;
  bool kappa_converged = false;
  double final_residual = 0.0;
  std::optional<double> final_error;
};

/// Writes trace.csv, field.csv, summary.txt (and field.pgm when enabled) into out_dir.
SolveSummary run_solve(const ExperimentConfig& config, const std::filesystem::path& out_dir);

struct SweepSummary {
  std::size_t combinations = 0;
  std::size_t failures = 0;
  std::size_t converged = 0;
};

/// Runs the Cartesian product backend x R x D x gamma x seed. Writes one trace
/// per combination under traces/, the combined sweep.csv, and sweep_summary.txt.
SweepSummary run_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir);

struct RenderedField {
  int width = 0;
  int height = 0;
  std::string pgm;    // plain "P2" graymap, top row first
  std::string ascii;  // 10-level preview, top row first
};

/// Parses a field CSV and maps [min T, max T] linearly onto [0, 255].
RenderedField render_field(std::istream& field_csv);

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qubogs
