#include "qubogs/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qubogs/block_gauss_seidel.hpp"
#include "qubogs/qubo.hpp"
#include "qubogs/reference.hpp"

namespace qubogs {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

std::optional<std::vector<double>> reference_solution(const LinearSystem& system) {
  auto x = direct_solve(system);
  if (norm2(x) == 0.0) return std::nullopt;
  return x;
}

std::optional<std::span<const double>> as_span(const std::optional<std::vector<double>>& v) {
  if (!v) return std::nullopt;
  return std::span<const double>(*v);
}

struct Combination {
  Backend backend;
  std::size_t bits;
  std::size_t blocks;
  double shrink;
  std::uint64_t seed;

  std::string file_name() const {
    return std::string(backend_name(backend)) + "_R" + std::to_string(bits) + "_D" + std::to_string(blocks) + "_g" +
           format_number(shrink) + "_s" + std::to_string(seed) + ".csv";
  }
};

double parse_cell(const std::string& text, std::size_t line) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw CsvError("field CSV line " + std::to_string(line) + ": bad number '" + text + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, ptr);
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& rec : trace.iterations) {
    out << rec.k << ',' << format_number(rec.residual) << ','
        << format_number(rec.relative_error.value_or(std::numeric_limits<double>::quiet_NaN())) << ','
        << rec.clipped_blocks() << ',' << format_number(rec.best_energy_sum()) << ','
        << format_number(rec.halfwidth_max) << '\n';
  }
}

void write_field_csv(std::ostream& out, const TemperatureField& field) {
  out << kFieldHeader << '\n';
  for (int j = 0; j <= field.m; ++j) {
    for (int i = 0; i <= field.m; ++i) {
      out << i << ',' << j << ',' << format_number(field.length * i / field.m) << ','
          << format_number(field.length * j / field.m) << ',' << format_number(field.at(i, j)) << '\n';
    }
  }
}

SolveSummary run_solve(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  config.validate();
  const HeatProblem problem = config.problem.to_problem();
  const LinearSystem system = assemble_system(problem);
  const auto exact = reference_solution(system);
  const ConditionEstimate kappa = condition_number(system);

  const IterationTrace trace = iterate(system, config.solver, as_span(exact));

  std::filesystem::create_directories(out_dir);
  std::ostringstream trace_csv;
  write_trace_csv(trace_csv, trace);
  write_file(out_dir / "trace.csv", trace_csv.str());

  const TemperatureField field = grid_to_field(trace.last().x, problem);
  std::ostringstream field_csv;
  write_field_csv(field_csv, field);
  write_file(out_dir / "field.csv", field_csv.str());
  if (config.output.pgm) {
    std::istringstream in(field_csv.str());
    write_file(out_dir / "field.pgm", render_field(in).pgm);
  }

  SolveSummary summary;
  summary.iterations = trace.iterations.size();
  summary.converged = trace.converged;
  summary.kappa = kappa.value;
  summary.kappa_converged = kappa.converged;
  summary.final_residual = trace.last().residual;
  summary.final_error = trace.last().relative_error;

  const auto resources = estimate_resources(system.size(), config.solver.bits, config.solver.blocks);
  std::ostringstream s;
  s << "backend = " << backend_name(config.solver.backend) << '\n'
    << "unknowns = " << system.size() << '\n'
    << "blocks = " << config.solver.blocks << '\n'
    << "bits = " << config.solver.bits << '\n'
    << "shrink = " << format_number(config.solver.shrink) << '\n'
    << "qubits_full = " << resources.qubits_full << '\n'
    << "qubits_per_block = " << resources.qubits_per_block << '\n'
    << "kappa = " << format_number(kappa.value) << '\n'
    << "kappa_converged = " << (kappa.converged ? "true" : "false") << '\n'
    << "iterations = " << summary.iterations << '\n'
    << "converged = " << (summary.converged ? "true" : "false") << '\n'
    << "residual_absolute = " << (trace.residual_absolute ? "true" : "false") << '\n'
    << "final_residual = " << format_number(summary.final_residual) << '\n'
    << "final_relative_error = "
    << format_number(summary.final_error.value_or(std::numeric_limits<double>::quiet_NaN())) << '\n';
  write_file(out_dir / "summary.txt", s.str());
  return summary;
}

SweepSummary run_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  config.validate();
  const HeatProblem problem = config.problem.to_problem();
  const LinearSystem system = assemble_system(problem);
  const auto exact = reference_solution(system);

  std::vector<Combination> combos;
  for (Backend backend : config.sweep.backends) {
    for (std::size_t bits : config.sweep.bits) {
      for (std::size_t blocks : config.sweep.blocks) {
        for (double shrink : config.sweep.shrink) {
          for (std::uint64_t seed : config.sweep.seeds) combos.push_back({backend, bits, blocks, shrink, seed});
        }
      }
    }
  }

  std::vector<std::optional<IterationTrace>> traces(combos.size());
  std::vector<std::string> errors(combos.size());
  const auto count = static_cast<std::int64_t>(combos.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < count; ++c) {
    const auto& combo = combos[static_cast<std::size_t>(c)];
    SolveConfig solver = config.solver;
    solver.backend = combo.backend;
    solver.bits = combo.bits;
    solver.blocks = combo.blocks;
    solver.shrink = combo.shrink;
    solver.sampler.seed = combo.seed;
    try {
      traces[static_cast<std::size_t>(c)] = iterate(system, solver, as_span(exact));
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(c)] = e.what();
    }
  }

  std::filesystem::create_directories(out_dir / "traces");
  SweepSummary summary;
  summary.combinations = combos.size();
  std::ostringstream combined;
  std::ostringstream report;
  combined << kSweepHeader << '\n';
  for (std::size_t c = 0; c < combos.size(); ++c) {
    const auto& combo = combos[c];
    report << combo.file_name() << ": ";
    if (!traces[c]) {
      ++summary.failures;
      report << "failed: " << errors[c] << '\n';
      continue;
    }
    const auto& trace = *traces[c];
    summary.converged += trace.converged ? 1 : 0;
    report << (trace.converged ? "converged" : "not converged") << " after " << trace.iterations.size()
           << " iterations\n";

    std::ostringstream one;
    write_trace_csv(one, trace);
    write_file(out_dir / "traces" / combo.file_name(), one.str());
    for (const auto& rec : trace.iterations) {
      combined << backend_name(combo.backend) << ',' << combo.bits << ',' << combo.blocks << ','
               << format_number(combo.shrink) << ',' << combo.seed << ',' << rec.k << ','
               << format_number(rec.residual) << ','
               << format_number(rec.relative_error.value_or(std::numeric_limits<double>::quiet_NaN())) << '\n';
    }
  }
  write_file(out_dir / "sweep.csv", combined.str());
  write_file(out_dir / "sweep_summary.txt", report.str());
  return summary;
}

RenderedField render_field(std::istream& field_csv) {
  std::string line;
  if (!std::getline(field_csv, line)) throw CsvError("field CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kFieldHeader) throw CsvError("field CSV header must be '" + std::string(kFieldHeader) + "'");

  struct Cell {
    long i, j;
    double t;
  };
  std::vector<Cell> cells;
  std::size_t line_no = 1;
  while (std::getline(field_csv, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 5) throw CsvError("field CSV line " + std::to_string(line_no) + ": expected 5 columns");
    const double i = parse_cell(fields[0], line_no);
    const double j = parse_cell(fields[1], line_no);
    if (i < 0 || j < 0 || i != std::floor(i) || j != std::floor(j)) {
      throw CsvError("field CSV line " + std::to_string(line_no) + ": node indices must be non-negative integers");
    }
    cells.push_back({static_cast<long>(i), static_cast<long>(j), parse_cell(fields[4], line_no)});
  }
  if (cells.empty()) throw CsvError("field CSV has no data rows");

  long max_i = 0;
  long max_j = 0;
  for (const auto& c : cells) {
    max_i = std::max(max_i, c.i);
    max_j = std::max(max_j, c.j);
  }
  const auto width = static_cast<std::size_t>(max_i + 1);
  const auto height = static_cast<std::size_t>(max_j + 1);
  if (cells.size() != width * height) throw CsvError("field CSV does not describe a complete grid");
  std::vector<double> grid(width * height, std::numeric_limits<double>::quiet_NaN());
  for (const auto& c : cells) {
    auto& slot = grid[static_cast<std::size_t>(c.j) * width + static_cast<std::size_t>(c.i)];
    if (!std::isnan(slot)) throw CsvError("field CSV repeats node (" + std::to_string(c.i) + ", " + std::to_string(c.j) + ")");
    if (!std::isfinite(c.t)) throw CsvError("field CSV contains a non-finite temperature");
    slot = c.t;
  }

  const auto [lo_it, hi_it] = std::minmax_element(grid.begin(), grid.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  static constexpr char kGlyphs[] = " .:-=+*#%@";

  RenderedField out;
  out.width = static_cast<int>(width);
  out.height = static_cast<int>(height);
  std::ostringstream pgm;
  std::ostringstream ascii;
  pgm << "P2\n" << width << ' ' << height << "\n255\n";
  for (std::size_t row = height; row-- > 0;) {
    for (std::size_t col = 0; col < width; ++col) {
      const double frac = span > 0.0 ? (grid[row * width + col] - lo) / span : 0.0;
      const long gray = std::lround(frac * 255.0);
      const auto level = std::min<std::size_t>(9, static_cast<std::size_t>(frac * 10.0));
      pgm << (col ? " " : "") << gray;
      ascii << kGlyphs[level];
    }
    pgm << '\n';
    ascii << '\n';
  }
  out.pgm = pgm.str();
  out.ascii = ascii.str();
  return out;
}

}  // namespace qubogs
