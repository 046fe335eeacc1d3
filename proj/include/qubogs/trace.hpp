#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qubogs/linalg.hpp"

namespace qubogs {

struct ResidualNorm {
  double value = 0.0;
  bool absolute = false;  // set when b = 0 and |A x - b| is reported unnormalized
};

/// |A x - b| / |b|, or |A x - b| flagged as absolute when b = 0.
ResidualNorm residual(const LinearSystem& system, std::span<const double> x);

/// |x - x_exact| / |x_exact|; throws for a zero reference.
double relative_error(std::span<const double> x, std::span<const double> exact);

struct BlockStats {
  double best_energy = 0.0;
  bool clipped = false;
};

struct IterationRecord {
  std::size_t k = 0;
  std::vector<double> x;
  double residual = 0.0;
  std::optional<double> relative_error;
  std::vector<BlockStats> blocks;
  double halfwidth_max = 0.0;

  std::size_t clipped_blocks() const;
  double best_energy_sum() const;
};

struct IterationTrace {
  std::vector<IterationRecord> iterations;
  bool converged = false;
  bool residual_absolute = false;

  const IterationRecord& last() const { return iterations.back(); }
};

}  // namespace qubogs
