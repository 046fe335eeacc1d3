#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qubogs/linalg.hpp"
#include "qubogs/qubo.hpp"
#include "qubogs/samplers.hpp"
#include "qubogs/trace.hpp"

namespace qubogs {

struct BlockRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const BlockRange&) const = default;
};

/// Contiguous, sorted, disjoint ranges covering 0..N-1.
struct BlockPartition {
  std::vector<BlockRange> blocks;

  std::size_t size() const { return blocks.size(); }
  std::size_t largest_block() const;
  void validate(std::size_t n) const;
};

/// D blocks of size ceil(N/D) or floor(N/D), larger blocks first.
BlockPartition partition(std::size_t n, std::size_t d);

struct BlockOutcome {
  std::vector<double> x;
  BlockStats stats;
};

/// Solves A_pp x_p = rhs_p for block p.
using BlockSolveFn =
    std::function<BlockOutcome(std::size_t block, const DenseMatrix& diagonal_block, std::span<const double> rhs)>;

struct SweepResult {
  std::vector<double> x;
  std::vector<BlockStats> blocks;
};

/// One block Gauss-Seidel pass: blocks in ascending order, each right-hand
/// side built from already-updated earlier blocks and previous later blocks.
SweepResult gs_sweep(const LinearSystem& system, const BlockPartition& part, std::span<const double> x_prev,
                     const BlockSolveFn& solve_block);

BlockOutcome solve_block_exact(const DenseMatrix& a, std::span<const double> rhs);

/// encode -> sample -> decode of the lowest-energy sample. A variable whose
/// bits are all 0 or all 1 sits on its interval boundary and marks the block clipped.
BlockOutcome solve_block_qubo(const DenseMatrix& a, std::span<const double> rhs, const BinaryEncoding& enc,
                              const Sampler& sampler, const SamplerParams& params);

enum class Backend { exact, exhaustive, sa };

Backend parse_backend(std::string_view name);
std::string_view backend_name(Backend backend);

struct SolveConfig {
  std::size_t blocks = 9;  // D
  std::size_t bits = 3;    // R
  double scale = 50.0;     // initial c_i
  double offset = 0.0;     // initial d_i
  double shrink = 0.8;     // gamma, 1 disables shrinking
  double tolerance = 1e-3;
  std::size_t max_iters = 50;
  Backend backend = Backend::sa;
  SamplerParams sampler;

  void validate(std::size_t n) const;
};

/// Encoding for iteration k: half-width c_i * gamma^(k-1) centred on x_center.
BinaryEncoding shrink_encoding(const BinaryEncoding& initial, std::span<const double> x_center, double gamma,
                               std::size_t k);

/// Block Gauss-Seidel from x = 0 with the configured backend. Stops when the
/// residual reaches the tolerance or after max_iters sweeps.
IterationTrace iterate(const LinearSystem& system, const SolveConfig& config,
                       std::optional<std::span<const double>> exact = std::nullopt);

/// Same loop with a caller-supplied sampler; config.backend is ignored.
IterationTrace iterate(const LinearSystem& system, const SolveConfig& config, const Sampler& sampler,
                       std::optional<std::span<const double>> exact = std::nullopt);

struct ContractionOperators {
  DenseMatrix first;   // A11^-1 A12 A22^-1 A21, maps x1 errors sweep to sweep
  DenseMatrix second;  // A22^-1 A21 A11^-1 A12, maps x2 errors sweep to sweep
};

ContractionOperators contraction_operators(const LinearSystem& system, const BlockPartition& two_blocks);

struct ConvergenceReport {
  double first_norm = 0.0;   // |A11^-1 A12 A22^-1 A21|_2
  double second_norm = 0.0;  // |A22^-1 A21 A11^-1 A12|_2
  bool sufficient = false;   // both norms < 1
};

ConvergenceReport check_convergence_condition(const LinearSystem& system, const BlockPartition& two_blocks);

}  // namespace qubogs
