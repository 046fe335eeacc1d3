#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qubogs/linalg.hpp"
#include "qubogs/trace.hpp"

namespace qubogs {

/// Dense LU with partial pivoting.
std::vector<double> direct_solve(const LinearSystem& system);

/// Point Gauss-Seidel from x = 0. Relative errors are recorded when `exact` is given.
IterationTrace classical_gauss_seidel(const LinearSystem& system, double tolerance, std::size_t max_iters,
                                      std::optional<std::span<const double>> exact = std::nullopt);

struct ConditionEstimate {
  double value = 0.0;
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  bool converged = false;  // false when either power iteration hit its cap
};

/// 2-norm condition number: power iteration on A^T A for sigma_max, inverse
/// power iteration through the LU factors for sigma_min.
ConditionEstimate condition_number(const LinearSystem& system);

}  // namespace qubogs
