#include "qubogs/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qubogs {

std::vector<double> direct_solve(const LinearSystem& system) {
  const LuFactorization lu(DenseMatrix::from_sparse(system.a));
  return lu.solve(system.b);
}

IterationTrace classical_gauss_seidel(const LinearSystem& system, double tolerance, std::size_t max_iters,
                                      std::optional<std::span<const double>> exact) {
  const std::size_t n = system.size();
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = system.a.at(i, i);
    if (diag[i] == 0.0) throw std::invalid_argument("classical_gauss_seidel: zero diagonal at row " + std::to_string(i));
  }

  IterationTrace trace;
  std::vector<double> x(n, 0.0);
  for (std::size_t k = 1; k <= max_iters; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = system.b[i];
      for (const auto& e : system.a.row(i)) {
        if (e.col != i) acc -= e.value * x[e.col];
      }
      x[i] = acc / diag[i];
    }
    IterationRecord rec;
    rec.k = k;
    rec.x = x;
    const auto r = residual(system, x);
    rec.residual = r.value;
    trace.residual_absolute = r.absolute;
    if (exact) rec.relative_error = relative_error(x, *exact);
    trace.iterations.push_back(std::move(rec));
    if (r.value <= tolerance) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

ConditionEstimate condition_number(const LinearSystem& system) {
  const std::size_t n = system.size();
  const DenseMatrix a = DenseMatrix::from_sparse(system.a);
  const LuFactorization lu(a);

  auto gram = [&a](std::span<const double> v, std::span<double> w) {
    const auto av = a.multiply(v);
    const auto atav = a.multiply_transposed(av);
    std::copy(atav.begin(), atav.end(), w.begin());
  };
  // (A^T A)^-1 v = A^-1 A^-T v
  auto inverse_gram = [&lu](std::span<const double> v, std::span<double> w) {
    const auto y = lu.solve_transposed(v);
    const auto z = lu.solve(y);
    std::copy(z.begin(), z.end(), w.begin());
  };

  const auto top = dominant_eigenvalue(n, gram);
  const auto inv = dominant_eigenvalue(n, inverse_gram);
  ConditionEstimate est;
  est.sigma_max = std::sqrt(std::max(top.value, 0.0));
  est.sigma_min = inv.value > 0.0 ? 1.0 / std::sqrt(inv.value) : 0.0;
  est.value = est.sigma_max / est.sigma_min;
  est.converged = top.converged && inv.converged;
  return est;
}

}  // namespace qubogs
