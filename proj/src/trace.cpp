#include "qubogs/trace.hpp"

#include <stdexcept>

namespace qubogs {

ResidualNorm residual(const LinearSystem& system, std::span<const double> x) {
  if (x.size() != system.size()) throw std::invalid_argument("residual: size mismatch");
  auto r = system.a.multiply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= system.b[i];
  const double bn = norm2(system.b);
  if (bn == 0.0) return {norm2(r), true};
  return {norm2(r) / bn, false};
}

double relative_error(std::span<const double> x, std::span<const double> exact) {
  const double en = norm2(exact);
  if (en == 0.0) throw std::invalid_argument("relative_error: reference solution is zero");
  return distance2(x, exact) / en;
}

std::size_t IterationRecord::clipped_blocks() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.clipped ? 1 : 0;
  return n;
}

double IterationRecord::best_energy_sum() const {
  double s = 0.0;
  for (const auto& b : blocks) s += b.best_energy;
  return s;
}

}  // namespace qubogs
