#include "qubogs/block_gauss_seidel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qubogs/random.hpp"

namespace qubogs {

std::size_t BlockPartition::largest_block() const {
  std::size_t m = 0;
  for (const auto& b : blocks) m = std::max(m, b.size());
  return m;
}

void BlockPartition::validate(std::size_t n) const {
  std::size_t next = 0;
  for (const auto& b : blocks) {
    if (b.begin != next || b.end <= b.begin) throw std::invalid_argument("BlockPartition: ranges must tile 0..N-1");
    next = b.end;
  }
  if (next != n) throw std::invalid_argument("BlockPartition: ranges do not cover the system");
}

BlockPartition partition(std::size_t n, std::size_t d) {
  if (d < 1 || d > n) {
    throw std::invalid_argument("partition: block count " + std::to_string(d) + " outside [1, " + std::to_string(n) + "]");
  }
  BlockPartition part;
  const std::size_t base = n / d;
  const std::size_t larger = n % d;
  std::size_t begin = 0;
  for (std::size_t p = 0; p < d; ++p) {
    const std::size_t len = base + (p < larger ? 1 : 0);
    part.blocks.push_back({begin, begin + len});
    begin += len;
  }
  return part;
}

SweepResult gs_sweep(const LinearSystem& system, const BlockPartition& part, std::span<const double> x_prev,
                     const BlockSolveFn& solve_block) {
  const std::size_t n = system.size();
  if (x_prev.size() != n) throw std::invalid_argument("gs_sweep: x_prev has wrong length");
  part.validate(n);

  SweepResult out{std::vector<double>(x_prev.begin(), x_prev.end()), {}};
  out.blocks.reserve(part.size());
  for (std::size_t p = 0; p < part.size(); ++p) {
    const auto [begin, end] = part.blocks[p];
    const std::size_t len = end - begin;
    DenseMatrix diag(len, len);
    std::vector<double> rhs(len);
    for (std::size_t i = begin; i < end; ++i) {
      double acc = system.b[i];
      for (const auto& e : system.a.row(i)) {
        if (e.col >= begin && e.col < end) {
          diag(i - begin, e.col - begin) = e.value;
        } else {
          // out.x already holds this sweep's values for earlier blocks.
          acc -= e.value * out.x[e.col];
        }
      }
      rhs[i - begin] = acc;
    }
    BlockOutcome solved = solve_block(p, diag, rhs);
    if (solved.x.size() != len) throw std::runtime_error("gs_sweep: block solver returned wrong length");
    std::copy(solved.x.begin(), solved.x.end(), out.x.begin() + static_cast<std::ptrdiff_t>(begin));
    out.blocks.push_back(solved.stats);
  }
  return out;
}

BlockOutcome solve_block_exact(const DenseMatrix& a, std::span<const double> rhs) {
  const LuFactorization lu(a);
  return {lu.solve(rhs), {}};
}

BlockOutcome solve_block_qubo(const DenseMatrix& a, std::span<const double> rhs, const BinaryEncoding& enc,
                              const Sampler& sampler, const SamplerParams& params) {
  const QuboProblem qubo = encode(a, rhs, enc);
  const SampleSet set = sampler.sample(qubo, params);
  if (set.samples.empty()) throw SamplerError("solve_block_qubo: sampler returned no samples");
  const Sample& best = set.best_sample();

  BlockOutcome out{decode(best.bits, enc), {best.energy, false}};
  for (std::size_t i = 0; i < enc.size() && !out.stats.clipped; ++i) {
    std::size_t ones = 0;
    for (std::size_t r = 0; r < enc.bits; ++r) ones += best.bits[logical_index(i, r, enc.bits)];
    out.stats.clipped = ones == 0 || ones == enc.bits;
  }
  return out;
}

Backend parse_backend(std::string_view name) {
  if (name == "exact") return Backend::exact;
  if (name == "exhaustive") return Backend::exhaustive;
  if (name == "sa") return Backend::sa;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "' (expected exact, exhaustive or sa)");
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::exact: return "exact";
    case Backend::exhaustive: return "exhaustive";
    case Backend::sa: return "sa";
  }
  return "unknown";
}

void SolveConfig::validate(std::size_t n) const {
  if (blocks < 1 || blocks > n) throw std::invalid_argument("solver.blocks must be in [1, N]");
  if (bits < 1 || bits > 52) throw std::invalid_argument("solver.bits must be in [1, 52]");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("solver.scale must be positive");
  if (!std::isfinite(offset)) throw std::invalid_argument("solver.offset must be finite");
  if (!(shrink > 0.0 && shrink <= 1.0)) throw std::invalid_argument("solver.shrink must be in (0, 1]");
  if (!(tolerance > 0.0)) throw std::invalid_argument("solver.tolerance must be positive");
  if (max_iters < 1) throw std::invalid_argument("solver.max_iters must be >= 1");
  sampler.validate();
}

BinaryEncoding shrink_encoding(const BinaryEncoding& initial, std::span<const double> x_center, double gamma,
                               std::size_t k) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("shrink_encoding: gamma must be in (0, 1]");
  if (k < 1) throw std::invalid_argument("shrink_encoding: k must be >= 1");
  if (x_center.size() != initial.size()) throw std::invalid_argument("shrink_encoding: centre has wrong length");
  const double factor = std::pow(gamma, static_cast<double>(k - 1));
  BinaryEncoding enc;
  enc.bits = initial.bits;
  enc.scale.resize(initial.size());
  enc.offset.resize(initial.size());
  for (std::size_t i = 0; i < initial.size(); ++i) {
    const double half = initial.scale[i] * factor;
    enc.scale[i] = half;
    enc.offset[i] = half - x_center[i];
  }
  return enc;
}

namespace {

IterationTrace run_iterations(const LinearSystem& system, const SolveConfig& config, const Sampler* sampler,
                              std::optional<std::span<const double>> exact) {
  const std::size_t n = system.size();
  config.validate(n);
  if (exact && exact->size() != n) throw std::invalid_argument("iterate: exact solution has wrong length");
  const BlockPartition part = partition(n, config.blocks);
  const BinaryEncoding initial = BinaryEncoding::uniform(n, config.bits, config.scale, config.offset);

  IterationTrace trace;
  std::vector<double> x(n, 0.0);
  BinaryEncoding enc = initial;
  for (std::size_t k = 1; k <= config.max_iters; ++k) {
    BlockSolveFn solve;
    if (sampler == nullptr) {
      solve = [](std::size_t, const DenseMatrix& a, std::span<const double> rhs) { return solve_block_exact(a, rhs); };
    } else {
      solve = [&](std::size_t p, const DenseMatrix& a, std::span<const double> rhs) {
        SamplerParams params = config.sampler;
        params.seed = derive_seed(config.sampler.seed, (k - 1) * part.size() + p);
        const auto& range = part.blocks[p];
        return solve_block_qubo(a, rhs, enc.slice(range.begin, range.size()), *sampler, params);
      };
    }
    SweepResult sweep = gs_sweep(system, part, x, solve);
    x = std::move(sweep.x);

    IterationRecord rec;
    rec.k = k;
    rec.x = x;
    const ResidualNorm r = residual(system, x);
    rec.residual = r.value;
    trace.residual_absolute = r.absolute;
    if (exact) rec.relative_error = relative_error(x, *exact);
    rec.blocks = std::move(sweep.blocks);
    if (sampler != nullptr) rec.halfwidth_max = *std::max_element(enc.scale.begin(), enc.scale.end());
    trace.iterations.push_back(std::move(rec));

    if (r.value <= config.tolerance) {
      trace.converged = true;
      break;
    }
    if (config.shrink < 1.0) enc = shrink_encoding(initial, x, config.shrink, k + 1);
  }
  return trace;
}

}  // namespace

IterationTrace iterate(const LinearSystem& system, const SolveConfig& config,
                       std::optional<std::span<const double>> exact) {
  switch (config.backend) {
    case Backend::exact:
      return run_iterations(system, config, nullptr, exact);
    case Backend::exhaustive: {
      const ExhaustiveSampler sampler;
      return run_iterations(system, config, &sampler, exact);
    }
    case Backend::sa: {
      const SimulatedAnnealingSampler sampler;
      return run_iterations(system, config, &sampler, exact);
    }
  }
  throw std::invalid_argument("iterate: unknown backend");
}

IterationTrace iterate(const LinearSystem& system, const SolveConfig& config, const Sampler& sampler,
                       std::optional<std::span<const double>> exact) {
  return run_iterations(system, config, &sampler, exact);
}

ContractionOperators contraction_operators(const LinearSystem& system, const BlockPartition& two_blocks) {
  two_blocks.validate(system.size());
  if (two_blocks.size() != 2) throw std::invalid_argument("contraction_operators: partition must have two blocks");
  const DenseMatrix a = DenseMatrix::from_sparse(system.a);
  const std::size_t n1 = two_blocks.blocks[0].size();
  const std::size_t n2 = two_blocks.blocks[1].size();
  const DenseMatrix a11 = a.slice(0, n1, 0, n1);
  const DenseMatrix a12 = a.slice(0, n1, n1, n2);
  const DenseMatrix a21 = a.slice(n1, n2, 0, n1);
  const DenseMatrix a22 = a.slice(n1, n2, n1, n2);
  const DenseMatrix a11_inv = LuFactorization(a11).inverse();
  const DenseMatrix a22_inv = LuFactorization(a22).inverse();
  return {a11_inv * a12 * a22_inv * a21, a22_inv * a21 * a11_inv * a12};
}

ConvergenceReport check_convergence_condition(const LinearSystem& system, const BlockPartition& two_blocks) {
  const ContractionOperators ops = contraction_operators(system, two_blocks);
  ConvergenceReport report;
  report.first_norm = spectral_norm(ops.first).value;
  report.second_norm = spectral_norm(ops.second).value;
  report.sufficient = report.first_norm < 1.0 && report.second_norm < 1.0;
  return report;
}

}  // namespace qubogs
