#include "qubogs/samplers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "qubogs/random.hpp"

namespace qubogs {

namespace {

bool precedes(double ea, const Bitstring& qa, double eb, const Bitstring& qb) {
  if (ea != eb) return ea < eb;
  return qa < qb;
}

double coefficient_scale(const QuboProblem& problem) {
  double s = 1.0;
  for (double a : problem.linear) s += std::abs(a);
  for (const auto& t : problem.quadratic) s += std::abs(t.value);
  return s;
}

struct Candidate {
  Bitstring bits;
  double energy = std::numeric_limits<double>::infinity();
};

// Enumerates the 2^low_bits states whose high bits equal `prefix`, walking the
// low bits in Gray-code order with incremental energies. Near-best states are
// re-scored with energy() so ties resolve exactly as in the serial scan.
Candidate scan_chunk(const QuboProblem& problem, const std::vector<double>& couplings, std::size_t low_bits,
                     std::uint64_t prefix, double tol) {
  const std::size_t n = problem.size();
  Bitstring q(n, 0);
  for (std::size_t t = low_bits; t < n; ++t) q[t] = static_cast<std::uint8_t>((prefix >> (t - low_bits)) & 1U);

  std::vector<double> field(problem.linear);
  for (std::size_t l = 0; l < n; ++l) {
    if (!q[l]) continue;
    for (std::size_t k = 0; k < n; ++k) field[k] += couplings[k * n + l];
  }

  Candidate best{q, energy(problem, q)};
  double running = best.energy;
  const std::uint64_t count = std::uint64_t{1} << low_bits;
  for (std::uint64_t t = 1; t < count; ++t) {
    const auto b = static_cast<std::size_t>(std::countr_zero(t));
    const double sign = q[b] ? -1.0 : 1.0;
    running += sign * field[b];
    q[b] ^= 1U;
    const double* col = &couplings[b * n];
    for (std::size_t k = 0; k < n; ++k) field[k] += sign * col[k];
    if (running <= best.energy + tol) {
      const double exact = energy(problem, q);
      if (precedes(exact, q, best.energy, best.bits)) {
        best.bits = q;
        best.energy = exact;
      }
      running = exact;
    }
  }
  return best;
}

Sample anneal_read(const QuboProblem& problem, const std::vector<double>& couplings, BetaRange betas,
                   const SamplerParams& params, std::size_t read) {
  const std::size_t n = problem.size();
  std::mt19937_64 rng(derive_seed(params.seed, read));

  Bitstring q(n);
  for (auto& bit : q) bit = static_cast<std::uint8_t>(rng() >> 63);

  std::vector<double> field(problem.linear);
  for (std::size_t l = 0; l < n; ++l) {
    if (!q[l]) continue;
    for (std::size_t k = 0; k < n; ++k) field[k] += couplings[k * n + l];
  }

  const double ratio = betas.final / betas.initial;
  const double denom = params.sweeps > 1 ? static_cast<double>(params.sweeps - 1) : 1.0;
  for (std::size_t sweep = 0; sweep < params.sweeps; ++sweep) {
    const double beta =
        params.sweeps > 1 ? betas.initial * std::pow(ratio, static_cast<double>(sweep) / denom) : betas.final;
    for (std::size_t l = 0; l < n; ++l) {
      const double delta = q[l] ? -field[l] : field[l];
      if (delta > 0.0 && to_unit_interval(rng()) >= std::exp(-beta * delta)) continue;
      const double sign = q[l] ? -1.0 : 1.0;
      q[l] ^= 1U;
      const double* col = &couplings[l * n];
      for (std::size_t k = 0; k < n; ++k) field[k] += sign * col[k];
    }
  }

  if (params.noise_p > 0.0) apply_bit_flip_noise(q, params.noise_p, derive_seed(~params.seed, read));
  const double e = energy(problem, q);
  return Sample{std::move(q), e, 1};
}

}  // namespace

void SamplerParams::validate() const {
  if (num_reads < 1) throw std::invalid_argument("SamplerParams: num_reads must be >= 1");
  if (sweeps < 1) throw std::invalid_argument("SamplerParams: sweeps must be >= 1");
  if (beta_initial && !(*beta_initial > 0.0)) throw std::invalid_argument("SamplerParams: beta_initial must be > 0");
  if (beta_final && !(*beta_final > 0.0)) throw std::invalid_argument("SamplerParams: beta_final must be > 0");
  if (beta_initial && beta_final && *beta_final < *beta_initial) {
    throw std::invalid_argument("SamplerParams: beta_final must be >= beta_initial");
  }
  if (!(noise_p >= 0.0 && noise_p < 1.0)) throw std::invalid_argument("SamplerParams: noise_p must be in [0, 1)");
}

SampleSet make_sample_set(std::vector<Sample> raw, const SamplerParams& params) {
  std::sort(raw.begin(), raw.end(),
            [](const Sample& a, const Sample& b) { return precedes(a.energy, a.bits, b.energy, b.bits); });
  SampleSet set;
  set.params = params;
  for (auto& s : raw) {
    if (!set.samples.empty() && set.samples.back().bits == s.bits) {
      set.samples.back().occurrences += s.occurrences;
    } else {
      set.samples.push_back(std::move(s));
    }
  }
  set.best = 0;
  return set;
}

BetaRange default_beta_range(const QuboProblem& problem) {
  double max_abs = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  auto visit = [&](double v) {
    const double a = std::abs(v);
    if (a == 0.0) return;
    max_abs = std::max(max_abs, a);
    min_abs = std::min(min_abs, a);
  };
  for (double a : problem.linear) visit(a);
  for (const auto& t : problem.quadratic) visit(t.value);
  if (max_abs == 0.0) return {1.0, 1.0};
  return {0.1 / max_abs, 10.0 / min_abs};
}

void apply_bit_flip_noise(Bitstring& bits, double p, std::uint64_t seed) {
  if (p <= 0.0) return;
  std::mt19937_64 rng(seed);
  for (auto& bit : bits) {
    if (to_unit_interval(rng()) < p) bit ^= 1U;
  }
}

SampleSet solve_exhaustive(const QuboProblem& problem) {
  const std::size_t n = problem.size();
  if (n > kMaxExhaustiveSize) {
    throw SamplerError("solve_exhaustive: " + std::to_string(n) + " variables exceeds the enumeration limit of " +
                       std::to_string(kMaxExhaustiveSize));
  }
  const auto couplings = problem.dense_couplings();
  const double tol = 1e-9 * coefficient_scale(problem);
  const std::size_t low_bits = std::min<std::size_t>(n, 16);
  const auto chunks = static_cast<std::int64_t>(std::uint64_t{1} << (n - low_bits));

  std::vector<Candidate> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    partial[static_cast<std::size_t>(c)] = scan_chunk(problem, couplings, low_bits, static_cast<std::uint64_t>(c), tol);
  }

  Candidate best = partial.front();
  for (const auto& cand : partial) {
    if (precedes(cand.energy, cand.bits, best.energy, best.bits)) best = cand;
  }
  SamplerParams params;
  params.num_reads = 1;
  return make_sample_set({Sample{std::move(best.bits), best.energy, 1}}, params);
}

SampleSet solve_sa(const QuboProblem& problem, const SamplerParams& params) {
  params.validate();
  const auto couplings = problem.dense_couplings();
  const BetaRange defaults = default_beta_range(problem);
  const BetaRange betas{params.beta_initial.value_or(defaults.initial), params.beta_final.value_or(defaults.final)};
  if (betas.final < betas.initial) throw std::invalid_argument("solve_sa: beta_final must be >= beta_initial");

  std::vector<Sample> reads(params.num_reads);
  const auto count = static_cast<std::int64_t>(params.num_reads);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < count; ++r) {
    reads[static_cast<std::size_t>(r)] = anneal_read(problem, couplings, betas, params, static_cast<std::size_t>(r));
  }
  return make_sample_set(std::move(reads), params);
}

namespace reference {

SampleSet solve_exhaustive(const QuboProblem& problem) {
  const std::size_t n = problem.size();
  if (n > kMaxExhaustiveSize) throw SamplerError("reference::solve_exhaustive: problem too large");
  Bitstring q(n, 0);
  Candidate best{q, energy(problem, q)};
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t s = 1; s < count; ++s) {
    for (std::size_t t = 0; t < n; ++t) q[t] = static_cast<std::uint8_t>((s >> t) & 1U);
    const double e = energy(problem, q);
    if (precedes(e, q, best.energy, best.bits)) best = Candidate{q, e};
  }
  SamplerParams params;
  params.num_reads = 1;
  return make_sample_set({Sample{std::move(best.bits), best.energy, 1}}, params);
}

SampleSet solve_sa(const QuboProblem& problem, const SamplerParams& params) {
  params.validate();
  const auto couplings = problem.dense_couplings();
  const BetaRange defaults = default_beta_range(problem);
  const BetaRange betas{params.beta_initial.value_or(defaults.initial), params.beta_final.value_or(defaults.final)};
  if (betas.final < betas.initial) throw std::invalid_argument("solve_sa: beta_final must be >= beta_initial");
  std::vector<Sample> reads;
  reads.reserve(params.num_reads);
  for (std::size_t r = 0; r < params.num_reads; ++r) reads.push_back(anneal_read(problem, couplings, betas, params, r));
  return make_sample_set(std::move(reads), params);
}

}  // namespace reference

SampleSet ExhaustiveSampler::sample(const QuboProblem& problem, const SamplerParams& params) const {
  auto set = solve_exhaustive(problem);
  set.params = params;
  return set;
}

SampleSet SimulatedAnnealingSampler::sample(const QuboProblem& problem, const SamplerParams& params) const {
  return solve_sa(problem, params);
}

}  // namespace qubogs
