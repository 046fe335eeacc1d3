#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qubogs/qubo.hpp"

namespace qubogs {

class SamplerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SamplerParams {
  std::size_t num_reads = 100;
  std::size_t sweeps = 1000;
  // Unset endpoints default to 0.1/|coeff|_max and 10/|coeff|_min (nonzero).
  std::optional<double> beta_initial;
  std::optional<double> beta_final;
  std::uint64_t seed = 0;
  double noise_p = 0.0;  // per-bit flip probability applied after annealing

  void validate() const;
};

struct Sample {
  Bitstring bits;
  double energy = 0.0;
  std::size_t occurrences = 1;
};

/// Distinct samples ordered by (energy, bitstring); `best` is always 0 for a
/// non-empty set.
struct SampleSet {
  std::vector<Sample> samples;
  SamplerParams params;
  std::size_t best = 0;

  const Sample& best_sample() const { return samples.at(best); }
};

/// Merges duplicate bitstrings and orders samples by (energy, bitstring).
SampleSet make_sample_set(std::vector<Sample> raw, const SamplerParams& params);

/// Minimization backend for QUBO problems.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual SampleSet sample(const QuboProblem& problem, const SamplerParams& params) const = 0;
  virtual std::string name() const = 0;
};

inline constexpr std::size_t kMaxExhaustiveSize = 24;

/// Global minimum by full enumeration (Gray-code order, OpenMP over chunks).
SampleSet solve_exhaustive(const QuboProblem& problem);

/// Independent single-flip Metropolis anneals, one RNG stream per read,
/// reads distributed over OpenMP threads.
SampleSet solve_sa(const QuboProblem& problem, const SamplerParams& params);

struct BetaRange {
  double initial;
  double final;
};
BetaRange default_beta_range(const QuboProblem& problem);

/// Flips each bit independently with probability p.
void apply_bit_flip_noise(Bitstring& bits, double p, std::uint64_t seed);

namespace reference {

/// Plain scan evaluating every state from scratch.
SampleSet solve_exhaustive(const QuboProblem& problem);

/// Same per-read kernel as qubogs::solve_sa, reads run in order on one thread.
SampleSet solve_sa(const QuboProblem& problem, const SamplerParams& params);

}  // namespace reference

class ExhaustiveSampler final : public Sampler {
 public:
  SampleSet sample(const QuboProblem& problem, const SamplerParams& params) const override;
  std::string name() const override { return "exhaustive"; }
};

class SimulatedAnnealingSampler final : public Sampler {
 public:
  SampleSet sample(const QuboProblem& problem, const SamplerParams& params) const override;
  std::string name() const override { return "sa"; }
};

}  // namespace qubogs
