#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qubogs/linalg.hpp"

namespace qubogs {

using Bitstring = std::vector<std::uint8_t>;

/// Fixed-point representation x_i = c_i * sum_r q_{i,r} 2^-r - d_i with R bits
/// per variable. Variable i covers [-d_i, 2 c_i - d_i).
struct BinaryEncoding {
  std::size_t bits = 1;
  std::vector<double> scale;   // c_i > 0
  std::vector<double> offset;  // d_i

  static BinaryEncoding uniform(std::size_t n, std::size_t bits, double scale, double offset);

  std::size_t size() const { return scale.size(); }
  std::size_t qubits() const { return size() * bits; }
  double lower(std::size_t i) const { return -offset[i]; }
  /// Open upper end of the interval.
  double upper(std::size_t i) const { return 2.0 * scale[i] - offset[i]; }
  /// Distance between adjacent representable values of variable i.
  double resolution(std::size_t i) const;

  BinaryEncoding slice(std::size_t begin, std::size_t count) const;
  void validate() const;
};

struct QuadraticTerm {
  std::size_t row;  // row < col
  std::size_t col;
  double value;
};

/// H(q) = sum_l a_l q_l + sum_{l<k} b_lk q_l q_k. `offset` is the constant
/// dropped from the least-squares objective, so H(q) + offset = |A x(q) - b|^2.
struct QuboProblem {
  std::vector<double> linear;
  std::vector<QuadraticTerm> quadratic;  // sorted by (row, col), each pair once
  double offset = 0.0;

  std::size_t size() const { return linear.size(); }
  /// Symmetric dense coupling matrix with zero diagonal.
  std::vector<double> dense_couplings() const;
};

std::size_t logical_index(std::size_t variable, std::size_t bit, std::size_t bits);

struct LogicalQubit {
  std::size_t variable;
  std::size_t bit;

  bool operator==(const LogicalQubit&) const = default;
};

LogicalQubit inverse_index(std::size_t index, std::size_t bits);

QuboProblem encode(const DenseMatrix& a, std::span<const double> b, const BinaryEncoding& enc);
QuboProblem encode(const LinearSystem& system, const BinaryEncoding& enc);

std::vector<double> decode(std::span<const std::uint8_t> bits, const BinaryEncoding& enc);

double energy(const QuboProblem& problem, std::span<const std::uint8_t> bits);

/// Smallest R >= 1 with 2c / 2^R <= accuracy.
std::size_t required_bits(double scale, double accuracy);

struct ResourceReport {
  std::size_t qubits_full = 0;       // N * R, single QUBO for the whole system
  std::size_t block_size = 0;        // ceil(N / D)
  std::size_t qubits_per_block = 0;  // ceil(N / D) * R
  double connectivity_reduction = 0.0;  // N^2 R^2 (1 - 1/D^2)
};

ResourceReport estimate_resources(std::size_t n, std::size_t bits, std::size_t blocks);

}  // namespace qubogs
