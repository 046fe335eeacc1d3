#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace qubogs {

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SparseEntry {
  std::size_t col;
  double value;
};

/// Square matrix stored as one (column, value) list per row, columns sorted.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t n) : rows_(n) {}

  std::size_t size() const { return rows_.size(); }

  /// Accumulates into (row, col); keeps the row sorted by column.
  void add(std::size_t row, std::size_t col, double value);

  double at(std::size_t row, std::size_t col) const;
  std::span<const SparseEntry> row(std::size_t i) const { return rows_.at(i); }

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

 private:
  std::vector<std::vector<SparseEntry>> rows_;
};

/// Row-major dense matrix for block-sized work.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_sparse(const SparseMatrix& a);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> multiply(std::span<const double> x) const;
  std::vector<double> multiply_transposed(std::span<const double> x) const;
  DenseMatrix operator*(const DenseMatrix& rhs) const;
  DenseMatrix transposed() const;

  /// Copies rows [r0, r0+nr) x cols [c0, c0+nc).
  DenseMatrix slice(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct LinearSystem {
  SparseMatrix a;
  std::vector<double> b;

  std::size_t size() const { return b.size(); }
};

double norm2(std::span<const double> v);
double distance2(std::span<const double> x, std::span<const double> y);

/// LU factorization with partial pivoting. A pivot is rejected as singular
/// when it falls below 1e-14 times the infinity norm of its original row.
class LuFactorization {
 public:
  explicit LuFactorization(DenseMatrix a);

  std::size_t size() const { return lu_.rows(); }
  std::vector<double> solve(std::span<const double> b) const;
  /// Solves A^T y = b with the same factors.
  std::vector<double> solve_transposed(std::span<const double> b) const;
  DenseMatrix inverse() const;

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

struct PowerIterationResult {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of a symmetric positive semidefinite operator given as
/// a matvec callback. Start vector is a fixed pseudo-random vector.
template <typename Apply>
PowerIterationResult dominant_eigenvalue(std::size_t n, Apply&& apply, double tol = 1e-14,
                                         std::size_t max_iters = 20000);

/// Spectral norm via power iteration on M^T M.
PowerIterationResult spectral_norm(const DenseMatrix& m);

std::vector<double> pseudo_random_unit_vector(std::size_t n, std::uint64_t seed);

template <typename Apply>
PowerIterationResult dominant_eigenvalue(std::size_t n, Apply&& apply, double tol, std::size_t max_iters) {
  PowerIterationResult result;
  if (n == 0) {
    result.converged = true;
    return result;
  }
  std::vector<double> v = pseudo_random_unit_vector(n, 0x5eedULL);
  std::vector<double> w(n);
  double previous = 0.0;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    apply(std::span<const double>(v), std::span<double>(w));
    double rayleigh = 0.0;
    for (std::size_t i = 0; i < n; ++i) rayleigh += v[i] * w[i];
    const double wn = norm2(w);
    result.value = rayleigh;
    result.iterations = it;
    if (wn == 0.0) {
      result.value = 0.0;
      result.converged = true;
      return result;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
    if (it > 1 && std::abs(rayleigh - previous) <= tol * std::abs(rayleigh)) {
      result.converged = true;
      return result;
    }
    previous = rayleigh;
  }
  return result;
}

}  // namespace qubogs
