#include "qubogs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qubogs/random.hpp"

namespace qubogs {

void SparseMatrix::add(std::size_t row, std::size_t col, double value) {
  if (row >= size() || col >= size()) throw std::out_of_range("SparseMatrix::add: index out of range");
  auto& r = rows_[row];
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const SparseEntry& e, std::size_t c) { return e.col < c; });
  if (it != r.end() && it->col == col) {
    it->value += value;
  } else {
    r.insert(it, SparseEntry{col, value});
  }
}

double SparseMatrix::at(std::size_t row, std::size_t col) const {
  for (const auto& e : rows_.at(row)) {
    if (e.col == col) return e.value;
  }
  return 0.0;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != size() || y.size() != size()) throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
  for (std::size_t i = 0; i < size(); ++i) {
    double acc = 0.0;
    for (const auto& e : rows_[i]) acc += e.value * x[e.col];
    y[i] = acc;
  }
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(size());
  multiply(x, y);
  return y;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_sparse(const SparseMatrix& a) {
  DenseMatrix m(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto& e : a.row(i)) m(i, e.col) = e.value;
  }
  return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != cols_) throw std::invalid_argument("DenseMatrix::multiply: size mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> DenseMatrix::multiply_transposed(std::span<const double> x) const {
  if (x.size() != rows_) throw std::invalid_argument("DenseMatrix::multiply_transposed: size mismatch");
  std::vector<double> y(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) y[j] += (*this)(i, j) * x[i];
  }
  return y;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("DenseMatrix product: inner dimension mismatch");
  DenseMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
    }
  }
  return out;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

DenseMatrix DenseMatrix::slice(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("DenseMatrix::slice: out of range");
  DenseMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  }
  return out;
}

double norm2(std::span<const double> v) {
  // Scaled accumulation avoids overflow for large temperatures squared.
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : v) {
    const double t = x / scale;
    acc += t * t;
  }
  return scale * std::sqrt(acc);
}

double distance2(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("distance2: size mismatch");
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return norm2(d);
}

LuFactorization::LuFactorization(DenseMatrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
  const std::size_t n = lu_.rows();
  if (lu_.cols() != n) throw std::invalid_argument("LuFactorization: matrix is not square");
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  std::vector<double> row_norm(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row_norm[i] = std::max(row_norm[i], std::abs(lu_(i, j)));
  }

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
    }
    if (std::abs(lu_(p, k)) <= 1e-14 * row_norm[perm_[p]] || lu_(p, k) == 0.0) {
      throw SingularMatrixError("LuFactorization: matrix is singular to working precision");
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
    }
    const double pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = lu_(i, k) / pivot;
      lu_(i, k) = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
    }
  }
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw std::invalid_argument("LuFactorization::solve: size mismatch");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

std::vector<double> LuFactorization::solve_transposed(std::span<const double> b) const {
  // P A = L U  =>  A^T = U^T L^T P, so solve U^T z = b, L^T w = z, x = P^T w.
  const std::size_t n = size();
  if (b.size() != n) throw std::invalid_argument("LuFactorization::solve_transposed: size mismatch");
  std::vector<double> z(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) z[i] -= lu_(j, i) * z[j];
    z[i] /= lu_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) z[i] -= lu_(j, i) * z[j];
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = z[i];
  return x;
}

DenseMatrix LuFactorization::inverse() const {
  const std::size_t n = size();
  DenseMatrix inv(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const auto col = solve(e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    e[j] = 0.0;
  }
  return inv;
}

std::vector<double> pseudo_random_unit_vector(std::size_t n, std::uint64_t seed) {
  std::vector<double> v(n);
  std::uint64_t state = seed;
  for (auto& x : v) {
    state = splitmix64(state);
    x = 0.5 + to_unit_interval(state);
  }
  const double nv = norm2(v);
  for (auto& x : v) x /= nv;
  return v;
}

PowerIterationResult spectral_norm(const DenseMatrix& m) {
  auto apply = [&m](std::span<const double> v, std::span<double> w) {
    const auto mv = m.multiply(v);
    const auto mtmv = m.multiply_transposed(mv);
    std::copy(mtmv.begin(), mtmv.end(), w.begin());
  };
  auto result = dominant_eigenvalue(m.cols(), apply);
  result.value = std::sqrt(std::max(result.value, 0.0));
  return result;
}

}  // namespace qubogs
