#include "qubogs/qubo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qubogs {

BinaryEncoding BinaryEncoding::uniform(std::size_t n, std::size_t bits, double scale, double offset) {
  BinaryEncoding enc{bits, std::vector<double>(n, scale), std::vector<double>(n, offset)};
  enc.validate();
  return enc;
}

double BinaryEncoding::resolution(std::size_t i) const {
  return std::ldexp(scale.at(i), -static_cast<int>(bits - 1));
}

BinaryEncoding BinaryEncoding::slice(std::size_t begin, std::size_t count) const {
  if (begin + count > size()) throw std::out_of_range("BinaryEncoding::slice: out of range");
  BinaryEncoding out;
  out.bits = bits;
  out.scale.assign(scale.begin() + static_cast<std::ptrdiff_t>(begin),
                   scale.begin() + static_cast<std::ptrdiff_t>(begin + count));
  out.offset.assign(offset.begin() + static_cast<std::ptrdiff_t>(begin),
                    offset.begin() + static_cast<std::ptrdiff_t>(begin + count));
  return out;
}

void BinaryEncoding::validate() const {
  if (bits < 1) throw std::invalid_argument("BinaryEncoding: bits must be >= 1");
  if (bits > 52) throw std::invalid_argument("BinaryEncoding: bits must be <= 52");
  if (scale.size() != offset.size()) throw std::invalid_argument("BinaryEncoding: scale/offset length mismatch");
  for (std::size_t i = 0; i < scale.size(); ++i) {
    if (!(scale[i] > 0.0) || !std::isfinite(scale[i])) {
      throw std::invalid_argument("BinaryEncoding: scale[" + std::to_string(i) + "] must be positive and finite");
    }
    if (!std::isfinite(offset[i])) {
      throw std::invalid_argument("BinaryEncoding: offset[" + std::to_string(i) + "] must be finite");
    }
  }
}

std::vector<double> QuboProblem::dense_couplings() const {
  const std::size_t n = size();
  std::vector<double> j(n * n, 0.0);
  for (const auto& t : quadratic) {
    j[t.row * n + t.col] += t.value;
    j[t.col * n + t.row] += t.value;
  }
  return j;
}

std::size_t logical_index(std::size_t variable, std::size_t bit, std::size_t bits) {
  if (bits == 0 || bit >= bits) throw std::out_of_range("logical_index: bit index out of range");
  return variable * bits + bit;
}

LogicalQubit inverse_index(std::size_t index, std::size_t bits) {
  if (bits == 0) throw std::out_of_range("inverse_index: bits must be >= 1");
  return {index / bits, index % bits};
}

QuboProblem encode(const DenseMatrix& a, std::span<const double> b, const BinaryEncoding& enc) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("encode: system is not square or rhs mismatched");
  if (enc.size() != n) {
    throw std::invalid_argument("encode: encoding has " + std::to_string(enc.size()) + " variables, system has " +
                                std::to_string(n));
  }
  enc.validate();
  const std::size_t bits = enc.bits;

  // x = C s - d  =>  |A x - b|^2 = s^T C G C s - 2 s^T C A^T (A d + b) + |A d + b|^2
  const DenseMatrix gram = a.transposed() * a;
  std::vector<double> target = a.multiply(enc.offset);
  for (std::size_t k = 0; k < n; ++k) target[k] += b[k];
  const std::vector<double> projected = a.multiply_transposed(target);

  QuboProblem q;
  q.offset = 0.0;
  for (double t : target) q.offset += t * t;
  q.linear.assign(n * bits, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    const double ci = enc.scale[i];
    for (std::size_t r = 0; r < bits; ++r) {
      const double wr = std::ldexp(1.0, -static_cast<int>(r));
      // q^2 = q folds the (l, l) quadratic entry into the linear term.
      q.linear[logical_index(i, r, bits)] = -2.0 * ci * projected[i] * wr + gram(i, i) * ci * ci * wr * wr;
    }
  }

  for (std::size_t l = 0; l < n * bits; ++l) {
    const auto [i, r] = inverse_index(l, bits);
    for (std::size_t k = l + 1; k < n * bits; ++k) {
      const auto [j, s] = inverse_index(k, bits);
      const double g = gram(i, j);
      if (g == 0.0) continue;
      // b_rs^ij and b_sr^ji merged into one unordered entry.
      const double value = 2.0 * g * enc.scale[i] * enc.scale[j] * std::ldexp(1.0, -static_cast<int>(r + s));
      q.quadratic.push_back({l, k, value});
    }
  }
  return q;
}

QuboProblem encode(const LinearSystem& system, const BinaryEncoding& enc) {
  return encode(DenseMatrix::from_sparse(system.a), system.b, enc);
}

std::vector<double> decode(std::span<const std::uint8_t> bits, const BinaryEncoding& enc) {
  if (bits.size() != enc.qubits()) {
    throw std::invalid_argument("decode: expected " + std::to_string(enc.qubits()) + " bits, got " +
                                std::to_string(bits.size()));
  }
  std::vector<double> x(enc.size());
  for (std::size_t i = 0; i < enc.size(); ++i) {
    double s = 0.0;
    for (std::size_t r = 0; r < enc.bits; ++r) {
      if (bits[logical_index(i, r, enc.bits)]) s += std::ldexp(1.0, -static_cast<int>(r));
    }
    x[i] = enc.scale[i] * s - enc.offset[i];
  }
  return x;
}

double energy(const QuboProblem& problem, std::span<const std::uint8_t> bits) {
  if (bits.size() != problem.size()) {
    throw std::invalid_argument("energy: expected " + std::to_string(problem.size()) + " bits, got " +
                                std::to_string(bits.size()));
  }
  double e = 0.0;
  for (std::size_t l = 0; l < bits.size(); ++l) {
    if (bits[l]) e += problem.linear[l];
  }
  for (const auto& t : problem.quadratic) {
    if (bits[t.row] && bits[t.col]) e += t.value;
  }
  return e;
}

std::size_t required_bits(double scale, double accuracy) {
  if (!(scale > 0.0) || !(accuracy > 0.0)) throw std::invalid_argument("required_bits: inputs must be positive");
  std::size_t bits = 1;
  while (std::ldexp(2.0 * scale, -static_cast<int>(bits)) > accuracy) ++bits;
  return bits;
}

ResourceReport estimate_resources(std::size_t n, std::size_t bits, std::size_t blocks) {
  if (blocks < 1 || blocks > n) throw std::invalid_argument("estimate_resources: need 1 <= D <= N");
  if (bits < 1) throw std::invalid_argument("estimate_resources: bits must be >= 1");
  ResourceReport report;
  report.qubits_full = n * bits;
  report.block_size = (n + blocks - 1) / blocks;
  report.qubits_per_block = report.block_size * bits;
  const double nr = static_cast<double>(n * bits);
  const double d = static_cast<double>(blocks);
  report.connectivity_reduction = nr * nr * (1.0 - 1.0 / (d * d));
  return report;
}

}  // namespace qubogs
