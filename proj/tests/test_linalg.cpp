#include "doctest.h"
#include "qubogs/linalg.hpp"
#include "test_support.hpp"

using namespace qubogs;

TEST_CASE("sparse add accumulates and keeps columns sorted") {
  SparseMatrix a(3);
  a.add(0, 2, 1.0);
  a.add(0, 0, 2.0);
  a.add(0, 2, 0.5);
  const auto row = a.row(0);
  REQUIRE(row.size() == 2);
  CHECK(row[0].col == 0);
  CHECK(row[1].col == 2);
  CHECK(row[1].value == doctest::Approx(1.5));
  CHECK(a.at(1, 1) == 0.0);
  CHECK_THROWS_AS(a.add(3, 0, 1.0), std::out_of_range);
}

TEST_CASE("LU solves and transposed solves agree with the matrix") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto rows = testing::random_dominant_matrix(n, rng);
    const auto sys = testing::dense_system(rows, testing::random_vector(n, rng));
    const DenseMatrix a = DenseMatrix::from_sparse(sys.a);
    const LuFactorization lu(a);
    const auto x = lu.solve(sys.b);
    const auto ax = a.multiply(x);
    for (std::size_t i = 0; i < n; ++i) CHECK(ax[i] == doctest::Approx(sys.b[i]).epsilon(1e-12));
    const auto y = lu.solve_transposed(sys.b);
    const auto aty = a.multiply_transposed(y);
    for (std::size_t i = 0; i < n; ++i) CHECK(aty[i] == doctest::Approx(sys.b[i]).epsilon(1e-12));
  }
}

TEST_CASE("LU needs pivoting for a zero leading entry") {
  DenseMatrix a(2, 2);
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  const auto x = LuFactorization(a).solve(std::vector<double>{2.0, 3.0});
  CHECK(x[0] == doctest::Approx(3.0));
  CHECK(x[1] == doctest::Approx(2.0));
}

TEST_CASE("LU rejects singular matrices") {
  DenseMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  CHECK_THROWS_AS(LuFactorization{a}, SingularMatrixError);
}

TEST_CASE("spectral norm of a diagonal matrix is its largest magnitude") {
  DenseMatrix d(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = -7.0;
  d(2, 2) = 3.0;
  const auto r = spectral_norm(d);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(7.0).epsilon(1e-10));
  CHECK(spectral_norm(DenseMatrix(2, 2)).value == 0.0);
}

TEST_CASE("norm2 is overflow safe") {
  const std::vector<double> v{3e200, 4e200};
  CHECK(norm2(v) == doctest::Approx(5e200));
}
