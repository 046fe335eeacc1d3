#include <Eigen/Dense>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qubogs/grid.hpp"
#include "qubogs/reference.hpp"
#include "test_support.hpp"

using namespace qubogs;

namespace {

double svd_condition(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  return s(0) / s(n - 1);
}

}  // namespace

TEST_CASE("direct solve examples") {
  const auto id = testing::dense_system({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {3, -1, 7});
  CHECK(direct_solve(id) == std::vector<double>{3, -1, 7});

  const auto x = direct_solve(testing::dense_system({{2, 1}, {1, 2}}, {3, 3}));
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(1.0));

  const auto sys = assemble_system(HeatProblem{});
  const auto t = direct_solve(sys);
  CHECK(residual(sys, t).value <= 1e-10);

  CHECK_THROWS_AS(direct_solve(testing::dense_system({{1, 1}, {1, 1}}, {1, 1})), SingularMatrixError);
}

TEST_CASE("classical Gauss-Seidel") {
  const auto diag = testing::dense_system({{2, 0}, {0, 4}}, {2, 8});
  const auto one = classical_gauss_seidel(diag, 1e-12, 10);
  CHECK(one.converged);
  CHECK(one.iterations.size() == 1);

  const auto small = classical_gauss_seidel(testing::dense_system({{2, 1}, {1, 2}}, {3, 3}), 1e-12, 1);
  CHECK(small.iterations[0].x[0] == doctest::Approx(1.5));
  CHECK(small.iterations[0].x[1] == doctest::Approx(0.75));

  const auto sys = assemble_system(HeatProblem{});
  const auto exact = direct_solve(sys);
  const auto trace = classical_gauss_seidel(sys, 1e-10, 400, std::span<const double>(exact));
  CHECK(trace.converged);
  CHECK(trace.iterations.size() <= 400);
  for (std::size_t k = 1; k < trace.iterations.size(); ++k) {
    CHECK(trace.iterations[k].residual <= trace.iterations[k - 1].residual);
  }
  CHECK(*trace.last().relative_error < 1e-9);

  CHECK_THROWS_AS(classical_gauss_seidel(testing::dense_system({{0, 1}, {1, 1}}, {1, 1}), 1e-8, 5),
                  std::invalid_argument);
}

TEST_CASE("condition number of simple matrices") {
  const auto id = condition_number(testing::dense_system({{1, 0}, {0, 1}}, {1, 1}));
  CHECK(id.value == doctest::Approx(1.0).epsilon(0.01));
  const auto diag = condition_number(testing::dense_system({{1, 0}, {0, 10}}, {1, 1}));
  CHECK(diag.converged);
  CHECK(diag.value == doctest::Approx(10.0).epsilon(0.01));
}

TEST_CASE("condition number of the heat matrix matches its analytic spectrum") {
  const int m = 10;
  const auto sys = assemble_system(HeatProblem{});
  // Eigenvalues of the five-point matrix: 4 - 2cos(p pi/m) - 2cos(q pi/m).
  const double lo = 4.0 - 4.0 * std::cos(std::numbers::pi / m);
  const double hi = 4.0 + 4.0 * std::cos(std::numbers::pi / m);
  const auto est = condition_number(sys);
  CHECK(est.converged);
  CHECK(est.value == doctest::Approx(hi / lo).epsilon(0.01));

  std::vector<std::vector<double>> dense(81, std::vector<double>(81, 0.0));
  for (std::size_t i = 0; i < 81; ++i) {
    for (const auto& e : sys.a.row(i)) dense[i][e.col] = e.value;
  }
  CHECK(est.value == doctest::Approx(svd_condition(dense)).epsilon(0.01));
}

TEST_CASE("condition number against an SVD oracle and under scaling") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto a = testing::random_dominant_matrix(n, rng);
    const auto est = condition_number(testing::dense_system(a, std::vector<double>(n, 1.0)));
    CHECK(est.value == doctest::Approx(svd_condition(a)).epsilon(0.01));

    auto scaled = a;
    for (auto& row : scaled) {
      for (auto& v : row) v *= -3.7;
    }
    const auto est_scaled = condition_number(testing::dense_system(scaled, std::vector<double>(n, 1.0)));
    CHECK(est_scaled.value == doctest::Approx(est.value).epsilon(0.01));
  }
}
