#include <random>

#include "doctest.h"
#include "qubogs/grid.hpp"
#include "qubogs/reference.hpp"
#include "test_support.hpp"

using namespace qubogs;

TEST_CASE("default boundary profile") {
  CHECK(boundary_temperature(Edge::top, 1.0, 1.0) == 100.0);
  CHECK(boundary_temperature(Edge::bottom, 0.3, 1.0) == 0.0);
  CHECK(boundary_temperature(Edge::left, 0.7, 1.0) == 0.0);
  CHECK(boundary_temperature(Edge::right, 0.5, 1.0) == doctest::Approx(50.0));
  CHECK(boundary_temperature(Edge::top, 1.0, 2.0) == doctest::Approx(50.0));
  CHECK_THROWS_AS(boundary_temperature(Edge::top, 1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(boundary_temperature(Edge::right, -0.1, 1.0), std::invalid_argument);
}

TEST_CASE("default plate assembles to 81 five-point rows") {
  const HeatProblem problem;  // m = 10 (11 nodes per side), L = 1, default boundaries
  const LinearSystem sys = assemble_system(problem);
  REQUIRE(sys.size() == 81);
  for (std::size_t r = 0; r < sys.size(); ++r) {
    CHECK(sys.a.row(r).size() <= 5);
    CHECK(sys.a.at(r, r) == 4.0);
    for (const auto& e : sys.a.row(r)) {
      if (e.col != r) CHECK(e.value == -1.0);
      CHECK(sys.a.at(e.col, r) == e.value);  // symmetric
    }
  }
}

TEST_CASE("homogeneous plate has zero right-hand side") {
  HeatProblem problem;
  problem.m = 3;
  problem.boundary = constant_boundary(0, 0, 0, 0);
  const auto sys = assemble_system(problem);
  CHECK(sys.size() == 4);
  for (double v : sys.b) CHECK(v == 0.0);
  for (double v : direct_solve(sys)) CHECK(v == 0.0);
}

TEST_CASE("single interior node averages its four neighbours") {
  HeatProblem problem;
  problem.m = 2;
  problem.boundary = constant_boundary(10, 20, 30, 40);
  const auto sys = assemble_system(problem);
  REQUIRE(sys.size() == 1);
  CHECK(sys.a.at(0, 0) == 4.0);
  CHECK(sys.b[0] == 100.0);
  const auto x = direct_solve(sys);
  CHECK(x[0] == doctest::Approx(25.0));

  const auto field = grid_to_field(x, problem);
  CHECK(field.values.size() == 9);
  CHECK(field.at(1, 1) == doctest::Approx(25.0));
  CHECK(field.at(1, 0) == 10.0);
  CHECK(field.at(1, 2) == 20.0);
  CHECK(field.at(0, 1) == 30.0);
  CHECK(field.at(2, 1) == 40.0);
}

TEST_CASE("invalid problems are rejected") {
  HeatProblem problem;
  problem.m = 1;
  CHECK_THROWS_AS(assemble_system(problem), std::invalid_argument);
  problem.m = 5;
  problem.sources = {{0, 2, 1.0}};
  CHECK_THROWS_AS(assemble_system(problem), std::invalid_argument);
  problem.sources = {{2, 5, 1.0}};
  CHECK_THROWS_AS(assemble_system(problem), std::invalid_argument);
  problem.sources = {{4, 4, 1.0}};
  CHECK_NOTHROW(assemble_system(problem));
}

TEST_CASE("sources are added to the right-hand side at their node") {
  HeatProblem problem;
  problem.m = 4;
  problem.boundary = constant_boundary(0, 0, 0, 0);
  problem.sources = {{2, 1, 8.0}, {1, 3, -2.0}};
  const auto sys = assemble_system(problem);
  CHECK(sys.b[interior_index(2, 1, 4)] == 8.0);
  CHECK(sys.b[interior_index(1, 3, 4)] == -2.0);
  const auto x = direct_solve(sys);
  CHECK(x[interior_index(2, 1, 4)] > 0.0);
  CHECK(x[interior_index(1, 3, 4)] < 0.0);
}

TEST_CASE("assembled rows reproduce the five-point stencil on random fields") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-50.0, 150.0);
  for (int m = 2; m <= 6; ++m) {
    for (int trial = 0; trial < 5; ++trial) {
      HeatProblem problem;
      problem.m = m;
      problem.boundary = constant_boundary(u(rng), u(rng), u(rng), u(rng));
      problem.sources = {{1, m - 1, u(rng)}};
      const auto sys = assemble_system(problem);
      std::vector<double> x(sys.size());
      for (auto& v : x) v = u(rng);
      const auto field = grid_to_field(x, problem);
      const auto ax = sys.a.multiply(x);
      for (int j = 1; j < m; ++j) {
        for (int i = 1; i < m; ++i) {
          const std::size_t row = interior_index(i, j, m);
          double stencil = 4 * field.at(i, j) - field.at(i + 1, j) - field.at(i - 1, j) - field.at(i, j + 1) -
                           field.at(i, j - 1);
          if (i == 1 && j == m - 1) stencil -= problem.sources[0].strength;
          CHECK(ax[row] - sys.b[row] == doctest::Approx(stencil).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("bilinear harmonic function is the exact discrete solution") {
  for (double length : {1.0, 2.5}) {
    HeatProblem problem;
    problem.length = length;
    const auto x = direct_solve(assemble_system(problem));
    for (int j = 1; j < problem.m; ++j) {
      for (int i = 1; i < problem.m; ++i) {
        const double expected = 100.0 * problem.node_coordinate(i) * problem.node_coordinate(j) / (length * length);
        CHECK(std::abs(x[interior_index(i, j, problem.m)] - expected) <= 1e-9);
      }
    }
  }
}

TEST_CASE("grid_to_field") {
  HeatProblem zero;
  zero.m = 4;
  zero.boundary = constant_boundary(0, 0, 0, 0);
  const auto f = grid_to_field(std::vector<double>(9, 0.0), zero);
  for (double v : f.values) CHECK(v == 0.0);
  CHECK_THROWS_AS(grid_to_field(std::vector<double>(8, 0.0), zero), std::invalid_argument);

  const HeatProblem plate;
  const auto solved = grid_to_field(direct_solve(assemble_system(plate)), plate);
  CHECK(solved.at(0, 0) == 0.0);
  CHECK(solved.at(plate.m, plate.m) == 100.0);
  for (double v : solved.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 100.0 + 1e-9);
  }
}
