#include "qubogs/grid.hpp"

#include <stdexcept>
#include <string>

namespace qubogs {

double boundary_temperature(Edge edge, double s, double length) {
  if (!(length > 0.0)) throw std::invalid_argument("boundary_temperature: length must be positive");
  if (!(s >= 0.0 && s <= length)) throw std::invalid_argument("boundary_temperature: coordinate outside [0, L]");
  switch (edge) {
    case Edge::bottom:
    case Edge::left:
      return 0.0;
    case Edge::top:
    case Edge::right:
      return s / length * 100.0;
  }
  return 0.0;
}

BoundaryProfile constant_boundary(double bottom, double top, double left, double right) {
  return [=](Edge edge, double, double) {
    switch (edge) {
      case Edge::bottom: return bottom;
      case Edge::top: return top;
      case Edge::left: return left;
      case Edge::right: return right;
    }
    return 0.0;
  };
}

void HeatProblem::validate() const {
  if (m < 2) throw std::invalid_argument("HeatProblem: m must be >= 2, got " + std::to_string(m));
  if (!(length > 0.0)) throw std::invalid_argument("HeatProblem: length must be positive");
  if (!boundary) throw std::invalid_argument("HeatProblem: boundary profile is empty");
  for (const auto& src : sources) {
    if (src.i < 1 || src.i > m - 1 || src.j < 1 || src.j > m - 1) {
      throw std::invalid_argument("HeatProblem: source at (" + std::to_string(src.i) + ", " + std::to_string(src.j) +
                                  ") is not an interior node");
    }
  }
}

double HeatProblem::boundary_value(int i, int j) const {
  // Bottom and top rows own the corners.
  if (j == 0) return boundary(Edge::bottom, node_coordinate(i), length);
  if (j == m) return boundary(Edge::top, node_coordinate(i), length);
  if (i == 0) return boundary(Edge::left, node_coordinate(j), length);
  if (i == m) return boundary(Edge::right, node_coordinate(j), length);
  throw std::invalid_argument("HeatProblem::boundary_value: (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") is an interior node");
}

std::size_t interior_index(int i, int j, int m) {
  if (i < 1 || i > m - 1 || j < 1 || j > m - 1) throw std::out_of_range("interior_index: not an interior node");
  return static_cast<std::size_t>((j - 1) * (m - 1) + (i - 1));
}

LinearSystem assemble_system(const HeatProblem& problem) {
  problem.validate();
  const int m = problem.m;
  const std::size_t n = problem.unknowns();
  LinearSystem sys{SparseMatrix(n), std::vector<double>(n, 0.0)};

  constexpr int di[4] = {1, -1, 0, 0};
  constexpr int dj[4] = {0, 0, 1, -1};
  for (int j = 1; j <= m - 1; ++j) {
    for (int i = 1; i <= m - 1; ++i) {
      const std::size_t row = interior_index(i, j, m);
      sys.a.add(row, row, 4.0);
      for (int d = 0; d < 4; ++d) {
        const int ni = i + di[d];
        const int nj = j + dj[d];
        if (ni >= 1 && ni <= m - 1 && nj >= 1 && nj <= m - 1) {
          sys.a.add(row, interior_index(ni, nj, m), -1.0);
        } else {
          sys.b[row] += problem.boundary_value(ni, nj);
        }
      }
    }
  }
  for (const auto& src : problem.sources) sys.b[interior_index(src.i, src.j, m)] += src.strength;
  return sys;
}

TemperatureField grid_to_field(std::span<const double> x, const HeatProblem& problem) {
  problem.validate();
  if (x.size() != problem.unknowns()) {
    throw std::invalid_argument("grid_to_field: expected " + std::to_string(problem.unknowns()) + " values, got " +
                                std::to_string(x.size()));
  }
  const int m = problem.m;
  TemperatureField field{m, problem.length, std::vector<double>(static_cast<std::size_t>((m + 1) * (m + 1)))};
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i <= m; ++i) {
      const bool interior = i >= 1 && i <= m - 1 && j >= 1 && j <= m - 1;
      field.values[static_cast<std::size_t>(j * (m + 1) + i)] =
          interior ? x[interior_index(i, j, m)] : problem.boundary_value(i, j);
    }
  }
  return field;
}

}  // namespace qubogs
