#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qubogs/linalg.hpp"

namespace qubogs {

enum class Edge { bottom, top, left, right };

/// Edge temperature as a function of the coordinate along that edge
/// (x for bottom/top, y for left/right) and the plate side length.
using BoundaryProfile = std::function<double(Edge edge, double s, double length)>;

/// Default plate boundary: 0 on bottom and left, linear 0 -> 100 on top and right.
double boundary_temperature(Edge edge, double s, double length);

/// Constant temperature per edge.
BoundaryProfile constant_boundary(double bottom, double top, double left, double right);

struct PointSource {
  int i = 0;
  int j = 0;
  double strength = 0.0;  // positive heats, negative cools
};

/// Steady heat equation on the square [0, L]^2 split into m segments per side.
struct HeatProblem {
  int m = 10;
  double length = 1.0;
  BoundaryProfile boundary = boundary_temperature;
  std::vector<PointSource> sources;

  void validate() const;
  std::size_t unknowns() const { return static_cast<std::size_t>((m - 1) * (m - 1)); }
  double node_coordinate(int index) const { return length * index / m; }
  /// Temperature prescribed at boundary node (i, j); throws for interior nodes.
  double boundary_value(int i, int j) const;
};

/// Row of interior node (i, j), 1 <= i, j <= m-1, with i running fastest.
std::size_t interior_index(int i, int j, int m);

/// Five-point system with +4 on the diagonal and -1 for interior neighbours;
/// boundary temperatures and sources are moved to the right-hand side.
LinearSystem assemble_system(const HeatProblem& problem);

/// Full (m+1)x(m+1) nodal temperatures, boundary included.
struct TemperatureField {
  int m = 0;
  double length = 1.0;
  std::vector<double> values;  // index j*(m+1)+i

  double at(int i, int j) const { return values[static_cast<std::size_t>(j * (m + 1) + i)]; }
};

TemperatureField grid_to_field(std::span<const double> x, const HeatProblem& problem);

}  // namespace qubogs
