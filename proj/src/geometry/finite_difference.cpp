#include "qgeo/finite_difference.hpp"

#include "qgeo/errors.hpp"

namespace qgeo {

Stencil first_derivative_stencil(std::span<const double> grid, std::size_t i) {
  const std::size_t n = grid.size();
  if (n < 3) throw input_error("finite differences need at least three samples");
  if (i >= n) throw input_error("stencil index out of range");

  if (i == 0) {
    const double h1 = grid[1] - grid[0];
    const double h2 = grid[2] - grid[1];
    return {0, {-(2.0 * h1 + h2) / (h1 * (h1 + h2)), (h1 + h2) / (h1 * h2), -h1 / (h2 * (h1 + h2))}};
  }
  if (i == n - 1) {
    const double h1 = grid[n - 2] - grid[n - 3];
    const double h2 = grid[n - 1] - grid[n - 2];
    return {n - 3, {h2 / (h1 * (h1 + h2)), -(h1 + h2) / (h1 * h2), (2.0 * h2 + h1) / (h2 * (h1 + h2))}};
  }
  const double h1 = grid[i] - grid[i - 1];
  const double h2 = grid[i + 1] - grid[i];
  return {i - 1, {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))}};
}

Stencil second_derivative_stencil(std::span<const double> grid, std::size_t i) {
  if (grid.size() < 3 || i == 0 || i + 1 >= grid.size())
    throw input_error("second derivative needs an interior sample");
  const double h1 = grid[i] - grid[i - 1];
  const double h2 = grid[i + 1] - grid[i];
  return {i - 1, {2.0 / (h1 * (h1 + h2)), -2.0 / (h1 * h2), 2.0 / (h2 * (h1 + h2))}};
}

}  // namespace qgeo
