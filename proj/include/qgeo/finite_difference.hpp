#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace qgeo {

// Three-point derivative weights over a (possibly non-uniform) grid:
// f^(n)(t_i) ~= sum_k weights[k] * f[first + k].
struct Stencil {
  std::size_t first = 0;
  std::array<double, 3> weights{};

  template <class Values>
  auto apply(const Values& f) const {
    return weights[0] * f[first] + weights[1] * f[first + 1] + weights[2] * f[first + 2];
  }
};

// Second-order first derivative at grid[i]: central in the interior,
// one-sided three-point at the ends. grid must be strictly increasing with
// at least three points.
Stencil first_derivative_stencil(std::span<const double> grid, std::size_t i);

// Second-order accurate second derivative at an interior point
// (first-order only when the neighbouring spacings differ).
Stencil second_derivative_stencil(std::span<const double> grid, std::size_t i);

}  // namespace qgeo
