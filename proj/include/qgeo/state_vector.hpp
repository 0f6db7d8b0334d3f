#pragma once

// Dense pure-state simulation over one register or a pair of registers.
//
// Memory: a state of dimension d holds d complex<double> values, i.e. 16*d
// bytes. The two-register states used for period finding have d = q*N with
// N^2 < q < 2N^2, so d < 2N^3 (about 4 MiB for N = 50).
//
// Pair-shaped states are stored row-major: basis |a>|b> lives at flat index
// a*second + b. All reductions (norms, means, marginals) run sequentially in
// index order, so results are bit-reproducible for a given build.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qgeo/rng.hpp"

namespace qgeo {

using amplitude = std::complex<double>;

// Normalization tolerance accepted when constructing from caller data.
inline constexpr double kNormTolerance = 1e-10;

enum class Register { first, second };

struct RegisterShape {
  std::size_t first = 1;
  std::size_t second = 1;
  bool paired = false;

  static RegisterShape single(std::size_t dim) { return {dim, 1, false}; }
  static RegisterShape pair(std::size_t dim_a, std::size_t dim_b) { return {dim_a, dim_b, true}; }

  std::size_t dim() const { return first * second; }
  // Dimension of the selected register; for a single register both
  // selections name the whole space.
  std::size_t extent(Register r) const;

  bool operator==(const RegisterShape&) const = default;
};

class ProbabilityDistribution {
 public:
  // Validates p_i >= 0 and |sum - 1| <= kNormTolerance.
  explicit ProbabilityDistribution(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> values() const { return probs_; }
  const std::vector<double>& vector() const { return probs_; }

 private:
  std::vector<double> probs_;
};

using IndexPredicate = std::function<bool(std::uint64_t)>;

struct Measurement;

class StateVector {
 public:
  // Throws invalid_dimension_error on size/shape mismatch and input_error if
  // the amplitudes are not normalized within kNormTolerance.
  static StateVector from_amplitudes(std::vector<amplitude> amps, RegisterShape shape);
  static StateVector from_amplitudes(std::vector<amplitude> amps);
  static StateVector basis(RegisterShape shape, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  const RegisterShape& shape() const { return shape_; }
  std::span<const amplitude> amplitudes() const { return amps_; }
  const amplitude& operator[](std::size_t i) const { return amps_[i]; }
  double norm_squared() const;

 private:
  StateVector(std::vector<amplitude> amps, RegisterShape shape)
      : amps_(std::move(amps)), shape_(shape) {}

  std::vector<amplitude> amps_;
  RegisterShape shape_;

  friend StateVector new_uniform(std::size_t dim);
  friend StateVector phase_flip(StateVector state, const IndexPredicate& marked);
  friend StateVector invert_about_average(StateVector state);
  friend StateVector qft(StateVector state, Register reg);
  friend StateVector inverse_qft(StateVector state, Register reg);
  friend Measurement measure_register(const StateVector& state, Register reg, Rng& rng);
};

struct Measurement {
  std::uint64_t outcome;
  StateVector collapsed;
};

// Uniform superposition 1/sqrt(dim) over a single register.
StateVector new_uniform(std::size_t dim);

ProbabilityDistribution probabilities(const StateVector& state);

// Marginal distribution of one register (the full distribution for a
// single-register state).
std::vector<double> marginal_probabilities(const StateVector& state, Register reg);

// c_i -> -c_i wherever marked(i); the predicate ranges over flat indices.
StateVector phase_flip(StateVector state, const IndexPredicate& marked);

// c_i -> 2<c> - c_i. On a pair-shaped state the reflection acts on the first
// register independently for each value of the second register.
StateVector invert_about_average(StateVector state);

// c'_k = q^{-1/2} sum_a exp(+2 pi i a k / q) c_a on the selected register.
StateVector qft(StateVector state, Register reg);
StateVector inverse_qft(StateVector state, Register reg);

// Samples the selected register with its marginal probability and returns the
// renormalized projection. Deterministic given the rng state.
Measurement measure_register(const StateVector& state, Register reg, Rng& rng);

amplitude inner_product(const StateVector& a, const StateVector& b);

}  // namespace qgeo
