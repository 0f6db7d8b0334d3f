#pragma once

// Grover search three ways: the closed-form two-amplitude recursion, the
// continuous probability path, and direct statevector simulation.
//
// The discrete path is embedded in the continuous parameter as
// phi_j = (2j + 1) * theta with sin^2(theta) = M / N, so the uniform start
// sits at phi_0 = theta and the marked mass at step j is sin^2(phi_j).

#include <cstdint>
#include <vector>

#include "qgeo/probability_path.hpp"
#include "qgeo/state_vector.hpp"

namespace qgeo {

class GroverInstance {
 public:
  // Requires n_items >= 2 and 1 <= |marked| < n_items with distinct indices
  // below n_items; throws input_error otherwise.
  GroverInstance(std::uint64_t n_items, std::vector<std::uint64_t> marked);

  static GroverInstance single_target(std::uint64_t n_items, std::uint64_t target = 0) {
    return GroverInstance(n_items, {target});
  }

  std::uint64_t n_items() const { return n_items_; }
  std::uint64_t marked_count() const { return marked_.size(); }
  const std::vector<std::uint64_t>& marked() const { return marked_; }
  bool is_marked(std::uint64_t i) const { return i < mask_.size() && mask_[i] != 0; }
  double theta() const { return theta_; }

 private:
  std::uint64_t n_items_;
  std::vector<std::uint64_t> marked_;  // sorted
  std::vector<char> mask_;
  double theta_;
};

// Amplitude k on the single marked item and l on each unmarked one.
struct RecursionState {
  double k = 0.0;
  double l = 0.0;
  std::uint64_t step = 0;
};

// k_0 = l_0 = 1/sqrt(N).
RecursionState initial_recursion_state(std::uint64_t n_items);

// One Grover iteration in the two-amplitude picture (single marked item):
//   k' = (N-2)/N k + 2(N-1)/N l,   l' = -2/N k + (N-2)/N l.
RecursionState recursion_step(const RecursionState& s, std::uint64_t n_items);

// Continuous path at phi in [0, pi/2]: marked items share sin^2(phi), the
// unmarked ones cos^2(phi). Throws domain_error outside the interval.
ProbabilityDistribution analytic_path(const GroverInstance& inst, double phi);

// Maps any phi onto [0, pi/2] preserving sin^2 (the Grover probabilities are
// pi-periodic and symmetric about pi/2).
double fold_angle(double phi);

// Continuous Grover state sin(phi)/sqrt(M) on marked, cos(phi)/sqrt(N-M) on
// unmarked items; defined for every real phi.
StateVector grover_state_at(const GroverInstance& inst, double phi);

double phi_of_step(const GroverInstance& inst, std::uint64_t step);

// floor(pi / (4 theta)).
std::uint64_t optimal_iterations(const GroverInstance& inst);

// Closed form sin^2((2 steps + 1) theta).
double success_probability(const GroverInstance& inst, std::uint64_t steps);

// Total probability on the marked set.
double marked_mass(const GroverInstance& inst, std::span<const double> probs);

// Oracle phase flip on the marked set followed by inversion about average.
StateVector grover_iteration(StateVector state, const GroverInstance& inst);

struct GroverRun {
  // One sample per step 0..steps at phi_j; probabilities always, amplitudes
  // only when requested.
  ProbabilityPath path;
  StateVector final_state;
};

GroverRun run_grover(const GroverInstance& inst, std::uint64_t steps, bool record_amplitudes = false);

// Uniformly spaced samples of the continuous Grover state on [from, to] with
// spacing at most max_dphi; endpoints are always included. Throws input_error
// for to < from or max_dphi <= 0.
ProbabilityPath sample_continuous_path(const GroverInstance& inst, double from, double to,
                                       double max_dphi, bool record_amplitudes = false);

}  // namespace qgeo
