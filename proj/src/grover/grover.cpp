#include "qgeo/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qgeo/errors.hpp"

namespace qgeo {

GroverInstance::GroverInstance(std::uint64_t n_items, std::vector<std::uint64_t> marked)
    : n_items_(n_items), marked_(std::move(marked)) {
  if (n_items_ < 2) throw input_error("Grover instance needs at least two items");
  if (marked_.empty()) throw input_error("Grover instance needs at least one marked item");
  std::sort(marked_.begin(), marked_.end());
  if (std::adjacent_find(marked_.begin(), marked_.end()) != marked_.end())
    throw input_error("marked indices must be distinct");
  if (marked_.back() >= n_items_)
    throw input_error("marked index " + std::to_string(marked_.back()) + " out of range");
  if (marked_.size() >= n_items_) throw input_error("at least one item must be unmarked");
  mask_.assign(n_items_, 0);
  for (auto i : marked_) mask_[i] = 1;
  theta_ = std::asin(std::sqrt(double(marked_.size()) / double(n_items_)));
}

RecursionState initial_recursion_state(std::uint64_t n_items) {
  if (n_items < 2) throw input_error("recursion needs N >= 2");
  const double c = 1.0 / std::sqrt(double(n_items));
  return {c, c, 0};
}

RecursionState recursion_step(const RecursionState& s, std::uint64_t n_items) {
  if (n_items < 2) throw input_error("recursion needs N >= 2");
  const double n = double(n_items);
  if (std::abs(s.k * s.k + (n - 1.0) * s.l * s.l - 1.0) > kNormTolerance)
    throw input_error("recursion state is not normalized for this N");
  return {(n - 2.0) / n * s.k + 2.0 * (n - 1.0) / n * s.l,
          -2.0 / n * s.k + (n - 2.0) / n * s.l,
          s.step + 1};
}

ProbabilityDistribution analytic_path(const GroverInstance& inst, double phi) {
  if (!(phi >= 0.0 && phi <= std::numbers::pi / 2))
    throw domain_error("analytic_path: phi must lie in [0, pi/2]");
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double on_marked = s * s / double(inst.marked_count());
  const double on_unmarked = c * c / double(inst.n_items() - inst.marked_count());
  std::vector<double> p(inst.n_items());
  for (std::uint64_t i = 0; i < inst.n_items(); ++i) p[i] = inst.is_marked(i) ? on_marked : on_unmarked;
  return ProbabilityDistribution(std::move(p));
}

double fold_angle(double phi) {
  constexpr double pi = std::numbers::pi;
  double r = std::fmod(std::abs(phi), pi);
  return r > pi / 2 ? pi - r : r;
}

StateVector grover_state_at(const GroverInstance& inst, double phi) {
  const double on_marked = std::sin(phi) / std::sqrt(double(inst.marked_count()));
  const double on_unmarked = std::cos(phi) / std::sqrt(double(inst.n_items() - inst.marked_count()));
  std::vector<amplitude> amps(inst.n_items());
  for (std::uint64_t i = 0; i < inst.n_items(); ++i) amps[i] = inst.is_marked(i) ? on_marked : on_unmarked;
  return StateVector::from_amplitudes(std::move(amps));
}

double phi_of_step(const GroverInstance& inst, std::uint64_t step) {
  return double(2 * step + 1) * inst.theta();
}

std::uint64_t optimal_iterations(const GroverInstance& inst) {
  // asin can land an ulp above the exact angle (theta = pi/4 for M/N = 1/2),
  // which would floor an integral ratio down by one.
  return static_cast<std::uint64_t>(std::floor(std::numbers::pi / (4.0 * inst.theta()) + 1e-9));
}

double success_probability(const GroverInstance& inst, std::uint64_t steps) {
  const double s = std::sin(phi_of_step(inst, steps));
  return s * s;
}

double marked_mass(const GroverInstance& inst, std::span<const double> probs) {
  double total = 0.0;
  for (auto i : inst.marked()) total += probs[i];
  return total;
}

StateVector grover_iteration(StateVector state, const GroverInstance& inst) {
  state = phase_flip(std::move(state), [&inst](std::uint64_t i) { return inst.is_marked(i); });
  return invert_about_average(std::move(state));
}

namespace {

PathSample sample_of(const StateVector& state, double phi, bool record_amplitudes) {
  PathSample s;
  s.phi = phi;
  s.probs = probabilities(state).vector();
  if (record_amplitudes) s.amplitudes.assign(state.amplitudes().begin(), state.amplitudes().end());
  return s;
}

}  // namespace

GroverRun run_grover(const GroverInstance& inst, std::uint64_t steps, bool record_amplitudes) {
  StateVector state = new_uniform(inst.n_items());
  ProbabilityPath path;
  path.reserve(steps + 1);
  path.push_back(sample_of(state, phi_of_step(inst, 0), record_amplitudes));
  for (std::uint64_t j = 1; j <= steps; ++j) {
    state = grover_iteration(std::move(state), inst);
    path.push_back(sample_of(state, phi_of_step(inst, j), record_amplitudes));
  }
  return GroverRun{std::move(path), std::move(state)};
}

ProbabilityPath sample_continuous_path(const GroverInstance& inst, double from, double to,
                                       double max_dphi, bool record_amplitudes) {
  if (!(max_dphi > 0.0) || !std::isfinite(max_dphi)) throw input_error("sampling step must be positive");
  if (!(to >= from)) throw input_error("sampling interval is reversed");
  const auto intervals = static_cast<std::size_t>(std::ceil((to - from) / max_dphi - 1e-9));
  ProbabilityPath path;
  path.reserve(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double phi = intervals == 0 ? from
                       : i == intervals ? to
                                        : from + (to - from) * double(i) / double(intervals);
    path.push_back(sample_of(grover_state_at(inst, phi), phi, record_amplitudes));
  }
  return path;
}

}  // namespace qgeo
