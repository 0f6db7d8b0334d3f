#pragma once

// Path-wise information geometry: the Fisher function of a one-parameter
// family of distributions, the Fubini-Study line element it induces, the
// action S = 1/2 * integral sqrt(F) dphi, and the geodesic equations
//
//   x_i'' - (F'/F) x_i' + (F/4) x_i = 0,      x_i = sqrt(p_i),
//
// which reduce to a harmonic oscillator with omega^2 = F/4 when F is constant.
//
// Derivatives along a path are second-order finite differences taken on the
// amplitudes x = sqrt(p) rather than on p, so F = 4 sum x_i'^2 stays finite
// where some p_i vanish.

#include <cstddef>
#include <span>
#include <vector>

#include "qgeo/grover.hpp"
#include "qgeo/probability_path.hpp"
#include "qgeo/state_vector.hpp"

namespace qgeo {

struct FisherSample {
  double phi = 0.0;
  double fisher = 0.0;
  // p-weighted variance of the phase velocities; 0 for paths without
  // recorded amplitudes.
  double phase_var = 0.0;
  // (fisher + 4 phase_var) / 4.
  double induced_ds2_per_dphi2 = 0.0;
};

// Requires >= 3 samples with strictly increasing phi (input_error otherwise).
std::vector<FisherSample> fisher_discrete(const ProbabilityPath& path);

// sum pdot_i^2 / p_i over entries with p_i > 0.
double fisher_from_rates(std::span<const double> probs, std::span<const double> prob_rates);

// 4 sum xdot_i^2 for amplitudes x_i = sqrt(p_i).
double fisher_from_amplitude_rates(std::span<const double> amplitude_rates);

struct UnitaritySample {
  double phi = 0.0;
  // Projective velocity <psi'|psi'> - |<psi|psi'>|^2.
  double velocity_norm2 = 0.0;
  double fisher = 0.0;
  double phase_var = 0.0;
  // |velocity_norm2 - fisher/4|; equals phase_var up to discretization.
  double residual = 0.0;
  // |fisher/4 - 1|, the deviation from the unit-speed Grover value.
  double grover_deviation = 0.0;
};

// Requires recorded amplitudes (input_error otherwise).
std::vector<UnitaritySample> unitarity_identity_check(const ProbabilityPath& path);

// arccos |<a|b>|, in [0, pi/2].
double fubini_study_distance(const StateVector& a, const StateVector& b);

// Trapezoidal 1/2 * integral sqrt(F) dphi over [from, to] (both inside the
// path's range; F is linearly interpolated at interval ends between samples).
double action(const ProbabilityPath& path, double from, double to);
double action(std::span<const FisherSample> fisher, double from, double to);

struct GeodesicResidual {
  std::size_t index = 0;
  double phi = 0.0;
  // Left side of the equation of motion, one entry per coordinate; empty
  // when fisher_degenerate.
  std::vector<double> residual;
  double max_abs = 0.0;
  // F < kFisherFloor at this sample, where F'/F is undefined.
  bool fisher_degenerate = false;
};

inline constexpr double kFisherFloor = 1e-12;

// Residual at one sample. The stencil is central throughout, so index must
// lie in [2, size - 3]; the path needs at least five samples.
GeodesicResidual geodesic_residual(const ProbabilityPath& path, std::size_t index);

// Residuals at every admissible index, in index order.
std::vector<GeodesicResidual> geodesic_residuals(const ProbabilityPath& path);

// Largest |residual| over non-degenerate samples.
double max_geodesic_residual(const ProbabilityPath& path);

struct GeodesicState {
  std::vector<double> x;
  std::vector<double> xdot;
  double phi = 0.0;
};

// Classic RK4 for x'' = -(F/4) x with fixed step dt; the final step is
// shortened to land on phi_end. Returns every state including the initial
// one. Requires sum x^2 = 1 and sum x xdot = 0 (within 1e-9), dt > 0,
// fisher_const > 0, phi_end >= init.phi and finite inputs.
std::vector<GeodesicState> integrate_geodesic(const GeodesicState& init, double fisher_const,
                                              double phi_end, double dt);

// Same integration, keeping only the final state (uniform steps <= max_dt).
GeodesicState advance_geodesic(const GeodesicState& init, double fisher_const, double phi_end,
                               double max_dt);

// sum (xdot^2 + omega^2 x^2), omega^2 = F/4.
double harmonic_energy(const GeodesicState& s, double fisher_const);

// F at phi0, linearly interpolated from fisher_discrete.
double input_information(const ProbabilityPath& path, double phi0);

// Geodesic data of the uniform state on the continuous Grover path:
// x = 1/sqrt(N), xdot = (cos theta / sqrt(M), -sin theta / sqrt(N - M)).
GeodesicState grover_geodesic_start(const GroverInstance& inst);

// Fisher trace of the continuous Grover path over [from, to] at spacing
// <= max_dphi. Past pi/2 the probabilities retrace the path, and sqrt(p) has a
// kink wherever sin or cos crosses zero, so the interval is split at
// multiples of pi/2 and each piece is differenced on its own. The sample at
// a split point is the one-sided value from the earlier piece.
std::vector<FisherSample> grover_fisher_trace(const GroverInstance& inst, double from, double to,
                                              double max_dphi);

// Action over [from, to] along the continuous Grover path, summed over the
// same pieces.
double grover_action(const GroverInstance& inst, double from, double to, double max_dphi);

}  // namespace qgeo
