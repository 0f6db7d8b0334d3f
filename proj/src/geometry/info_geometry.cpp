#include "qgeo/info_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qgeo/errors.hpp"
#include "qgeo/finite_difference.hpp"

namespace qgeo {

namespace {

std::vector<double> grid_of(const ProbabilityPath& path) {
  std::vector<double> grid(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) grid[i] = path[i].phi;
  return grid;
}

std::vector<double> root_probs(const std::vector<double>& probs) {
  std::vector<double> x(probs.size());
  for (std::size_t j = 0; j < probs.size(); ++j) x[j] = std::sqrt(std::max(probs[j], 0.0));
  return x;
}

using Table = std::vector<std::vector<double>>;

Table amplitude_table(const ProbabilityPath& path) {
  Table x;
  x.reserve(path.size());
  for (const auto& s : path) x.push_back(root_probs(s.probs));
  return x;
}

std::vector<double> derivative_row(const Table& x, const Stencil& st) {
  const auto& a = x[st.first];
  const auto& b = x[st.first + 1];
  const auto& c = x[st.first + 2];
  std::vector<double> d(a.size());
  for (std::size_t j = 0; j < d.size(); ++j)
    d[j] = st.weights[0] * a[j] + st.weights[1] * b[j] + st.weights[2] * c[j];
  return d;
}

double fisher_at(const Table& x, std::span<const double> grid, std::size_t i) {
  return fisher_from_amplitude_rates(derivative_row(x, first_derivative_stencil(grid, i)));
}

std::vector<amplitude> complex_derivative(const ProbabilityPath& path, const Stencil& st) {
  const auto& a = path[st.first].amplitudes;
  const auto& b = path[st.first + 1].amplitudes;
  const auto& c = path[st.first + 2].amplitudes;
  std::vector<amplitude> d(a.size());
  for (std::size_t j = 0; j < d.size(); ++j)
    d[j] = st.weights[0] * a[j] + st.weights[1] * b[j] + st.weights[2] * c[j];
  return d;
}

// Variance of the phase velocities, weighted by p_j. The phase velocity is
// taken as Im(conj(c) c') / |c|^2, which equals d arg(c)/dphi without
// needing an unwrapped phase, and is exactly zero for real amplitudes.
double phase_variance(std::span<const amplitude> c, std::span<const amplitude> dc) {
  double weighted_sq = 0.0;
  double weighted = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double p = std::norm(c[j]);
    if (p <= 1e-300) continue;
    const double w = (std::conj(c[j]) * dc[j]).imag();  // p_j * phase velocity
    weighted_sq += w * w / p;
    weighted += w;
  }
  return std::max(0.0, weighted_sq - weighted * weighted);
}

void require_samples(const ProbabilityPath& path, std::size_t minimum) {
  if (path.size() < minimum)
    throw input_error("path needs at least " + std::to_string(minimum) + " samples, got " +
                      std::to_string(path.size()));
  path.require_increasing();
}

GeodesicResidual residual_from(std::span<const double> grid, const Table& x,
                               std::span<const double> fisher, std::size_t i) {
  GeodesicResidual out;
  out.index = i;
  out.phi = grid[i];
  const double f = fisher[i];
  if (!(f >= kFisherFloor)) {
    out.fisher_degenerate = true;
    return out;
  }
  const Stencil d1 = first_derivative_stencil(grid, i);
  const Stencil d2 = second_derivative_stencil(grid, i);
  const double fdot = d1.apply(fisher);
  const auto xdot = derivative_row(x, d1);
  const auto xddot = derivative_row(x, d2);
  out.residual.resize(xdot.size());
  for (std::size_t j = 0; j < xdot.size(); ++j) {
    out.residual[j] = xddot[j] - (fdot / f) * xdot[j] + 0.25 * f * x[i][j];
    out.max_abs = std::max(out.max_abs, std::abs(out.residual[j]));
  }
  return out;
}

void check_integration_inputs(const GeodesicState& init, double fisher_const, double phi_end,
                              double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw input_error("integration step must be positive and finite");
  if (!(fisher_const > 0.0) || !std::isfinite(fisher_const))
    throw input_error("Fisher constant must be positive and finite");
  if (!std::isfinite(phi_end) || !std::isfinite(init.phi) || phi_end < init.phi)
    throw input_error("integration interval must be finite and forward");
  if (init.x.empty() || init.x.size() != init.xdot.size())
    throw input_error("geodesic state needs matching non-empty x and xdot");
  double norm = 0.0, radial = 0.0;
  for (std::size_t j = 0; j < init.x.size(); ++j) {
    if (!std::isfinite(init.x[j]) || !std::isfinite(init.xdot[j]))
      throw input_error("geodesic state has non-finite entries");
    norm += init.x[j] * init.x[j];
    radial += init.x[j] * init.xdot[j];
  }
  if (std::abs(norm - 1.0) > 1e-9) throw input_error("geodesic state violates sum x^2 = 1");
  if (std::abs(radial) > 1e-9) throw input_error("geodesic state violates sum x xdot = 0");
}

void rk4_step(GeodesicState& s, double omega2, double h) {
  for (std::size_t j = 0; j < s.x.size(); ++j) {
    const double x = s.x[j];
    const double v = s.xdot[j];
    const double k1x = v, k1v = -omega2 * x;
    const double k2x = v + 0.5 * h * k1v, k2v = -omega2 * (x + 0.5 * h * k1x);
    const double k3x = v + 0.5 * h * k2v, k3v = -omega2 * (x + 0.5 * h * k2x);
    const double k4x = v + h * k3v, k4v = -omega2 * (x + h * k3x);
    s.x[j] = x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    s.xdot[j] = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  s.phi += h;
}

}  // namespace

double fisher_from_rates(std::span<const double> probs, std::span<const double> prob_rates) {
  if (probs.size() != prob_rates.size()) throw invalid_dimension_error("fisher_from_rates: size mismatch");
  double total = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j)
    if (probs[j] > 0.0) total += prob_rates[j] * prob_rates[j] / probs[j];
  return total;
}

double fisher_from_amplitude_rates(std::span<const double> amplitude_rates) {
  double total = 0.0;
  for (double d : amplitude_rates) total += d * d;
  return 4.0 * total;
}

std::vector<FisherSample> fisher_discrete(const ProbabilityPath& path) {
  require_samples(path, 3);
  const auto grid = grid_of(path);
  const auto x = amplitude_table(path);
  std::vector<FisherSample> out(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    auto& s = out[i];
    s.phi = grid[i];
    s.fisher = fisher_at(x, grid, i);
    if (path.has_amplitudes()) {
      const auto dc = complex_derivative(path, first_derivative_stencil(grid, i));
      s.phase_var = phase_variance(path[i].amplitudes, dc);
    }
    s.induced_ds2_per_dphi2 = (s.fisher + 4.0 * s.phase_var) / 4.0;
  }
  return out;
}

std::vector<UnitaritySample> unitarity_identity_check(const ProbabilityPath& path) {
  require_samples(path, 3);
  if (!path.has_amplitudes()) throw input_error("unitarity check needs recorded amplitudes");
  const auto grid = grid_of(path);
  const auto fisher = fisher_discrete(path);
  std::vector<UnitaritySample> out(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& c = path[i].amplitudes;
    const auto dc = complex_derivative(path, first_derivative_stencil(grid, i));
    double speed = 0.0;
    amplitude overlap{0.0, 0.0};
    for (std::size_t j = 0; j < c.size(); ++j) {
      speed += std::norm(dc[j]);
      overlap += std::conj(c[j]) * dc[j];
    }
    auto& u = out[i];
    u.phi = grid[i];
    u.velocity_norm2 = speed - std::norm(overlap);
    u.fisher = fisher[i].fisher;
    u.phase_var = fisher[i].phase_var;
    u.residual = std::abs(u.velocity_norm2 - u.fisher / 4.0);
    u.grover_deviation = std::abs(u.fisher / 4.0 - 1.0);
  }
  return out;
}

double fubini_study_distance(const StateVector& a, const StateVector& b) {
  const double overlap = std::abs(inner_product(a, b));
  return std::acos(std::clamp(overlap, 0.0, 1.0));
}

double action(std::span<const FisherSample> fisher, double from, double to) {
  if (fisher.empty()) throw input_error("action needs a non-empty Fisher trace");
  constexpr double slack = 1e-12;
  if (!(from <= to)) throw input_error("action interval is reversed");
  if (from < fisher.front().phi - slack || to > fisher.back().phi + slack)
    throw input_error("action interval leaves the sampled range");
  if (from == to) return 0.0;

  auto lagrangian = [](const FisherSample& s) { return 0.5 * std::sqrt(std::max(s.fisher, 0.0)); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < fisher.size(); ++i) {
    const double t0 = fisher[i].phi, t1 = fisher[i + 1].phi;
    const double a = std::max(from, t0), b = std::min(to, t1);
    if (!(b > a)) continue;
    const double g0 = lagrangian(fisher[i]), g1 = lagrangian(fisher[i + 1]);
    auto at = [&](double t) { return g0 + (g1 - g0) * (t - t0) / (t1 - t0); };
    total += 0.5 * (at(a) + at(b)) * (b - a);
  }
  return total;
}

double action(const ProbabilityPath& path, double from, double to) {
  const auto fisher = fisher_discrete(path);
  return action(fisher, from, to);
}

std::vector<GeodesicResidual> geodesic_residuals(const ProbabilityPath& path) {
  require_samples(path, 5);
  const auto grid = grid_of(path);
  const auto x = amplitude_table(path);
  std::vector<double> fisher(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) fisher[i] = fisher_at(x, grid, i);
  std::vector<GeodesicResidual> out;
  out.reserve(path.size() - 4);
  for (std::size_t i = 2; i + 2 < path.size(); ++i) out.push_back(residual_from(grid, x, fisher, i));
  return out;
}

GeodesicResidual geodesic_residual(const ProbabilityPath& path, std::size_t index) {
  require_samples(path, 5);
  if (index < 2 || index + 2 >= path.size())
    throw input_error("geodesic residual index must lie in [2, size - 3]");
  ProbabilityPath window;
  for (std::size_t i = index - 2; i <= index + 2; ++i) window.push_back({path[i].phi, path[i].probs, {}});
  const auto grid = grid_of(window);
  const auto x = amplitude_table(window);
  std::vector<double> fisher(5, 0.0);
  for (std::size_t i = 1; i <= 3; ++i) fisher[i] = fisher_at(x, grid, i);
  auto r = residual_from(grid, x, fisher, 2);
  r.index = index;
  return r;
}

double max_geodesic_residual(const ProbabilityPath& path) {
  double worst = 0.0;
  for (const auto& r : geodesic_residuals(path))
    if (!r.fisher_degenerate) worst = std::max(worst, r.max_abs);
  return worst;
}

std::vector<GeodesicState> integrate_geodesic(const GeodesicState& init, double fisher_const,
                                              double phi_end, double dt) {
  check_integration_inputs(init, fisher_const, phi_end, dt);
  const double omega2 = fisher_const / 4.0;
  std::vector<GeodesicState> out{init};
  GeodesicState s = init;
  const double start = init.phi;
  const auto full_steps = static_cast<std::size_t>(std::floor((phi_end - start) / dt + 1e-9));
  for (std::size_t k = 1; k <= full_steps; ++k) {
    const double target = std::min(start + double(k) * dt, phi_end);
    rk4_step(s, omega2, target - s.phi);
    s.phi = target;
    out.push_back(s);
  }
  if (phi_end > s.phi) {
    rk4_step(s, omega2, phi_end - s.phi);
    s.phi = phi_end;
    out.push_back(s);
  }
  return out;
}

GeodesicState advance_geodesic(const GeodesicState& init, double fisher_const, double phi_end,
                               double max_dt) {
  check_integration_inputs(init, fisher_const, phi_end, max_dt);
  const double span = phi_end - init.phi;
  const auto steps = static_cast<std::size_t>(std::ceil(span / max_dt - 1e-9));
  GeodesicState s = init;
  if (steps == 0) return s;
  const double h = span / double(steps);
  const double omega2 = fisher_const / 4.0;
  for (std::size_t k = 0; k < steps; ++k) rk4_step(s, omega2, h);
  s.phi = phi_end;
  return s;
}

double harmonic_energy(const GeodesicState& s, double fisher_const) {
  const double omega2 = fisher_const / 4.0;
  double e = 0.0;
  for (std::size_t j = 0; j < s.x.size(); ++j) e += s.xdot[j] * s.xdot[j] + omega2 * s.x[j] * s.x[j];
  return e;
}

double input_information(const ProbabilityPath& path, double phi0) {
  const auto fisher = fisher_discrete(path);
  constexpr double slack = 1e-12;
  if (phi0 < fisher.front().phi - slack || phi0 > fisher.back().phi + slack)
    throw input_error("phi0 lies outside the sampled path");
  auto it = std::lower_bound(fisher.begin(), fisher.end(), phi0,
                             [](const FisherSample& s, double v) { return s.phi < v; });
  if (it == fisher.begin()) return fisher.front().fisher;
  if (it == fisher.end()) return fisher.back().fisher;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (phi0 - lo.phi) / (hi.phi - lo.phi);
  return lo.fisher + w * (hi.fisher - lo.fisher);
}

GeodesicState grover_geodesic_start(const GroverInstance& inst) {
  const double theta = inst.theta();
  const double m = double(inst.marked_count());
  const double rest = double(inst.n_items()) - m;
  GeodesicState s;
  s.phi = theta;
  s.x.assign(inst.n_items(), 1.0 / std::sqrt(double(inst.n_items())));
  s.xdot.resize(inst.n_items());
  for (std::uint64_t i = 0; i < inst.n_items(); ++i)
    s.xdot[i] = inst.is_marked(i) ? std::cos(theta) / std::sqrt(m) : -std::sin(theta) / std::sqrt(rest);
  return s;
}

namespace {

// [from, to] cut at interior multiples of pi/2; pieces shorter than 1e-12
// are dropped.
std::vector<std::pair<double, double>> fold_pieces(double from, double to) {
  if (!(to >= from)) throw input_error("interval is reversed");
  constexpr double quarter = std::numbers::pi / 2;
  std::vector<std::pair<double, double>> pieces;
  double start = from;
  for (double cut = (std::floor(from / quarter) + 1.0) * quarter; cut < to; cut += quarter) {
    if (cut - start > 1e-12) pieces.emplace_back(start, cut);
    start = cut;
  }
  if (to - start > 1e-12 || pieces.empty()) pieces.emplace_back(start, to);
  return pieces;
}

ProbabilityPath piece_path(const GroverInstance& inst, double from, double to, double max_dphi) {
  // At least two intervals so each piece supports three-point differences.
  return sample_continuous_path(inst, from, to, std::min(max_dphi, (to - from) / 2.0));
}

}  // namespace

std::vector<FisherSample> grover_fisher_trace(const GroverInstance& inst, double from, double to,
                                              double max_dphi) {
  if (!(to > from)) throw input_error("Fisher trace needs a non-empty interval");
  std::vector<FisherSample> trace;
  for (const auto& [a, b] : fold_pieces(from, to)) {
    const auto piece = fisher_discrete(piece_path(inst, a, b, max_dphi));
    trace.insert(trace.end(), piece.begin() + (trace.empty() ? 0 : 1), piece.end());
  }
  return trace;
}

double grover_action(const GroverInstance& inst, double from, double to, double max_dphi) {
  if (to == from) return 0.0;
  double total = 0.0;
  for (const auto& [a, b] : fold_pieces(from, to)) total += action(piece_path(inst, a, b, max_dphi), a, b);
  return total;
}

}  // namespace qgeo
