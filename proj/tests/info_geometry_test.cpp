#include "qgeo/info_geometry.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include <gtest/gtest.h>

#include "qgeo/errors.hpp"

namespace qgeo {
namespace {

constexpr double kPi = std::numbers::pi;

using ProbFn = std::function<std::vector<double>(double)>;

ProbabilityPath make_path(const ProbFn& f, double from, double to, double h) {
  ProbabilityPath path;
  const auto n = static_cast<std::size_t>(std::llround((to - from) / h));
  for (std::size_t i = 0; i <= n; ++i) {
    const double phi = from + (to - from) * double(i) / double(n);
    path.push_back({phi, f(phi), {}});
  }
  return path;
}

ProbabilityPath grover_path(std::uint64_t n, double from, double to, double h, bool amps = false) {
  return sample_continuous_path(GroverInstance::single_target(n), from, to, h, amps);
}

std::vector<double> two_level(double phi) {
  return {std::sin(phi) * std::sin(phi), std::cos(phi) * std::cos(phi)};
}

// p_i proportional to exp(a_i sin(phi + b_i)), with its exact derivative.
struct Softmax {
  std::vector<double> a{0.7, -1.1, 0.3, 1.9};
  std::vector<double> b{0.0, 1.3, -0.4, 2.2};

  std::vector<double> p(double phi) const {
    std::vector<double> w(a.size());
    double z = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) z += w[i] = std::exp(a[i] * std::sin(phi + b[i]));
    for (auto& v : w) v /= z;
    return w;
  }
  std::vector<double> pdot(double phi) const {
    const auto q = p(phi);
    std::vector<double> g(a.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) mean += q[i] * (g[i] = a[i] * std::cos(phi + b[i]));
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = q[i] * (g[i] - mean);
    return d;
  }
};

TEST(Fisher, GroverPathIsFour) {
  const auto f = fisher_discrete(grover_path(16, 0.0, kPi / 2, 0.01));
  for (const auto& s : f) {
    EXPECT_NEAR(s.fisher, 4.0, 1e-3) << "phi=" << s.phi;
    EXPECT_EQ(s.phase_var, 0.0);
    EXPECT_DOUBLE_EQ(s.induced_ds2_per_dphi2, s.fisher / 4.0);
  }
}

TEST(Fisher, ConstantPathIsZero) {
  const auto f = fisher_discrete(make_path([](double) { return std::vector<double>{0.2, 0.3, 0.5}; }, 0, 1, 0.1));
  for (const auto& s : f) EXPECT_NEAR(s.fisher, 0.0, 1e-15);
}

TEST(Fisher, TwoLevelAtPointThree) {
  const auto path = make_path(two_level, 0.25, 0.35, 0.01);
  const auto f = fisher_discrete(path);
  EXPECT_NEAR(path[5].phi, 0.3, 1e-15);
  EXPECT_NEAR(f[5].fisher, 4.0, 1e-3);
}

TEST(Fisher, RegularizedFormMatchesRateForm) {
  const Softmax m;
  for (double phi = 0.0; phi < 6.0; phi += 0.37) {
    const auto p = m.p(phi);
    const auto pd = m.pdot(phi);
    std::vector<double> xd(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      ASSERT_GT(p[i], 1e-6);
      xd[i] = pd[i] / (2.0 * std::sqrt(p[i]));
    }
    EXPECT_NEAR(fisher_from_amplitude_rates(xd), fisher_from_rates(p, pd), 1e-8);
  }
}

TEST(Fisher, DiscreteConvergesOnGenericPath) {
  const Softmax m;
  double prev_err = 0.0;
  for (double h : {0.02, 0.01, 0.005}) {
    const auto f = fisher_discrete(make_path([&](double t) { return m.p(t); }, 0.0, 2.0, h));
    double err = 0.0;
    for (const auto& s : f) err = std::max(err, std::abs(s.fisher - fisher_from_rates(m.p(s.phi), m.pdot(s.phi))));
    if (prev_err > 0.0) EXPECT_GT(prev_err / err, 3.0);
    prev_err = err;
  }
}

TEST(Fisher, InputValidation) {
  ProbabilityPath two;
  two.push_back({0.0, {1.0, 0.0}, {}});
  two.push_back({0.1, {1.0, 0.0}, {}});
  EXPECT_THROW(fisher_discrete(two), input_error);
  ProbabilityPath backwards;
  for (double phi : {0.0, 0.2, 0.1}) backwards.push_back({phi, two_level(phi), {}});
  EXPECT_THROW(fisher_discrete(backwards), input_error);
  EXPECT_THROW(backwards.push_back({0.3, {1.0}, {}}), invalid_dimension_error);
}

TEST(Unitarity, GroverEight) {
  const auto g = GroverInstance::single_target(8);
  const auto u = unitarity_identity_check(sample_continuous_path(g, g.theta(), kPi / 2, 0.01, true));
  for (const auto& s : u) {
    EXPECT_LT(s.residual, 1e-3);
    EXPECT_LT(s.grover_deviation, 1e-3);
    EXPECT_NEAR(s.velocity_norm2, 1.0, 1e-3);
  }
}

TEST(Unitarity, StationaryPath) {
  ProbabilityPath path;
  const std::vector<amplitude> c{{0.6, 0.0}, {0.0, 0.8}};
  for (int i = 0; i < 5; ++i) path.push_back({0.1 * i, {0.36, 0.64}, c});
  for (const auto& s : unitarity_identity_check(path)) {
    EXPECT_NEAR(s.velocity_norm2, 0.0, 1e-15);
    EXPECT_NEAR(s.fisher, 0.0, 1e-15);
    EXPECT_NEAR(s.residual, 0.0, 1e-15);
  }
}

TEST(Unitarity, InjectedPhaseShowsAsVariance) {
  // N = 4 Grover path with e^{i phi} on the marked component: the phase
  // velocities are (1, 0, 0, 0), so the p-weighted variance is p0 (1 - p0).
  ProbabilityPath path;
  const auto g = GroverInstance::single_target(4);
  for (int i = 0; i <= 100; ++i) {
    const double phi = 0.6 + 0.005 * i;
    const auto s = grover_state_at(g, phi);
    std::vector<amplitude> c(s.amplitudes().begin(), s.amplitudes().end());
    c[0] *= std::polar(1.0, phi);
    std::vector<double> p(4);
    for (std::size_t j = 0; j < 4; ++j) p[j] = std::norm(c[j]);
    path.push_back({phi, p, c});
  }
  const auto u = unitarity_identity_check(path);
  const auto f = fisher_discrete(path);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double p0 = std::pow(std::sin(u[i].phi), 2);
    const double var = p0 * (1.0 - p0);
    EXPECT_GT(u[i].residual, 0.0);
    EXPECT_NEAR(u[i].residual, var, 1e-4) << "phi=" << u[i].phi;
    EXPECT_NEAR(u[i].phase_var, var, 1e-4);
    EXPECT_NEAR(f[i].induced_ds2_per_dphi2, (f[i].fisher + 4.0 * f[i].phase_var) / 4.0, 1e-12);
  }
  EXPECT_THROW(unitarity_identity_check(grover_path(4, 0.1, 0.5, 0.1)), input_error);
}

TEST(FubiniStudy, Examples) {
  const auto u = new_uniform(4);
  EXPECT_NEAR(fubini_study_distance(u, u), 0.0, 1e-7);
  const auto e0 = StateVector::basis(RegisterShape::single(4), 0);
  const auto e1 = StateVector::basis(RegisterShape::single(4), 1);
  EXPECT_DOUBLE_EQ(fubini_study_distance(e0, e1), kPi / 2);
  EXPECT_NEAR(fubini_study_distance(u, e0), kPi / 3, 1e-15);
  EXPECT_NEAR(fubini_study_distance(u, e0), kPi / 2 - kPi / 6, 1e-15);
}

TEST(Action, GroverExamples) {
  const auto path = grover_path(4, kPi / 6, kPi / 2, 0.01);
  const double s = action(path, kPi / 6, kPi / 2);
  EXPECT_NEAR(s, kPi / 3, 1e-3);
  const auto g = GroverInstance::single_target(4);
  EXPECT_NEAR(s, fubini_study_distance(grover_state_at(g, kPi / 6), grover_state_at(g, kPi / 2)), 1e-3);
  EXPECT_EQ(action(path, 0.8, 0.8), 0.0);
  EXPECT_THROW(action(path, 0.1, 0.8), input_error);
  EXPECT_THROW(action(path, 0.9, 0.8), input_error);
}

TEST(Action, SubIntervalsMatchDistance) {
  for (std::uint64_t n : {4u, 16u, 256u}) {
    const auto g = GroverInstance::single_target(n);
    for (double h : {0.01, 0.005}) {
      const auto path = sample_continuous_path(g, g.theta(), kPi / 2, h);
      const auto f = fisher_discrete(path);
      for (double a = g.theta(); a < kPi / 2; a += 0.13)
        for (double b = a; b <= kPi / 2; b += 0.29) {
          const double d = fubini_study_distance(grover_state_at(g, a), grover_state_at(g, b));
          EXPECT_NEAR(action(f, a, b), d, 5 * h * h) << "n=" << n << " [" << a << ", " << b << "]";
        }
    }
  }
}

TEST(Action, GroverActionAcrossQuarterTurn) {
  const auto g = GroverInstance::single_target(16);
  const double to = phi_of_step(g, 3);
  ASSERT_GT(to, kPi / 2);
  EXPECT_NEAR(grover_action(g, g.theta(), to, 0.001), to - g.theta(), 5e-6);
  const auto trace = grover_fisher_trace(g, g.theta(), to, 0.001);
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_GT(trace[i].phi, trace[i - 1].phi);
  for (const auto& s : trace) EXPECT_NEAR(s.fisher, 4.0, 1e-5);
}

TEST(GeodesicResidual, GroverEight) {
  const auto path = grover_path(8, GroverInstance::single_target(8).theta(), kPi / 2, 0.01);
  EXPECT_LT(max_geodesic_residual(path), 1e-2);
  const auto r = geodesic_residual(path, 10);
  EXPECT_EQ(r.index, 10u);
  EXPECT_EQ(r.residual.size(), 8u);
  EXPECT_FALSE(r.fisher_degenerate);
}

TEST(GeodesicResidual, SecondOrderConvergence) {
  const auto g = GroverInstance::single_target(8);
  std::vector<double> worst;
  for (double h : {0.02, 0.01, 0.005})
    worst.push_back(max_geodesic_residual(sample_continuous_path(g, g.theta(), kPi / 2, h)));
  EXPECT_GT(worst[0] / worst[1], 3.0);
  EXPECT_GT(worst[1] / worst[2], 3.0);
}

TEST(GeodesicResidual, StraightLineIsNotGeodesic) {
  // p = (phi, 1 - phi): x = (sqrt(phi), sqrt(1 - phi)), F = 1 / (phi (1 - phi)).
  // The residual vanishes only at the midpoint phi = 1/2.
  const auto path = make_path([](double t) { return std::vector<double>{t, 1.0 - t}; }, 0.2, 0.8, 0.001);
  EXPECT_GT(max_geodesic_residual(path), 0.5);
  for (std::size_t i : {100u, 250u, 450u}) {
    const double t = path[i].phi;
    const double f = 1.0 / (t * (1.0 - t));
    const double fdot = -(1.0 - 2.0 * t) * f * f;
    const double xs[2] = {std::sqrt(t), std::sqrt(1.0 - t)};
    const double xd[2] = {0.5 / xs[0], -0.5 / xs[1]};
    const double xdd[2] = {-0.25 / (t * xs[0]), -0.25 / ((1.0 - t) * xs[1])};
    const auto r = geodesic_residual(path, i);
    for (int j = 0; j < 2; ++j) {
      const double exact = xdd[j] - fdot / f * xd[j] + f / 4.0 * xs[j];
      EXPECT_GT(std::abs(exact), 0.1);
      EXPECT_NEAR(r.residual[j], exact, 1e-4) << "t=" << t << " j=" << j;
    }
  }
}

TEST(GeodesicResidual, HarmonicPath) {
  const std::vector<double> a{0.6, 0.8, 0.0, 0.0};
  const std::vector<double> b{0.0, 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  const auto f = [&](double t) {
    std::vector<double> p(4);
    for (std::size_t i = 0; i < 4; ++i) p[i] = std::pow(a[i] * std::sin(t) + b[i] * std::cos(t), 2);
    return p;
  };
  const auto path = make_path(f, 0.05, 1.5, 0.01);
  EXPECT_LT(max_geodesic_residual(path), 1e-2);
}

TEST(GeodesicResidual, DegenerateFisherFlagged) {
  const auto path = make_path([](double) { return std::vector<double>{0.5, 0.5}; }, 0, 1, 0.1);
  for (const auto& r : geodesic_residuals(path)) {
    EXPECT_TRUE(r.fisher_degenerate);
    EXPECT_TRUE(r.residual.empty());
  }
  EXPECT_EQ(max_geodesic_residual(path), 0.0);
}

TEST(GeodesicResidual, IndexRange) {
  const auto path = grover_path(4, 0.6, 1.0, 0.05);
  EXPECT_THROW(geodesic_residual(path, 1), input_error);
  EXPECT_THROW(geodesic_residual(path, path.size() - 2), input_error);
  EXPECT_NO_THROW(geodesic_residual(path, 2));
  EXPECT_THROW(geodesic_residual(grover_path(4, 0.6, 0.7, 0.05), 2), input_error);
  EXPECT_EQ(geodesic_residuals(path).size(), path.size() - 4);
}

TEST(Integrator, NEqualsFourReachesTarget) {
  GeodesicState s = grover_geodesic_start(GroverInstance::single_target(4));
  EXPECT_NEAR(s.phi, kPi / 6, 1e-15);
  const auto traj = integrate_geodesic(s, 4.0, kPi / 2, 1e-3);
  const auto& end = traj.back();
  EXPECT_DOUBLE_EQ(end.phi, kPi / 2);
  EXPECT_NEAR(end.x[0], 1.0, 1e-8);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(end.x[i], 0.0, 1e-8);
  EXPECT_EQ(traj.front().phi, s.phi);
  for (std::size_t k = 1; k + 1 < traj.size(); ++k) EXPECT_NEAR(traj[k].phi - traj[k - 1].phi, 1e-3, 1e-12);
}

TEST(Integrator, CosineSolution) {
  GeodesicState s{{0.6, 0.8}, {0.0, 0.0}, 0.0};
  for (const auto& st : integrate_geodesic(s, 4.0, 3.0, 1e-3))
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(st.x[i], s.x[i] * std::cos(st.phi), 1e-8);
}

TEST(Integrator, EnergyConserved) {
  GeodesicState s = grover_geodesic_start(GroverInstance::single_target(16));
  s.phi = 0.0;
  const double e0 = harmonic_energy(s, 4.0);
  for (const auto& st : integrate_geodesic(s, 4.0, 2 * kPi, 1e-3))
    EXPECT_NEAR(harmonic_energy(st, 4.0), e0, 1e-8);
}

TEST(Integrator, OtherFrequency) {
  GeodesicState s{{1.0, 0.0}, {0.0, 0.0}, 0.0};
  const auto end = advance_geodesic(s, 9.0, 1.0, 1e-3);
  EXPECT_NEAR(end.x[0], std::cos(1.5), 1e-10);
  EXPECT_DOUBLE_EQ(end.phi, 1.0);
}

TEST(Integrator, MatchesSimulationAtSteps) {
  const auto g = GroverInstance::single_target(64);
  const auto run = run_grover(g, optimal_iterations(g));
  GeodesicState s = grover_geodesic_start(g);
  for (const auto& sample : run.path) {
    s = advance_geodesic(s, 4.0, sample.phi, 1e-4);
    for (std::size_t i = 0; i < 64; ++i) EXPECT_NEAR(s.x[i] * s.x[i], sample.probs[i], 1e-6);
  }
}

TEST(Integrator, RejectsBadInput) {
  const GeodesicState ok{{1.0, 0.0}, {0.0, 1.0}, 0.0};
  EXPECT_THROW(integrate_geodesic(ok, 4.0, 1.0, 0.0), input_error);
  EXPECT_THROW(integrate_geodesic(ok, 4.0, 1.0, -1e-3), input_error);
  EXPECT_THROW(integrate_geodesic(ok, 4.0, NAN, 1e-3), input_error);
  EXPECT_THROW(integrate_geodesic(ok, 0.0, 1.0, 1e-3), input_error);
  EXPECT_THROW(integrate_geodesic(ok, 4.0, -1.0, 1e-3), input_error);
  EXPECT_THROW(integrate_geodesic({{1.0, 1.0}, {0.0, 0.0}, 0.0}, 4.0, 1.0, 1e-3), input_error);
  EXPECT_THROW(integrate_geodesic({{1.0, 0.0}, {1.0, 0.0}, 0.0}, 4.0, 1.0, 1e-3), input_error);
  EXPECT_THROW(integrate_geodesic({{1.0, 0.0}, {0.0}, 0.0}, 4.0, 1.0, 1e-3), input_error);
}

TEST(InputInformation, Examples) {
  const auto path = grover_path(32, 0.0, kPi / 2, 0.01);
  for (double phi0 : {0.0, 0.123, 0.7, 1.5, kPi / 2}) EXPECT_NEAR(input_information(path, phi0), 4.0, 1e-3);
  const auto flat = make_path([](double) { return std::vector<double>{0.1, 0.9}; }, 0, 1, 0.1);
  EXPECT_NEAR(input_information(flat, 0.35), 0.0, 1e-15);
  EXPECT_NEAR(input_information(make_path(two_level, 0.5, 0.9, 0.01), 0.7), 4.0, 1e-3);
  EXPECT_THROW(input_information(flat, 1.5), input_error);
}

TEST(ConstantFisher, DeskScaleInstances) {
  for (std::uint64_t n : {4u, 16u, 256u, 4096u}) {
    const auto g = GroverInstance::single_target(n);
    const double h = 0.01;
    const auto trace = grover_fisher_trace(g, g.theta(), phi_of_step(g, optimal_iterations(g)), h);
    for (const auto& s : trace) EXPECT_NEAR(s.fisher, 4.0, 10 * h * h) << "n=" << n << " phi=" << s.phi;
  }
}

}  // namespace
}  // namespace qgeo
