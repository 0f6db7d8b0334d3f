#include "qgeo/grover.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qgeo/errors.hpp"

namespace qgeo {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(GroverInstance, Validation) {
  EXPECT_THROW(GroverInstance(1, {0}), input_error);
  EXPECT_THROW(GroverInstance(4, {}), input_error);
  EXPECT_THROW(GroverInstance(4, {0, 1, 2, 3}), input_error);
  EXPECT_THROW(GroverInstance(4, {4}), input_error);
  EXPECT_THROW(GroverInstance(4, {1, 1}), input_error);
  const GroverInstance g(16, {5, 2, 9});
  EXPECT_EQ(g.marked(), (std::vector<std::uint64_t>{2, 5, 9}));
  EXPECT_NEAR(std::sin(g.theta()) * std::sin(g.theta()), 3.0 / 16.0, 1e-12);
  EXPECT_TRUE(g.is_marked(9));
  EXPECT_FALSE(g.is_marked(3));
}

TEST(Recursion, NEquals4) {
  const auto s = recursion_step(initial_recursion_state(4), 4);
  EXPECT_NEAR(s.k, 1.0, 1e-15);
  EXPECT_NEAR(s.l, 0.0, 1e-15);
  EXPECT_EQ(s.step, 1u);
}

TEST(Recursion, NEquals2) {
  const auto s = recursion_step(initial_recursion_state(2), 2);
  EXPECT_NEAR(s.k, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.l, -1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Recursion, NormalizationOverHundredSteps) {
  for (std::uint64_t n : {3u, 7u, 64u, 1000u, 1u << 20}) {
    auto s = initial_recursion_state(n);
    for (int j = 0; j < 100; ++j) {
      s = recursion_step(s, n);
      EXPECT_NEAR(s.k * s.k + double(n - 1) * s.l * s.l, 1.0, 1e-12) << "n=" << n << " j=" << j;
    }
  }
}

TEST(Recursion, MatchesClosedForm) {
  for (std::uint64_t n : {5u, 64u, 999u}) {
    const double theta = std::asin(1.0 / std::sqrt(double(n)));
    auto s = initial_recursion_state(n);
    for (int j = 1; j <= 40; ++j) {
      s = recursion_step(s, n);
      EXPECT_NEAR(s.k, std::sin((2 * j + 1) * theta), 1e-12);
    }
  }
}

TEST(AnalyticPath, Examples) {
  const auto g = GroverInstance::single_target(10);
  const auto start = analytic_path(g, 0.0);
  EXPECT_EQ(start[0], 0.0);
  for (std::size_t i = 1; i < 10; ++i) EXPECT_NEAR(start[i], 1.0 / 9.0, 1e-15);

  const auto end = analytic_path(g, kPi / 2);
  EXPECT_NEAR(end[0], 1.0, 1e-15);
  for (std::size_t i = 1; i < 10; ++i) EXPECT_NEAR(end[i], 0.0, 1e-15);

  const auto four = analytic_path(GroverInstance::single_target(4), kPi / 6);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(four[i], 0.25, 1e-15);
}

TEST(AnalyticPath, MultiMarkedSharesMass) {
  const GroverInstance g(12, {1, 4, 7});
  const auto p = analytic_path(g, 0.4);
  const double s2 = std::sin(0.4) * std::sin(0.4);
  for (std::size_t i = 0; i < 12; ++i)
    EXPECT_NEAR(p[i], g.is_marked(i) ? s2 / 3.0 : (1.0 - s2) / 9.0, 1e-15);
}

TEST(AnalyticPath, DomainChecked) {
  const auto g = GroverInstance::single_target(4);
  EXPECT_THROW(analytic_path(g, -0.1), domain_error);
  EXPECT_THROW(analytic_path(g, 1.6), domain_error);
}

TEST(FoldAngle, PreservesSinSquared) {
  for (double phi = -7.0; phi < 7.0; phi += 0.173) {
    const double f = fold_angle(phi);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, kPi / 2);
    EXPECT_NEAR(std::sin(f) * std::sin(f), std::sin(phi) * std::sin(phi), 1e-12);
  }
}

TEST(PhiOfStep, Examples) {
  const auto four = GroverInstance::single_target(4);
  EXPECT_NEAR(phi_of_step(four, 0), kPi / 6, 1e-15);
  EXPECT_NEAR(phi_of_step(four, 1), kPi / 2, 1e-15);
  EXPECT_DOUBLE_EQ(phi_of_step(GroverInstance::single_target(100), 0), std::asin(0.1));
}

TEST(OptimalIterations, Examples) {
  EXPECT_EQ(optimal_iterations(GroverInstance::single_target(4)), 1u);
  EXPECT_EQ(optimal_iterations(GroverInstance::single_target(1u << 20)), 804u);
  std::vector<std::uint64_t> marked;
  for (std::uint64_t a = 1; a < 256; a += 4) marked.push_back(a);
  const GroverInstance comb(256, marked);
  EXPECT_NEAR(comb.theta(), kPi / 6, 1e-15);
  EXPECT_EQ(optimal_iterations(comb), 1u);
  std::vector<std::uint64_t> half;
  for (std::uint64_t a = 1; a < 256; a += 2) half.push_back(a);
  EXPECT_EQ(optimal_iterations(GroverInstance(256, half)), 1u);
}

TEST(OptimalIterations, SuccessBound) {
  for (std::uint64_t n = 2; n <= 300; ++n) {
    for (std::uint64_t m = 1; m < n; m += 1 + n / 7) {
      std::vector<std::uint64_t> marked(m);
      for (std::uint64_t i = 0; i < m; ++i) marked[i] = i;
      const GroverInstance g(n, marked);
      EXPECT_GE(success_probability(g, optimal_iterations(g)), 1.0 - double(m) / double(n) - 1e-12)
          << "n=" << n << " m=" << m;
    }
  }
}

TEST(RunGrover, Examples) {
  const auto four = run_grover(GroverInstance::single_target(4), 1);
  EXPECT_NEAR(four.path.back().probs[0], 1.0, 1e-15);

  const auto big = GroverInstance::single_target(1024);
  const auto r = run_grover(big, 25);
  const double expected = std::pow(std::sin(51.0 * std::asin(1.0 / 32.0)), 2);
  EXPECT_NEAR(r.path.back().probs[0], expected, 1e-10);
  EXPECT_NEAR(expected, 0.99945, 2e-5);  // 0.9994612...

  const auto none = run_grover(GroverInstance::single_target(8), 0);
  ASSERT_EQ(none.path.size(), 1u);
  for (double p : none.path.front().probs) EXPECT_NEAR(p, 0.125, 1e-15);
}

TEST(RunGrover, PathLayout) {
  const auto g = GroverInstance::single_target(32);
  const auto plain = run_grover(g, 4);
  EXPECT_EQ(plain.path.size(), 5u);
  EXPECT_FALSE(plain.path.has_amplitudes());
  const auto rec = run_grover(g, 4, true);
  EXPECT_TRUE(rec.path.has_amplitudes());
  for (std::uint64_t j = 0; j <= 4; ++j) EXPECT_DOUBLE_EQ(rec.path[j].phi, phi_of_step(g, j));
}

TEST(RunGrover, MatchesRecursionUpToThreeTimesOptimal) {
  for (std::uint64_t n : {4u, 17u, 256u, 1u << 14}) {
    const auto g = GroverInstance::single_target(n);
    const std::uint64_t steps = 3 * optimal_iterations(g);
    const auto run = run_grover(g, steps);
    auto s = initial_recursion_state(n);
    for (std::uint64_t j = 0; j <= steps; ++j) {
      EXPECT_NEAR(run.path[j].probs[0], s.k * s.k, 1e-10) << "n=" << n << " j=" << j;
      s = recursion_step(s, n);
    }
  }
}

TEST(RunGrover, MatchesAnalyticPathAtPhiJ) {
  const GroverInstance g(200, {3, 50, 51, 199});
  const auto run = run_grover(g, 3 * optimal_iterations(g));
  for (const auto& s : run.path) {
    const auto p = analytic_path(g, fold_angle(s.phi));
    for (std::size_t i = 0; i < s.probs.size(); ++i) EXPECT_NEAR(s.probs[i], p[i], 1e-10);
  }
}

TEST(RunGrover, ClassUniformityAndRealAmplitudes) {
  const GroverInstance g(97, {0, 10, 20, 30, 40});
  const auto run = run_grover(g, 10, true);
  for (const auto& s : run.path) {
    const auto& c = s.amplitudes;
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_LT(std::abs(c[i].imag()), 1e-14);
      const std::size_t ref = g.is_marked(i) ? 0 : 1;
      EXPECT_NEAR(std::abs(c[i] - c[ref]), 0.0, 1e-12);
    }
  }
}

TEST(RunGrover, MarkedMassClosedForm) {
  const GroverInstance g(1000, {1, 2, 3, 500, 999, 7, 13});
  for (std::uint64_t steps : {0u, 1u, 5u, 9u, 20u}) {
    const auto r = run_grover(g, steps);
    EXPECT_NEAR(marked_mass(g, r.path.back().probs), success_probability(g, steps), 1e-10);
    EXPECT_NEAR(r.final_state.norm_squared(), 1.0, 1e-12);
  }
}

TEST(ContinuousPath, SpacingAndEndpoints) {
  const auto g = GroverInstance::single_target(16);
  const auto p = sample_continuous_path(g, 0.2, 1.0, 0.03);
  EXPECT_DOUBLE_EQ(p.front().phi, 0.2);
  EXPECT_DOUBLE_EQ(p.back().phi, 1.0);
  for (std::size_t i = 1; i < p.size(); ++i) EXPECT_LE(p[i].phi - p[i - 1].phi, 0.03 + 1e-15);
  EXPECT_THROW(sample_continuous_path(g, 1.0, 0.2, 0.03), input_error);
  EXPECT_THROW(sample_continuous_path(g, 0.2, 1.0, 0.0), input_error);
}

TEST(ContinuousPath, StateAgreesWithSimulationPastQuarterTurn) {
  const auto g = GroverInstance::single_target(64);
  const auto run = run_grover(g, 12, true);
  for (const auto& s : run.path) {
    const auto c = grover_state_at(g, s.phi);
    for (std::size_t i = 0; i < 64; ++i) EXPECT_NEAR(std::abs(c[i] - s.amplitudes[i]), 0.0, 1e-10);
  }
}

}  // namespace
}  // namespace qgeo
