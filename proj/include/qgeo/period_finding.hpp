#pragma once

// Period finding for f(a) = y^a mod N, two ways.
//
// Shor: prepare (1/sqrt q) sum_a |a>|f(a)>, measure the second register
// (non-unitary projection onto a comb of spacing r), Fourier transform the
// first register, measure it, and recover r from continued fractions.
//
// Grover loop: mark every a with f(a) = f(1), amplify the marked set with
// floor(pi / (4 theta)) Grover iterations, sin^2 theta = tau / q, sample the
// resulting comb |1 + j r> several times and take gcds of differences. The
// only non-unitary steps are these final samples.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgeo/grover.hpp"
#include "qgeo/rng.hpp"
#include "qgeo/state_vector.hpp"

namespace qgeo {

inline constexpr std::size_t kDefaultMemoryCap = std::size_t{1} << 26;

struct PeriodInstance {
  std::uint64_t modulus = 0;
  std::uint64_t base = 0;
  std::uint64_t register_size = 0;

  // Picks the smallest power-of-two register size in (N^2, 2N^2).
  static PeriodInstance make(std::uint64_t modulus, std::uint64_t base);

  // Throws input_error unless N >= 3 is odd, 1 < y < N, gcd(y, N) = 1 and q
  // is a power of two with N^2 < q < 2N^2.
  void validate() const;

  bool operator==(const PeriodInstance&) const = default;
};

enum class Method { shor, grover_adiabatic };

std::string_view to_string(Method m);
// Accepts "shor" and "grover-adiabatic"; throws input_error otherwise.
Method parse_method(std::string_view token);

struct PeriodResult {
  Method method = Method::shor;
  bool success = false;
  // Verified minimal period; 0 when !success.
  std::uint64_t period = 0;
  // Shor: attempts. Grover loop: sampling rounds.
  std::uint64_t attempts = 0;
  // Shor: one modular-exponentiation oracle per register preparation.
  // Grover loop: one marking oracle per Grover iteration.
  std::uint64_t oracle_calls = 0;
  // Projective measurements performed; every one is a non-unitary step.
  std::uint64_t measurements = 0;

  bool operator==(const PeriodResult&) const = default;
};

struct PeriodOptions {
  std::size_t memory_cap = kDefaultMemoryCap;
  // Shor attempts or Grover sampling rounds.
  std::uint64_t max_attempts = 64;
  // Measurements of the amplified comb per Grover round (>= 2).
  std::uint64_t samples = 3;
};

// (1/sqrt q) sum_a |a>|y^a mod N>, pair-shaped q x N. Throws resource_error
// when q*N exceeds memory_cap.
StateVector build_register(const PeriodInstance& inst, std::size_t memory_cap = kDefaultMemoryCap);

struct ShorProjection {
  std::uint64_t value = 0;  // measured f(a) = l
  StateVector collapsed;
};

// Measures the second register of a build_register state.
ShorProjection shor_project(const StateVector& state, Rng& rng);

struct ShorAttempt {
  std::uint64_t projected_value = 0;  // l
  std::uint64_t fourier_outcome = 0;  // c
  std::uint64_t denominator = 0;      // 0 when c/q yields none
  // Fubini-Study distance between the prepared register and the projected
  // comb: the size of the non-unitary jump.
  double projection_distance = 0.0;
};

// One prepare / project / transform / measure round.
ShorAttempt shor_attempt(const PeriodInstance& inst, Rng& rng, std::size_t memory_cap = kDefaultMemoryCap);

// Repeats shor_attempt until a denominator (or the lcm with the previous
// attempt's) verifies as a multiple of the order, then minimizes it.
PeriodResult shor_period(const PeriodInstance& inst, Rng& rng, const PeriodOptions& options = {});

// a -> [y^a mod N == y mod N] over a in [0, q).
IndexPredicate period_oracle_predicate(const PeriodInstance& inst);

// The Grover search instance over the first register with the marked set of
// period_oracle_predicate (tau = its enumerated size).
GroverInstance period_grover_instance(const PeriodInstance& inst);

// gcd of sample differences, verified and minimized; nullopt if the gcd is 0
// or y^gcd != 1.
std::optional<std::uint64_t> period_from_samples(std::span<const std::uint64_t> samples,
                                                 std::uint64_t base, std::uint64_t modulus);

// Draws options.samples measurements of the amplified state (rebuilt from
// the uniform register each time) per round, up to options.max_attempts
// rounds.
PeriodResult grover_period(const PeriodInstance& inst, Rng& rng, const PeriodOptions& options = {});

PeriodResult find_period(Method method, const PeriodInstance& inst, Rng& rng,
                         const PeriodOptions& options = {});

enum class FactorStatus { factored, not_applicable, budget_exhausted };

struct FactorBudget {
  // Random bases tried before giving up.
  std::uint64_t max_bases = 16;
  PeriodOptions period;
};

struct FactorOutcome {
  FactorStatus status = FactorStatus::budget_exhausted;
  // Factor pair with first <= second and first * second = N; zero when none.
  std::uint64_t first = 0;
  std::uint64_t second = 0;
  // True when the factor came from a classical check (gcd hit, even N,
  // prime power).
  bool classical = false;
  std::string note;
  std::vector<std::uint64_t> bases;
  std::uint64_t oracle_calls = 0;
  std::uint64_t measurements = 0;
};

// Reduction of factoring to period finding. N < 3, even N, primes and prime
// powers return not_applicable, with the classically found factor where one
// exists.
FactorOutcome factor(std::uint64_t n, Method method, Rng& rng, const FactorBudget& budget = {});

}  // namespace qgeo
