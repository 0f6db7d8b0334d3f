#include "qgeo/period_finding.hpp"

#include <cmath>
#include <numeric>

#include "qgeo/errors.hpp"
#include "qgeo/info_geometry.hpp"
#include "qgeo/number_theory.hpp"

namespace qgeo {

PeriodInstance PeriodInstance::make(std::uint64_t modulus, std::uint64_t base) {
  if (modulus < 3) throw input_error("modulus must be >= 3");
  PeriodInstance inst{modulus, base, register_size_for(modulus)};
  inst.validate();
  return inst;
}

void PeriodInstance::validate() const {
  if (modulus < 3 || modulus % 2 == 0) throw input_error("modulus must be odd and >= 3");
  if (base <= 1 || base >= modulus) throw input_error("base must satisfy 1 < y < N");
  if (std::gcd(base, modulus) != 1) throw input_error("base must be coprime with the modulus");
  const std::uint64_t n2 = modulus * modulus;
  if ((register_size & (register_size - 1)) != 0 || !(register_size > n2 && register_size < 2 * n2))
    throw input_error("register size must be a power of two in (N^2, 2N^2)");
}

std::string_view to_string(Method m) { return m == Method::shor ? "shor" : "grover-adiabatic"; }

Method parse_method(std::string_view token) {
  if (token == "shor") return Method::shor;
  if (token == "grover-adiabatic") return Method::grover_adiabatic;
  throw input_error("unknown method '" + std::string(token) + "' (expected shor or grover-adiabatic)");
}

StateVector build_register(const PeriodInstance& inst, std::size_t memory_cap) {
  inst.validate();
  const std::uint64_t q = inst.register_size;
  const std::uint64_t n = inst.modulus;
  if (q > memory_cap / n)
    throw resource_error("register of " + std::to_string(q) + " x " + std::to_string(n) +
                         " amplitudes exceeds the memory cap of " + std::to_string(memory_cap));
  std::vector<amplitude> amps(q * n);
  const double c = 1.0 / std::sqrt(double(q));
  std::uint64_t f = 1;
  for (std::uint64_t a = 0; a < q; ++a) {
    amps[a * n + f] = c;
    f = f * inst.base % n;
  }
  return StateVector::from_amplitudes(std::move(amps), RegisterShape::pair(q, n));
}

ShorProjection shor_project(const StateVector& state, Rng& rng) {
  if (!state.shape().paired) throw input_error("shor_project needs a two-register state");
  auto m = measure_register(state, Register::second, rng);
  return {m.outcome, std::move(m.collapsed)};
}

ShorAttempt shor_attempt(const PeriodInstance& inst, Rng& rng, std::size_t memory_cap) {
  const StateVector prepared = build_register(inst, memory_cap);
  auto projection = shor_project(prepared, rng);
  ShorAttempt out;
  out.projected_value = projection.value;
  out.projection_distance = fubini_study_distance(prepared, projection.collapsed);
  const StateVector spectrum = qft(std::move(projection.collapsed), Register::first);
  out.fourier_outcome = measure_register(spectrum, Register::first, rng).outcome;
  out.denominator =
      continued_fraction_denominator(out.fourier_outcome, inst.register_size, inst.modulus).value_or(0);
  return out;
}

PeriodResult shor_period(const PeriodInstance& inst, Rng& rng, const PeriodOptions& options) {
  inst.validate();
  const std::uint64_t y = inst.base, n = inst.modulus;
  PeriodResult result;
  result.method = Method::shor;
  const std::uint64_t master = rng.next();
  std::uint64_t carried = 0;
  for (std::uint64_t k = 0; k < options.max_attempts; ++k) {
    Rng attempt_rng(derive_seed(master, k));
    const auto attempt = shor_attempt(inst, attempt_rng, options.memory_cap);
    ++result.attempts;
    ++result.oracle_calls;
    result.measurements += 2;
    const std::uint64_t d = attempt.denominator;
    if (d == 0) continue;
    if (modpow(y, d, n) == 1) {
      result.success = true;
      result.period = minimize_order(y, d, n);
      return result;
    }
    // A denominator can be a proper divisor of r; combine with the last one.
    const std::uint64_t combined = carried == 0 ? 0 : lcm_u64(carried, d);
    if (combined != 0 && combined < n && modpow(y, combined, n) == 1) {
      result.success = true;
      result.period = minimize_order(y, combined, n);
      return result;
    }
    carried = combined != 0 && combined < n ? combined : d;
  }
  return result;
}

IndexPredicate period_oracle_predicate(const PeriodInstance& inst) {
  inst.validate();
  const std::uint64_t target = inst.base % inst.modulus;
  return [y = inst.base, n = inst.modulus, target](std::uint64_t a) { return modpow(y, a, n) == target; };
}

GroverInstance period_grover_instance(const PeriodInstance& inst) {
  const auto marked = period_oracle_predicate(inst);
  std::vector<std::uint64_t> indices;
  for (std::uint64_t a = 0; a < inst.register_size; ++a)
    if (marked(a)) indices.push_back(a);
  return GroverInstance(inst.register_size, std::move(indices));
}

std::optional<std::uint64_t> period_from_samples(std::span<const std::uint64_t> samples,
                                                 std::uint64_t base, std::uint64_t modulus) {
  const std::uint64_t g = gcd_of_differences(samples);
  if (g == 0 || modpow(base, g, modulus) != 1) return std::nullopt;
  return minimize_order(base, g, modulus);
}

PeriodResult grover_period(const PeriodInstance& inst, Rng& rng, const PeriodOptions& options) {
  inst.validate();
  if (options.samples < 2) throw input_error("grover_period needs at least two samples per round");
  if (inst.register_size > options.memory_cap)
    throw resource_error("register of " + std::to_string(inst.register_size) +
                         " amplitudes exceeds the memory cap");
  const GroverInstance search = period_grover_instance(inst);
  const std::uint64_t steps = optimal_iterations(search);

  PeriodResult result;
  result.method = Method::grover_adiabatic;
  const std::uint64_t master = rng.next();
  std::vector<std::uint64_t> samples(options.samples);
  for (std::uint64_t round = 0; round < options.max_attempts; ++round) {
    Rng round_rng(derive_seed(master, round));
    ++result.attempts;
    for (auto& s : samples) {
      StateVector state = new_uniform(inst.register_size);
      for (std::uint64_t k = 0; k < steps; ++k) state = grover_iteration(std::move(state), search);
      result.oracle_calls += steps;
      s = measure_register(state, Register::first, round_rng).outcome;
      ++result.measurements;
    }
    if (auto r = period_from_samples(samples, inst.base, inst.modulus)) {
      result.success = true;
      result.period = *r;
      return result;
    }
  }
  return result;
}

PeriodResult find_period(Method method, const PeriodInstance& inst, Rng& rng, const PeriodOptions& options) {
  return method == Method::shor ? shor_period(inst, rng, options) : grover_period(inst, rng, options);
}

namespace {

FactorOutcome classical_pair(FactorStatus status, std::uint64_t n, std::uint64_t factor, std::string note) {
  FactorOutcome out;
  out.status = status;
  out.classical = true;
  out.first = std::min(factor, n / factor);
  out.second = std::max(factor, n / factor);
  out.note = std::move(note);
  return out;
}

}  // namespace

FactorOutcome factor(std::uint64_t n, Method method, Rng& rng, const FactorBudget& budget) {
  if (n < 3) {
    FactorOutcome out;
    out.status = FactorStatus::not_applicable;
    out.note = "N must be at least 3";
    return out;
  }
  if (n % 2 == 0) return classical_pair(FactorStatus::not_applicable, n, 2, "N is even");
  if (is_prime(n)) {
    FactorOutcome out;
    out.status = FactorStatus::not_applicable;
    out.note = "N is prime";
    return out;
  }
  if (auto p = prime_power_base(n))
    return classical_pair(FactorStatus::not_applicable, n, *p, "N is a prime power");

  FactorOutcome out;
  out.status = FactorStatus::budget_exhausted;
  for (std::uint64_t k = 0; k < budget.max_bases; ++k) {
    const std::uint64_t y = rng.between(2, n - 1);
    out.bases.push_back(y);
    if (const auto g = std::gcd(y, n); g > 1) {
      auto hit = classical_pair(FactorStatus::factored, n, g, "base shares a factor with N");
      hit.bases = std::move(out.bases);
      hit.oracle_calls = out.oracle_calls;
      hit.measurements = out.measurements;
      return hit;
    }
    const auto inst = PeriodInstance::make(n, y);
    const auto found = find_period(method, inst, rng, budget.period);
    out.oracle_calls += found.oracle_calls;
    out.measurements += found.measurements;
    if (!found.success || found.period % 2 != 0) continue;
    const std::uint64_t half = modpow(y, found.period / 2, n);
    if (half == n - 1) continue;
    // half^2 = 1 with half != +-1, so gcd(half - 1, N) is a proper factor.
    const std::uint64_t g = std::gcd(half - 1, n);
    out.status = FactorStatus::factored;
    out.first = std::min(g, n / g);
    out.second = std::max(g, n / g);
    out.note = "period " + std::to_string(found.period) + " of base " + std::to_string(y);
    return out;
  }
  out.note = "budget of " + std::to_string(budget.max_bases) + " bases exhausted";
  return out;
}

}  // namespace qgeo
