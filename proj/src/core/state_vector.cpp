#include "qgeo/state_vector.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qgeo/errors.hpp"

namespace qgeo {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place unitary DFT of one register slice. sign = +1 is the forward
// transform used by qft(), -1 its inverse.
class FourierKernel {
 public:
  FourierKernel(std::size_t n, int sign) : n_(n), sign_(sign), scale_(1.0 / std::sqrt(double(n))) {
    // Roots are evaluated from the exact fraction k/n rather than by repeated
    // multiplication, which keeps twiddle error at one ulp for every k.
    const std::size_t count = is_power_of_two(n) ? n / 2 : n;
    roots_.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double angle = sign_ * 2.0 * std::numbers::pi * double(k) / double(n);
      roots_[k] = {std::cos(angle), std::sin(angle)};
    }
  }

  void apply(std::vector<amplitude>& v) const {
    if (n_ == 1) return;
    if (is_power_of_two(n_)) {
      radix2(v);
    } else {
      direct(v);
    }
    for (auto& c : v) c *= scale_;
  }

 private:
  void radix2(std::vector<amplitude>& v) const {
    const std::size_t n = n_;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(v[i], v[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n / len;
      for (std::size_t start = 0; start < n; start += len) {
        for (std::size_t k = 0; k < half; ++k) {
          const amplitude w = roots_[k * stride];
          const amplitude u = v[start + k];
          const amplitude t = w * v[start + k + half];
          v[start + k] = u + t;
          v[start + k + half] = u - t;
        }
      }
    }
  }

  void direct(std::vector<amplitude>& v) const {
    std::vector<amplitude> out(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      amplitude acc{0.0, 0.0};
      for (std::size_t a = 0; a < n_; ++a) acc += roots_[(a * k) % n_] * v[a];
      out[k] = acc;
    }
    v.swap(out);
  }

  std::size_t n_;
  int sign_;
  double scale_;
  std::vector<amplitude> roots_;
};

void transform_register(std::vector<amplitude>& amps, const RegisterShape& shape, Register reg,
                        int sign) {
  const std::size_t n = shape.extent(reg);
  const FourierKernel kernel(n, sign);
  std::vector<amplitude> slice(n);
  if (!shape.paired || reg == Register::second) {
    // Contiguous slices of length n.
    for (std::size_t base = 0; base < amps.size(); base += n) {
      std::copy_n(amps.begin() + std::ptrdiff_t(base), n, slice.begin());
      kernel.apply(slice);
      std::copy(slice.begin(), slice.end(), amps.begin() + std::ptrdiff_t(base));
    }
    return;
  }
  const std::size_t stride = shape.second;
  for (std::size_t b = 0; b < stride; ++b) {
    bool nonzero = false;
    for (std::size_t a = 0; a < n; ++a) {
      slice[a] = amps[a * stride + b];
      nonzero = nonzero || slice[a] != amplitude{};
    }
    if (!nonzero) continue;
    kernel.apply(slice);
    for (std::size_t a = 0; a < n; ++a) amps[a * stride + b] = slice[a];
  }
}

// Register value of flat index i.
std::size_t register_value(const RegisterShape& shape, Register reg, std::size_t i) {
  if (!shape.paired) return i;
  return reg == Register::first ? i / shape.second : i % shape.second;
}

}  // namespace

std::size_t RegisterShape::extent(Register r) const {
  if (!paired) return first;
  return r == Register::first ? first : second;
}

ProbabilityDistribution::ProbabilityDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw invalid_dimension_error("probability distribution must be non-empty");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw input_error("probability distribution has a negative or NaN entry");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTolerance)
    throw input_error("probabilities sum to " + std::to_string(total) + ", expected 1");
}

StateVector StateVector::from_amplitudes(std::vector<amplitude> amps, RegisterShape shape) {
  if (amps.empty() || shape.first == 0 || shape.second == 0)
    throw invalid_dimension_error("state dimension must be positive");
  if (shape.dim() != amps.size())
    throw invalid_dimension_error("amplitude count " + std::to_string(amps.size()) +
                                  " does not match register shape " + std::to_string(shape.dim()));
  StateVector s(std::move(amps), shape);
  if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) throw input_error("state is not normalized");
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<amplitude> amps) {
  const auto shape = RegisterShape::single(amps.size());
  return from_amplitudes(std::move(amps), shape);
}

StateVector StateVector::basis(RegisterShape shape, std::size_t index) {
  if (shape.dim() == 0) throw invalid_dimension_error("state dimension must be positive");
  if (index >= shape.dim()) throw input_error("basis index out of range");
  std::vector<amplitude> amps(shape.dim());
  amps[index] = 1.0;
  return StateVector(std::move(amps), shape);
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& c : amps_) total += std::norm(c);
  return total;
}

StateVector new_uniform(std::size_t dim) {
  if (dim == 0) throw invalid_dimension_error("new_uniform: dimension must be >= 1");
  const double c = 1.0 / std::sqrt(double(dim));
  return StateVector(std::vector<amplitude>(dim, amplitude{c, 0.0}), RegisterShape::single(dim));
}

ProbabilityDistribution probabilities(const StateVector& state) {
  std::vector<double> p(state.dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(state[i]);
  return ProbabilityDistribution(std::move(p));
}

std::vector<double> marginal_probabilities(const StateVector& state, Register reg) {
  const auto& shape = state.shape();
  std::vector<double> marginal(shape.extent(reg), 0.0);
  for (std::size_t i = 0; i < state.dim(); ++i)
    marginal[register_value(shape, reg, i)] += std::norm(state[i]);
  return marginal;
}

StateVector phase_flip(StateVector state, const IndexPredicate& marked) {
  for (std::size_t i = 0; i < state.amps_.size(); ++i)
    if (marked(i)) state.amps_[i] = -state.amps_[i];
  return state;
}

StateVector invert_about_average(StateVector state) {
  auto& amps = state.amps_;
  const std::size_t n = state.shape_.first;
  const std::size_t stride = state.shape_.paired ? state.shape_.second : 1;
  for (std::size_t b = 0; b < stride; ++b) {
    amplitude sum{0.0, 0.0};
    for (std::size_t a = 0; a < n; ++a) sum += amps[a * stride + b];
    const amplitude twice_mean = 2.0 * sum / double(n);
    for (std::size_t a = 0; a < n; ++a) {
      auto& c = amps[a * stride + b];
      c = twice_mean - c;
    }
  }
  return state;
}

StateVector qft(StateVector state, Register reg) {
  transform_register(state.amps_, state.shape_, reg, +1);
  return state;
}

StateVector inverse_qft(StateVector state, Register reg) {
  transform_register(state.amps_, state.shape_, reg, -1);
  return state;
}

Measurement measure_register(const StateVector& state, Register reg, Rng& rng) {
  const auto& shape = state.shape();
  const auto marginal = marginal_probabilities(state, reg);

  double total = 0.0;
  for (double p : marginal) total += p;
  const double u = rng.uniform() * total;

  // First outcome whose cumulative mass exceeds u; zero-probability outcomes
  // can never be selected.
  std::size_t outcome = marginal.size();
  double cumulative = 0.0;
  for (std::size_t k = 0; k < marginal.size(); ++k) {
    if (marginal[k] <= 0.0) continue;
    cumulative += marginal[k];
    outcome = k;
    if (u < cumulative) break;
  }
  if (outcome == marginal.size() || !(marginal[outcome] > 0.0))
    throw invariant_violation("measure_register: zero-norm projection");

  const double scale = 1.0 / std::sqrt(marginal[outcome]);
  std::vector<amplitude> collapsed(state.dim());
  for (std::size_t i = 0; i < state.dim(); ++i)
    if (register_value(shape, reg, i) == outcome) collapsed[i] = state[i] * scale;
  return Measurement{outcome, StateVector(std::move(collapsed), shape)};
}

amplitude inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw invalid_dimension_error("inner_product: dimension mismatch");
  amplitude acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace qgeo
