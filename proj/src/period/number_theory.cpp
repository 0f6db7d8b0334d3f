#include "qgeo/number_theory.hpp"

#include <numeric>

#include "qgeo/errors.hpp"

namespace qgeo {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(u128(a) * b % n);
}

}  // namespace

std::uint64_t modpow(std::uint64_t y, std::uint64_t a, std::uint64_t n) {
  if (n == 0) throw input_error("modpow: modulus must be >= 1");
  std::uint64_t result = 1 % n;
  std::uint64_t base = y % n;
  while (a > 0) {
    if (a & 1) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    a >>= 1;
  }
  return result;
}

std::uint64_t order_bruteforce(std::uint64_t y, std::uint64_t n) {
  if (n < 2 || n > 1'000'000) throw input_error("order_bruteforce: modulus must lie in [2, 10^6]");
  if (std::gcd(y, n) != 1) throw input_error("order_bruteforce: base is not coprime with modulus");
  std::uint64_t value = y % n;
  std::uint64_t r = 1;
  while (value != 1) {
    value = mulmod(value, y, n);
    ++r;
  }
  return r;
}

std::optional<std::uint64_t> continued_fraction_denominator(std::uint64_t c, std::uint64_t q,
                                                            std::uint64_t bound) {
  if (q == 0 || c >= q) throw input_error("continued fraction needs 0 <= c < q");
  if (bound < 1) throw input_error("continued fraction bound must be >= 1");
  if (c == 0) return std::nullopt;
  // Convergent denominators k_i = a_i k_{i-1} + k_{i-2}, increasing.
  std::uint64_t num = c, den = q;
  std::uint64_t k_prev = 0, k = 1;  // k_{-1}, k_0 (a_0 = 0 since c < q)
  std::uint64_t best = 1;
  std::swap(num, den);  // skip a_0 = 0: continue with q / c
  while (den != 0) {
    const std::uint64_t a = num / den;
    const std::uint64_t next = a * k + k_prev;
    if (next > bound) break;
    best = next;
    k_prev = k;
    k = next;
    const std::uint64_t rem = num % den;
    num = den;
    den = rem;
  }
  return best;
}

std::uint64_t minimize_order(std::uint64_t y, std::uint64_t multiple, std::uint64_t n) {
  if (multiple == 0 || modpow(y, multiple, n) != 1 % n)
    throw input_error("minimize_order: argument is not a multiple of the order");
  for (auto p : prime_factors(multiple))
    while (multiple % p == 0 && modpow(y, multiple / p, n) == 1 % n) multiple /= p;
  return multiple;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::optional<std::uint64_t> prime_power_base(std::uint64_t n) {
  const auto primes = prime_factors(n);
  if (primes.size() != 1 || primes.front() == n) return std::nullopt;
  return primes.front();
}

std::uint64_t register_size_for(std::uint64_t n) {
  if (n < 2 || n > (1ULL << 31)) throw input_error("register size needs 2 <= N <= 2^31");
  const std::uint64_t n2 = n * n;
  std::uint64_t q = 1;
  while (q <= n2) q <<= 1;
  if (q >= 2 * n2) throw input_error("no power of two lies strictly inside (N^2, 2N^2) for a power-of-two N");
  return q;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

std::uint64_t gcd_of_differences(std::span<const std::uint64_t> samples) {
  std::uint64_t g = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const std::uint64_t d = samples[i] > samples[0] ? samples[i] - samples[0] : samples[0] - samples[i];
    g = std::gcd(g, d);
  }
  return g;
}

}  // namespace qgeo
