#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qgeo {

// y^a mod n by square-and-multiply; n >= 1.
std::uint64_t modpow(std::uint64_t y, std::uint64_t a, std::uint64_t n);

// Smallest r >= 1 with y^r = 1 (mod n), by direct iteration. Test oracle for
// the period finders. Throws input_error when gcd(y, n) != 1 or n > 10^6.
std::uint64_t order_bruteforce(std::uint64_t y, std::uint64_t n);

// Largest convergent denominator of c/q not exceeding bound; nullopt for
// c = 0. Requires c < q and bound >= 1.
std::optional<std::uint64_t> continued_fraction_denominator(std::uint64_t c, std::uint64_t q,
                                                            std::uint64_t bound);

// Given a multiple of the order of y mod n (y^multiple = 1), strips prime
// factors while the identity still holds; the result is the order itself.
std::uint64_t minimize_order(std::uint64_t y, std::uint64_t multiple, std::uint64_t n);

// Distinct prime factors in increasing order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

bool is_prime(std::uint64_t n);

// p when n = p^k with p prime and k >= 2, nullopt otherwise.
std::optional<std::uint64_t> prime_power_base(std::uint64_t n);

// Smallest power of two q with n^2 < q < 2 n^2; input_error when n is a
// power of two (no such q) or outside [2, 2^31].
std::uint64_t register_size_for(std::uint64_t n);

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

// gcd of all pairwise differences of the samples (0 when they coincide).
std::uint64_t gcd_of_differences(std::span<const std::uint64_t> samples);

}  // namespace qgeo
