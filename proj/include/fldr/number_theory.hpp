#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace fldr {

/// Depth k and back-edge level l of an entropy-optimal tree whose
/// probabilities are all multiples of 1/Z_kl. `z` is absent when Z_kl does
/// not fit in a word (k > 62).
struct DepthWitness {
  std::uint64_t k = 0;
  std::uint64_t l = 0;
  std::optional<std::uint64_t> z;

  friend bool operator==(const DepthWitness&, const DepthWitness&) = default;
};

/// Z_kl = 2^k - 2^l for l < k, and 2^k for l == k. Requires 0 <= l <= k <= 62.
std::uint64_t z_value(std::uint64_t k, std::uint64_t l);

/// Smallest k (and the largest l at that k) with M | Z_kl.
///
/// With M = 2^e * M' and M' odd, Z_kl = 2^l (2^(k-l) - 1) is divisible by M
/// exactly when l >= e and ord_{M'}(2) divides k - l, so the minimum is
/// k = e + ord_{M'}(2) at l = e (or k = l = e when M' == 1). M == 1 maps to
/// k = l = 1. Requires 1 <= M <= 2^31.
DepthWitness minimal_depth(std::uint64_t modulus);

/// Euler's totient by trial division.
std::uint64_t totient(std::uint64_t m);

/// Distinct prime factors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t m);

bool is_prime(std::uint64_t m);

/// (base^exp) mod modulus for modulus >= 1.
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus);

/// Multiplicative order of 2 modulo an odd modulus > 1.
std::uint64_t order_of_two(std::uint64_t odd_modulus);

/// True iff 2 generates the multiplicative group mod m. m must be an odd prime.
bool is_primitive_root_2(std::uint64_t m);

}  // namespace fldr
