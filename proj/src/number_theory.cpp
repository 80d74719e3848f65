#include "fldr/number_theory.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace fldr {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % modulus);
}

}  // namespace

std::uint64_t z_value(std::uint64_t k, std::uint64_t l) {
  if (k > 62) throw std::out_of_range("z_value: k=" + std::to_string(k) + " overflows a word");
  if (l > k) throw std::out_of_range("z_value: l must not exceed k");
  const std::uint64_t top = std::uint64_t{1} << k;
  return l == k ? top : top - (std::uint64_t{1} << l);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) {
  if (modulus == 1) return 0;
  std::uint64_t result = 1;
  base %= modulus;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, modulus);
    base = mul_mod(base, base, modulus);
    exp >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> factors;
  for (std::uint64_t p = 2; p <= m / p; ++p) {
    if (m % p != 0) continue;
    factors.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) factors.push_back(m);
  return factors;
}

std::uint64_t totient(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("totient of 0");
  std::uint64_t phi = m;
  for (std::uint64_t p : prime_factors(m)) phi = phi / p * (p - 1);
  return phi;
}

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t p = 2; p <= m / p; ++p) {
    if (m % p == 0) return false;
  }
  return true;
}

std::uint64_t order_of_two(std::uint64_t odd_modulus) {
  if (odd_modulus < 3 || odd_modulus % 2 == 0) {
    throw std::invalid_argument("order_of_two needs an odd modulus > 1");
  }
  // The order divides phi; strip prime factors while 2^order stays 1.
  std::uint64_t order = totient(odd_modulus);
  for (std::uint64_t q : prime_factors(order)) {
    while (order % q == 0 && pow_mod(2, order / q, odd_modulus) == 1) order /= q;
  }
  return order;
}

bool is_primitive_root_2(std::uint64_t m) {
  if (m % 2 == 0 || !is_prime(m)) {
    throw std::invalid_argument("is_primitive_root_2: " + std::to_string(m) + " is not an odd prime");
  }
  return order_of_two(m) == m - 1;
}

DepthWitness minimal_depth(std::uint64_t modulus) {
  if (modulus == 0 || modulus > kMaxModulus) {
    throw std::out_of_range("minimal_depth: modulus " + std::to_string(modulus) +
                            " outside [1, 2^31]");
  }
  DepthWitness w;
  if (modulus == 1) {
    w.k = w.l = 1;
  } else {
    const auto twos = static_cast<std::uint64_t>(std::countr_zero(modulus));
    const std::uint64_t odd = modulus >> twos;
    w.l = twos;
    w.k = odd == 1 ? twos : twos + order_of_two(odd);
  }
  if (w.k <= 62) w.z = z_value(w.k, w.l);
  return w;
}

}  // namespace fldr
