#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace fldr {

/// Exact probabilities and expectations. Always kept in canonical form.
using Rational = mpq_class;
using BigInt = mpz_class;

inline BigInt big_from_u64(std::uint64_t v) {
  BigInt z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

inline Rational ratio(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rational_from_u64(std::uint64_t num, std::uint64_t den) {
  Rational q(big_from_u64(num), big_from_u64(den));
  q.canonicalize();
  return q;
}

/// 2^e as an integer.
inline BigInt pow2(std::uint64_t e) {
  BigInt z;
  mpz_setbit(z.get_mpz_t(), e);
  return z;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Nearest long double; used only for reporting against real-valued bounds.
long double to_long_double(const Rational& q);

}  // namespace fldr
