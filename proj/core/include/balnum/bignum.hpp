#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

namespace balnum {

// Arbitrary-precision integers are GMP-backed. BigNat is the same type as
// BigInt; operations that promise non-negative values document it with this
// alias.
using BigInt = mpz_class;
using BigNat = mpz_class;

// Sequence index. Machine-word sized: a term at an index beyond 2^64 would
// not be representable in memory anyway.
using SeqIndex = std::uint64_t;

inline BigNat pow_ui(const BigNat& base, unsigned long e) {
  BigNat r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigNat ui_pow_ui(unsigned long base, unsigned long e) {
  BigNat r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

// Number of decimal digits of |x| (1 for x == 0); may overestimate by one,
// which is the GMP sizeinbase contract.
inline std::size_t decimal_digits(const BigInt& x) {
  return mpz_sizeinbase(x.get_mpz_t(), 10);
}

inline bool fits_u64(const BigInt& x) {
  return x >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

// Low 64 bits of a non-negative value; callers check fits_u64 first.
inline std::uint64_t to_u64(const BigInt& x) {
  return static_cast<std::uint64_t>(mpz_get_ui(x.get_mpz_t()));
}

}  // namespace balnum
