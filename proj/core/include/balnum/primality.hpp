#pragma once

#include "balnum/bignum.hpp"

namespace balnum {

// Deterministic Miller-Rabin with the witness set {2, 3, 5, 7, ..., 41} for
// n < 3317044064679887385961981; above that, 64 fixed-seed Miller-Rabin
// rounds are combined with a strong Lucas (Selfridge parameters) test, so
// the residual error probability is below 4^-64. Same input, same answer,
// on every run.
bool is_prime(const BigNat& n);

bool is_prime_u64(std::uint64_t n);

}  // namespace balnum
